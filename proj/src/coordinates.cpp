#include "twistcalc/principal_parts.hpp"
#include "twistcalc/twist.hpp"

namespace twistcalc {

CoordinateReport check_coordinates(const TwistSpec& spec, unsigned bound) {
  CoordinateReport report;
  report.bound = bound;
  const std::size_t d = spec.dim();
  BasisTables tables(spec);
  const auto monomials = monomials_up_to(d, bound);

  for (std::size_t i = 0; i < d; ++i) {
    VariableCoordinateStatus status;
    const TwistKind kind = spec.twist(i).kind();
    status.classicality_asserted = kind != TwistKind::kMahler && kind != TwistKind::kCustom;

    for (unsigned n = 1; n <= bound; ++n) {
      for (unsigned k = 0; k < n; ++k) {
        // Copy first: the second lookup may grow the table under the reference.
        Poly diff = tables.sigma_iterate(i, n);
        diff -= tables.sigma_iterate(i, k);
        if (diff.is_zero()) {
          // Q[x] is a domain, so nonzero already means regular.
          if (status.kind) status.kind_witness = CoordinateWitness{i, n, k};
          status.kind = false;
        }
        if (!(diff.is_constant() && !diff.is_zero())) {
          if (status.strong) status.strong_witness = CoordinateWitness{i, n, k};
          status.strong = false;
        }
      }
    }

    for (const auto& a : monomials) {
      Poly f = Poly::monomial(a);
      Poly df = derivation(f, i, spec);
      for (const auto& b : monomials) {
        Poly g = Poly::monomial(b);
        Poly lhs = derivation(f * g, i, spec);
        Poly rhs = f * derivation(g, i, spec) + sigma_apply(g, i, spec) * df;
        if (!(lhs == rhs)) {
          status.leibniz = false;
          status.leibniz_witness = {a, b};
          break;
        }
      }
      if (!status.leibniz) break;
    }

    int checked = -1;
    for (const auto& a : monomials) {
      Poly f = Poly::monomial(a);
      Poly via_taylor = divided_power(f, unit_exponent(d, i), tables);
      if (!(via_taylor == derivation(f, i, spec))) {
        checked = static_cast<int>(total_degree(a)) - 1;
        break;
      }
      checked = static_cast<int>(total_degree(a));
    }
    status.classical_checked_to_degree = checked;
    report.vars.push_back(std::move(status));
  }
  return report;
}

}  // namespace twistcalc
