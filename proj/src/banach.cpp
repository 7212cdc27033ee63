#include "twistcalc/banach.hpp"

#include "twistcalc/errors.hpp"

namespace twistcalc {

namespace {

NormValue weighted(const NormValue& v, unsigned degree, const Scalar& ell) {
  return v + Scalar(ell * degree);
}

ConvergenceReport convergence_from_jet(const Jet& jet, const EtaRadius& eta,
                                       const NormContext& ctx) {
  ConvergenceReport report;
  std::vector<NormValue> per_degree(jet.order + 1, NormValue::infinity());
  for (const auto& [k, z] : jet.coefficients) {
    unsigned t = total_degree(k);
    per_degree[t] = min(per_degree[t], gauss_norm(z, ctx));
  }
  for (unsigned t = 0; t <= jet.order; ++t) {
    report.table.push_back(ConvergenceRow{t, weighted(per_degree[t], t, eta.ell())});
  }
  const unsigned tail_start = (jet.order + 1) / 2;
  NormValue head = NormValue::infinity();
  NormValue tail = NormValue::infinity();
  for (const auto& row : report.table) {
    if (row.degree < tail_start) {
      head = min(head, row.value);
    } else {
      tail = min(tail, row.value);
    }
  }
  // An empty head (D = 0) imposes nothing.
  report.convergent = tail_start == 0 || tail >= head;
  return report;
}

}  // namespace

EtaRadius::EtaRadius(Scalar ell, const NormContext& ctx) : ell_(std::move(ell)) {
  if (ell_ < 0) {
    throw NormBoundViolation("eta must satisfy eta <= 1, got log-valuation " +
                             to_string(ell_));
  }
  if (!ctx.is_padic() && ell_ != 0) {
    throw NormBoundViolation("the trivial norm only admits eta = 1 (valuation 0)");
  }
}

NormValue rho_sigma(const TwistSpec& spec, const NormContext& ctx) {
  return rho_sigma_power(spec, 1, ctx);
}

NormValue rho_sigma_power(const TwistSpec& spec, unsigned n, const NormContext& ctx) {
  NormValue v = NormValue::infinity();
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    Poly x = Poly::variable(spec.dim(), i);
    v = min(v, gauss_norm(x - sigma_iterate_variable(spec, i, n), ctx));
  }
  return v;
}

NormValue eta_norm(const XiPoly& series, const EtaRadius& eta, const NormContext& ctx) {
  NormValue v = NormValue::infinity();
  for (const auto& [k, c] : series.terms()) {
    v = min(v, weighted(gauss_norm(c, ctx), total_degree(k), eta.ell()));
  }
  return v;
}

NormValue eta_norm(const Jet& jet, const EtaRadius& eta, const NormContext& ctx) {
  NormValue twisted = NormValue::infinity();
  for (const auto& [k, c] : jet.coefficients) {
    twisted = min(twisted, weighted(gauss_norm(c, ctx), total_degree(k), eta.ell()));
  }
  if (eta.valuation() <= rho_sigma(*jet.spec, ctx)) {
    NormValue monomial = eta_norm(from_twisted_basis(jet), eta, ctx);
    if (monomial != twisted) {
      throw BasisNormMismatch("eta-norm is " + twisted.to_string() +
                              " on the twisted basis but " + monomial.to_string() +
                              " on the monomial basis");
    }
  }
  return twisted;
}

NormValue operator_eta_norm(const TwistedOperator& op, const EtaRadius& eta,
                            const NormContext& ctx) {
  NormValue v = NormValue::infinity();
  for (const auto& [k, z] : op.terms()) {
    v = min(v, gauss_norm(z, ctx) - Scalar(eta.ell() * total_degree(k)));
  }
  return v;
}

RadiusReport radius_estimate(const Poly& f, const SpecPtr& spec, const NormContext& ctx,
                             unsigned truncation) {
  RadiusReport report;
  report.truncation = truncation;
  report.exhausted = static_cast<int>(truncation) >= f.total_degree();
  Jet jet = taylor(f, truncation, spec);
  std::vector<NormValue> per_degree(truncation + 1, NormValue::infinity());
  for (const auto& [k, z] : jet.coefficients) {
    unsigned t = total_degree(k);
    per_degree[t] = min(per_degree[t], gauss_norm(z, ctx));
  }
  for (unsigned t = 1; t <= truncation; ++t) {
    RadiusRow row;
    row.degree = t;
    row.min_valuation = per_degree[t];
    if (!row.min_valuation.is_infinite()) {
      row.evidence = Scalar(-row.min_valuation.value() / t);
      if (!report.lower_bound_log_radius || *report.lower_bound_log_radius < *row.evidence) {
        report.lower_bound_log_radius = *row.evidence;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

ConvergenceReport eta_convergence_check(const Poly& f, const EtaRadius& eta,
                                        const SpecPtr& spec, const NormContext& ctx,
                                        unsigned truncation) {
  return convergence_from_jet(taylor(f, truncation, spec), eta, ctx);
}

ConvergenceReport eta_convergence_check(const Jet& jet, const EtaRadius& eta,
                                        const NormContext& ctx) {
  return convergence_from_jet(jet, eta, ctx);
}

}  // namespace twistcalc
