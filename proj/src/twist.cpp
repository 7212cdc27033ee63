#include "twistcalc/twist.hpp"

#include "twistcalc/errors.hpp"

namespace twistcalc {

namespace {

std::vector<Scalar> trimmed(std::vector<Scalar> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

bool is_identity_image(const std::vector<Scalar>& c) {
  return c.size() == 2 && c[0] == 0 && c[1] == 1;
}

Poly univariate_in(std::size_t nvars, std::size_t var, const std::vector<Scalar>& coeffs) {
  Poly p(nvars);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    Exponent e(nvars, 0);
    e[var] = static_cast<unsigned>(j);
    p.add_term(e, coeffs[j]);
  }
  return p;
}

}  // namespace

VariableTwist::VariableTwist(TwistKind kind, Scalar parameter, std::vector<Scalar> coefficients)
    : kind_(kind), parameter_(std::move(parameter)), coefficients_(std::move(coefficients)) {}

VariableTwist VariableTwist::q(const Scalar& q) {
  if (q == 0 || q == 1) {
    throw InvalidTwistError("q-twist needs q not in {0, 1}, got " + twistcalc::to_string(q));
  }
  return VariableTwist(TwistKind::kQ, q, std::vector<Scalar>{Scalar(0), q});
}

VariableTwist VariableTwist::shift(const Scalar& h) {
  if (h == 0) throw InvalidTwistError("shift twist needs h != 0");
  return VariableTwist(TwistKind::kShift, h, std::vector<Scalar>{h, Scalar(1)});
}

VariableTwist VariableTwist::mahler(unsigned l) {
  if (l < 2) {
    throw InvalidTwistError("Mahler twist needs l >= 2, got " + std::to_string(l));
  }
  std::vector<Scalar> c(l + 1, Scalar(0));
  c[l] = 1;
  return VariableTwist(TwistKind::kMahler, Scalar(l), std::move(c));
}

VariableTwist VariableTwist::custom(std::vector<Scalar> coefficients) {
  auto c = trimmed(std::move(coefficients));
  if (is_identity_image(c)) {
    throw InvalidTwistError("custom twist equals the identity substitution");
  }
  return VariableTwist(TwistKind::kCustom, Scalar(0), std::move(c));
}

VariableTwist VariableTwist::identity() {
  return VariableTwist(TwistKind::kIdentity, Scalar(0), std::vector<Scalar>{Scalar(0), Scalar(1)});
}

std::string VariableTwist::to_string(std::size_t var) const {
  switch (kind_) {
    case TwistKind::kQ:
      return "q:" + twistcalc::to_string(parameter_);
    case TwistKind::kShift:
      return "shift:" + twistcalc::to_string(parameter_);
    case TwistKind::kMahler:
      return "mahler:" + twistcalc::to_string(parameter_);
    case TwistKind::kIdentity:
      return "identity";
    case TwistKind::kCustom:
      break;
  }
  Poly p = univariate_in(1, 0, coefficients_);
  return "custom:" + twistcalc::to_string(p, [var](std::size_t) {
           return default_variable_name(var);
         });
}

TwistSpec::TwistSpec(std::vector<VariableTwist> twists, NormContext norm)
    : TwistSpec(std::move(twists), norm, false) {}

TwistSpec::TwistSpec(std::vector<VariableTwist> twists, NormContext norm, bool identity)
    : twists_(std::move(twists)), norm_(norm), identity_(identity) {
  for (std::size_t i = 0; i < twists_.size(); ++i) {
    if (!identity_ && twists_[i].kind() == TwistKind::kIdentity) {
      throw InvalidTwistError("identity substitution in x" + std::to_string(i + 1) +
                              " is only allowed in the identity spec");
    }
    images_.push_back(univariate_in(twists_.size(), i, twists_[i].coefficients()));
  }
}

TwistSpec TwistSpec::identity(std::size_t dim, NormContext norm) {
  return TwistSpec(std::vector<VariableTwist>(dim, VariableTwist::identity()), norm, true);
}

TwistSpec TwistSpec::q_twist(std::vector<Scalar> qs, NormContext norm) {
  std::vector<VariableTwist> t;
  for (const auto& q : qs) t.push_back(VariableTwist::q(q));
  return TwistSpec(std::move(t), norm);
}

bool TwistSpec::all_q() const {
  for (const auto& t : twists_) {
    if (t.kind() != TwistKind::kQ) return false;
  }
  return true;
}

Poly sigma_apply(const Poly& f, std::size_t var, const TwistSpec& spec) {
  if (var >= spec.dim()) throw std::out_of_range("variable index out of range");
  if (spec.twist(var).kind() == TwistKind::kIdentity) return f;
  if (spec.twist(var).kind() == TwistKind::kQ) {
    // Monomial scaling; avoids the generic substitution.
    const Scalar& q = spec.twist(var).parameter();
    Poly r(f.nvars());
    for (const auto& [e, c] : f.terms()) r.add_term(e, c * power(q, e[var]));
    return r;
  }
  return f.substitute(var, spec.image(var));
}

Poly sigma_power_apply(const Poly& f, const Exponent& k, const TwistSpec& spec) {
  Poly r = f;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (unsigned t = 0; t < k[i]; ++t) r = sigma_apply(r, i, spec);
  }
  return r;
}

Poly sigma_iterate_variable(const TwistSpec& spec, std::size_t var, unsigned j) {
  Poly r = Poly::variable(spec.dim(), var);
  for (unsigned t = 0; t < j; ++t) r = sigma_apply(r, var, spec);
  return r;
}

Poly derivation(const Poly& f, std::size_t var, const TwistSpec& spec) {
  if (var >= spec.dim()) throw std::out_of_range("variable index out of range");
  if (spec.twist(var).kind() == TwistKind::kIdentity) {
    if (!spec.is_identity()) {
      throw IdentityTwistError("identity substitution outside the identity spec");
    }
    return partial_derivative(f, var);
  }
  Poly numerator = sigma_apply(f, var, spec) - f;
  Poly denominator = spec.image(var) - Poly::variable(spec.dim(), var);
  Poly quotient;
  if (!divide_by_univariate(numerator, denominator, var, quotient)) {
    throw IndivisibleError("sigma(f) - f is not divisible by sigma(x" +
                           std::to_string(var + 1) + ") - x" + std::to_string(var + 1));
  }
  return quotient;
}

NormValue gauss_norm(const Poly& f, const NormContext& ctx) {
  NormValue v = NormValue::infinity();
  for (const auto& [e, c] : f.terms()) v = min(v, ctx.valuation(c));
  return v;
}

ContractivityReport contractivity_check(const TwistSpec& spec, const NormContext& ctx,
                                        unsigned max_degree) {
  ContractivityReport report;
  const auto monomials = monomials_up_to(spec.dim(), max_degree);
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    for (const auto& m : monomials) {
      // |m| = 1 in the Gauss norm.
      if (gauss_norm(sigma_apply(Poly::monomial(m), i, spec), ctx) < NormValue(Scalar(0))) {
        report.contractive = false;
        report.witness_var = i;
        report.witness_monomial = m;
        return report;
      }
    }
  }
  return report;
}

bool CoordinateReport::all_kind() const {
  for (const auto& v : vars) {
    if (!v.kind) return false;
  }
  return true;
}

bool CoordinateReport::all_strong() const {
  for (const auto& v : vars) {
    if (!v.strong) return false;
  }
  return true;
}

bool CoordinateReport::all_leibniz() const {
  for (const auto& v : vars) {
    if (!v.leibniz) return false;
  }
  return true;
}

}  // namespace twistcalc
