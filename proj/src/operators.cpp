#include "twistcalc/operators.hpp"

#include <sstream>

#include "twistcalc/errors.hpp"
#include "twistcalc/principal_parts.hpp"

namespace twistcalc {

namespace {

// Verification window used by compose(): the recovered operator is checked
// on monomials up to this many degrees past the order bound.
constexpr unsigned kComposeCheckDegree = 2;

void require_same_spec(const TwistedOperator& p, const TwistedOperator& q) {
  if (!(*p.spec() == *q.spec())) {
    throw DimensionMismatchError("operators belong to different twist specs");
  }
}

Exponent zero_index(const TwistSpec& spec) { return Exponent(spec.dim(), 0); }

}  // namespace

TwistedOperator TwistedOperator::multiplication(SpecPtr spec, const Poly& a) {
  TwistedOperator op(spec);
  op.add_term(zero_index(*spec), a);
  return op;
}

TwistedOperator TwistedOperator::divided_power(SpecPtr spec, const Exponent& k) {
  TwistedOperator op(spec);
  op.add_term(k, Poly(spec->dim(), Scalar(1)));
  return op;
}

unsigned TwistedOperator::order() const {
  return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
}

int TwistedOperator::coefficient_degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, c.total_degree());
  return d;
}

Poly TwistedOperator::coefficient(const Exponent& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Poly(spec_->dim()) : it->second;
}

void TwistedOperator::add_term(const Exponent& k, const Poly& c) {
  if (c.is_zero()) return;
  if (k.size() != spec_->dim()) throw DimensionMismatchError("operator index length");
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TwistedOperator& TwistedOperator::operator+=(const TwistedOperator& other) {
  require_same_spec(*this, other);
  for (const auto& [k, c] : other.terms_) add_term(k, c);
  return *this;
}

TwistedOperator& TwistedOperator::operator-=(const TwistedOperator& other) {
  require_same_spec(*this, other);
  for (const auto& [k, c] : other.terms_) add_term(k, -c);
  return *this;
}

TwistedOperator operator*(const Poly& a, const TwistedOperator& op) {
  TwistedOperator r(op.spec_);
  for (const auto& [k, c] : op.terms_) r.add_term(k, a * c);
  return r;
}

bool TwistedOperator::operator==(const TwistedOperator& other) const {
  return *spec_ == *other.spec_ && terms_ == other.terms_;
}

std::string to_string(const TwistedOperator& op) {
  if (op.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : op.terms()) {
    bool constant_index = total_degree(k) == 0;
    std::string coeff = to_string(c);
    bool negative = !coeff.empty() && coeff.front() == '-' && c.size() == 1;
    if (negative) coeff.erase(0, 1);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (constant_index) {
      os << (c.size() > 1 ? "(" + coeff + ")" : coeff);
      continue;
    }
    if (coeff != "1") os << (c.size() > 1 ? "(" + coeff + ")" : coeff) << '*';
    os << "dp[";
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
    os << ']';
  }
  return os.str();
}

void require_divided_powers(const TwistSpec& spec, unsigned order) {
  for (const auto& t : spec.twists()) {
    if (t.kind() == TwistKind::kQ) require_nonvanishing_q_integers(t.parameter(), order);
  }
}

Poly apply(const TwistedOperator& op, const Poly& f) {
  const TwistSpec& spec = *op.spec();
  require_divided_powers(spec, op.order());
  BasisTables tables(spec);
  Poly out(spec.dim());
  for (const auto& [k, z] : op.terms()) {
    Poly dk = divided_power(f, k, tables);
    if (!dk.is_zero()) out += z * dk;
  }
  return out;
}

TwistedOperator recover_from_action(const SpecPtr& spec, const PolyAction& action,
                                    unsigned order_bound, unsigned degree_bound,
                                    RecoveryMode mode) {
  require_divided_powers(*spec, order_bound);
  const std::size_t d = spec->dim();
  BasisTables tables(*spec);
  TwistedOperator result(spec);
  for (const auto& a : monomials_up_to(d, order_bound)) {
    Poly m = Poly::monomial(a);
    Poly residual = action(m);
    for (const auto& [k, z] : result.terms()) {
      if (divides(k, a)) residual -= z * divided_power(m, k, tables);
    }
    // d^{[a]}(x^a) = 1, so the residual is the coefficient at a.
    result.add_term(a, residual);
  }
  if (mode == RecoveryMode::kStrict) {
    for (const auto& a : monomials_up_to(d, order_bound + degree_bound)) {
      if (total_degree(a) <= order_bound) continue;
      Poly m = Poly::monomial(a);
      Poly recovered(d);
      for (const auto& [k, z] : result.terms()) {
        if (divides(k, a)) recovered += z * divided_power(m, k, tables);
      }
      if (!(recovered == action(m))) {
        throw ReconstructionError("action on " + to_string(m) +
                                  " is not reproduced at order bound " +
                                  std::to_string(order_bound));
      }
    }
  }
  return result;
}

TwistedOperator compose(const TwistedOperator& p, const TwistedOperator& q) {
  require_same_spec(p, q);
  if (p.is_zero() || q.is_zero()) return TwistedOperator(p.spec());
  return recover_from_action(
      p.spec(), [&](const Poly& f) { return apply(p, apply(q, f)); }, p.order() + q.order(),
      kComposeCheckDegree);
}

namespace {

using PowerForm = std::map<Exponent, Poly, GradedLexLess>;

// Coefficients-left form sum_a c_a d^a of a run of coefficient and
// derivation atoms.
PowerForm rewrite_segment(const std::vector<const OperatorAtom*>& atoms, const TwistSpec& spec) {
  const std::size_t d = spec.dim();
  PowerForm form;
  form.emplace(Exponent(d, 0), Poly(d, Scalar(1)));
  auto add = [](PowerForm& f, const Exponent& a, const Poly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = f.try_emplace(a, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) f.erase(it);
    }
  };
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
    PowerForm next;
    if (const auto* coeff = std::get_if<CoeffAtom>(*it)) {
      for (const auto& [a, c] : form) add(next, a, coeff->value * c);
    } else {
      std::size_t i = std::get<DerivationAtom>(**it).var;
      if (i >= d) throw DimensionMismatchError("derivation index out of range");
      // d_i c = d_i(c) + sigma_i(c) d_i; the d's commute among themselves.
      for (const auto& [a, c] : form) {
        add(next, a, derivation(c, i, spec));
        Exponent raised = a;
        raised[i] += 1;
        add(next, raised, sigma_apply(c, i, spec));
      }
    }
    form = std::move(next);
  }
  return form;
}

Poly apply_derivation_power(const Poly& f, const Exponent& a, const TwistSpec& spec) {
  Poly r = f;
  // d^a = d_1^{a_1} o ... o d_d^{a_d}; the rightmost factor acts first.
  for (std::size_t i = a.size(); i-- > 0;) {
    for (unsigned t = 0; t < a[i]; ++t) r = derivation(r, i, spec);
  }
  return r;
}

TwistedOperator power_to_divided(const Exponent& a, const SpecPtr& spec) {
  if (spec->all_q()) {
    Scalar factor = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Scalar& q = spec->twist(i).parameter();
      require_nonvanishing_q_integers(q, a[i]);
      factor *= q_factorial(a[i], q);
    }
    TwistedOperator op(spec);
    op.add_term(a, Poly(spec->dim(), factor));
    return op;
  }
  return recover_from_action(
      spec, [&](const Poly& f) { return apply_derivation_power(f, a, *spec); },
      total_degree(a), kComposeCheckDegree);
}

}  // namespace

TwistedOperator normal_form(const OperatorWord& word, const SpecPtr& spec) {
  const std::size_t d = spec->dim();
  std::vector<TwistedOperator> factors;
  std::vector<const OperatorAtom*> run;
  std::map<Exponent, TwistedOperator, GradedLexLess> converted;

  auto flush = [&]() {
    if (run.empty()) return;
    TwistedOperator op(spec);
    for (const auto& [a, c] : rewrite_segment(run, *spec)) {
      auto it = converted.find(a);
      if (it == converted.end()) it = converted.emplace(a, power_to_divided(a, spec)).first;
      op += c * it->second;
    }
    factors.push_back(std::move(op));
    run.clear();
  };

  for (const auto& atom : word.atoms) {
    if (const auto* dp = std::get_if<DividedPowerAtom>(&atom)) {
      flush();
      if (dp->index.size() != d) throw DimensionMismatchError("divided power index length");
      require_divided_powers(*spec, total_degree(dp->index));
      factors.push_back(TwistedOperator::divided_power(spec, dp->index));
    } else {
      run.push_back(&atom);
    }
  }
  flush();

  if (factors.empty()) return TwistedOperator::multiplication(spec, Poly(d, Scalar(1)));
  TwistedOperator result = factors.back();
  for (std::size_t j = factors.size() - 1; j-- > 0;) result = compose(factors[j], result);
  return result;
}

TwistedOperator normal_form(const OperatorExpression& expr, const SpecPtr& spec) {
  TwistedOperator sum(spec);
  for (const auto& w : expr.words) sum += normal_form(w, spec);
  return sum;
}

Poly evaluate_word(const OperatorWord& word, const Poly& f, const SpecPtr& spec) {
  Poly r = f;
  for (auto it = word.atoms.rbegin(); it != word.atoms.rend(); ++it) {
    if (const auto* c = std::get_if<CoeffAtom>(&*it)) {
      r = c->value * r;
    } else if (const auto* dv = std::get_if<DerivationAtom>(&*it)) {
      r = derivation(r, dv->var, *spec);
    } else {
      r = divided_power(r, std::get<DividedPowerAtom>(*it).index, *spec);
    }
  }
  return r;
}

}  // namespace twistcalc
