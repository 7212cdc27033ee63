#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "twistcalc/poly.hpp"
#include "twistcalc/twist.hpp"

namespace twistcalc {

/// Finite sum  sum_k z_k d^{[k]}  with polynomial coefficients, stored on the
/// divided-power basis.
class TwistedOperator {
 public:
  using Terms = std::map<Exponent, Poly, GradedLexLess>;

  TwistedOperator() = default;
  explicit TwistedOperator(SpecPtr spec) : spec_(std::move(spec)) {}

  /// Multiplication by a.
  static TwistedOperator multiplication(SpecPtr spec, const Poly& a);
  /// d^{[k]}.
  static TwistedOperator divided_power(SpecPtr spec, const Exponent& k);

  const SpecPtr& spec() const noexcept { return spec_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// max |k| over stored terms; 0 for the zero operator.
  unsigned order() const;
  /// max total degree of the coefficients; -1 for zero.
  int coefficient_degree() const;

  Poly coefficient(const Exponent& k) const;
  void add_term(const Exponent& k, const Poly& c);

  TwistedOperator& operator+=(const TwistedOperator& other);
  TwistedOperator& operator-=(const TwistedOperator& other);
  friend TwistedOperator operator+(TwistedOperator a, const TwistedOperator& b) { return a += b; }
  friend TwistedOperator operator-(TwistedOperator a, const TwistedOperator& b) { return a -= b; }
  /// Left multiplication by a polynomial: a * sum z_k d^{[k]}.
  friend TwistedOperator operator*(const Poly& a, const TwistedOperator& op);

  bool operator==(const TwistedOperator& other) const;

 private:
  SpecPtr spec_;
  Terms terms_;
};

/// "1 + 6*x1*dp[1]" style text; terms ascend in graded lexicographic order.
std::string to_string(const TwistedOperator& op);

/// Throws RootOfUnityError if a q-twist has (j)_q == 0 for j <= order.
void require_divided_powers(const TwistSpec& spec, unsigned order);

/// sum_k z_k d^{[k]}(f).
Poly apply(const TwistedOperator& op, const Poly& f);

using PolyAction = std::function<Poly(const Poly&)>;

enum class RecoveryMode {
  /// Verify the result against the action on all monomials of degree
  /// <= order_bound + degree_bound; throw ReconstructionError on residue.
  kStrict,
  /// Return the order-bounded part without verification beyond order_bound.
  kTruncate,
};

/// Recovers the coefficients z_k, |k| <= order_bound, from the action on
/// monomials by a triangular solve (d^{[k]}(x^k) = 1, d^{[k]}(x^a) = 0
/// unless k <= a).
TwistedOperator recover_from_action(const SpecPtr& spec, const PolyAction& action,
                                    unsigned order_bound, unsigned degree_bound,
                                    RecoveryMode mode = RecoveryMode::kStrict);

/// p o q.
TwistedOperator compose(const TwistedOperator& p, const TwistedOperator& q);

/// Word atom: multiplication by a polynomial, a single derivation d_i, or a
/// divided power d^{[k]}.
struct CoeffAtom {
  Poly value;
  bool operator==(const CoeffAtom&) const = default;
};
struct DerivationAtom {
  std::size_t var;
  bool operator==(const DerivationAtom&) const = default;
};
struct DividedPowerAtom {
  Exponent index;
  bool operator==(const DividedPowerAtom&) const = default;
};
using OperatorAtom = std::variant<CoeffAtom, DerivationAtom, DividedPowerAtom>;

/// Product of atoms; the rightmost atom acts first.
struct OperatorWord {
  std::vector<OperatorAtom> atoms;
  bool operator==(const OperatorWord&) const = default;
};

/// Sum of words.
struct OperatorExpression {
  std::vector<OperatorWord> words;
  bool operator==(const OperatorExpression&) const = default;
};

/// Normal form of a word. Runs of coefficients and single derivations are
/// rewritten with  d_i a = d_i(a) + sigma_i(a) d_i  and  d_i d_j = d_j d_i;
/// d-powers then move to divided powers (closed form for q-twists, action
/// recovery otherwise). Divided-power atoms are joined by compose().
TwistedOperator normal_form(const OperatorWord& word, const SpecPtr& spec);
TwistedOperator normal_form(const OperatorExpression& expr, const SpecPtr& spec);

/// Literal evaluation: atoms applied right to left.
Poly evaluate_word(const OperatorWord& word, const Poly& f, const SpecPtr& spec);

}  // namespace twistcalc
