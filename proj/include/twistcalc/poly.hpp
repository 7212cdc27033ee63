#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "twistcalc/coefficients.hpp"

namespace twistcalc {

/// Exponent vector / multi-index. All vectors used together share a length.
using Exponent = std::vector<unsigned>;

unsigned total_degree(const Exponent& e);

/// Graded lexicographic order: total degree first, then the first differing
/// exponent decides (x1 > x2 > ... ).
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Componentwise a <= b.
bool divides(const Exponent& a, const Exponent& b);

Exponent unit_exponent(std::size_t nvars, std::size_t var);

/// All exponent vectors of length nvars with total degree <= max_degree, in
/// ascending graded lexicographic order.
std::vector<Exponent> monomials_up_to(std::size_t nvars, unsigned max_degree);

/// Sparse polynomial over Scalar in a fixed number of variables. Zero
/// coefficients are never stored; iteration follows GradedLexLess.
class Poly {
 public:
  using Terms = std::map<Exponent, Scalar, GradedLexLess>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}
  Poly(std::size_t nvars, const Scalar& c);

  static Poly variable(std::size_t nvars, std::size_t var);
  static Poly monomial(Exponent e, const Scalar& c = 1);

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const noexcept { return terms_.size(); }

  /// -1 for the zero polynomial.
  int total_degree() const;
  /// -1 for the zero polynomial.
  int degree_in(std::size_t var) const;

  Scalar coefficient(const Exponent& e) const;
  Scalar constant_term() const;
  /// Adds c * x^e in place.
  void add_term(const Exponent& e, const Scalar& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Scalar& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
  friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }

  bool operator==(const Poly& other) const;

  Poly pow(unsigned exponent) const;

  /// Substitutes x_var -> image. image must have the same number of variables.
  Poly substitute(std::size_t var, const Poly& image) const;

  /// Evaluates at rational points (length nvars).
  Scalar evaluate(const std::vector<Scalar>& point) const;

 private:
  void check_compatible(const Poly& other) const;

  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Name of variable var (0-based) used when printing.
using VariableNamer = std::function<std::string(std::size_t)>;

/// x1, x2, ...
std::string default_variable_name(std::size_t var);

/// Canonical text form, highest term first, e.g. "3/2*x1^2*x3 - x2 + 5".
std::string to_string(const Poly& p, const VariableNamer& namer = default_variable_name);

/// Exact quotient of f by a polynomial g in the single variable var with a
/// constant leading coefficient. Returns false when g does not divide f.
bool divide_by_univariate(const Poly& f, const Poly& g, std::size_t var, Poly& quotient);

/// Classical partial derivative d/dx_var.
Poly partial_derivative(const Poly& f, std::size_t var);

}  // namespace twistcalc
