#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistcalc/poly.hpp"
#include "twistcalc/twist.hpp"

namespace twistcalc {

/// Polynomial in auxiliary variables xi_1..xi_d with coefficients in
/// A = Q[x_1..x_d], keyed by xi-exponent.
class XiPoly {
 public:
  using Terms = std::map<Exponent, Poly, GradedLexLess>;

  XiPoly() = default;
  explicit XiPoly(std::size_t dim) : dim_(dim) {}
  /// The constant a (xi-degree 0).
  static XiPoly constant(const Poly& a);

  std::size_t dim() const noexcept { return dim_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// -1 for zero.
  int xi_degree() const;

  Poly coefficient(const Exponent& k) const;
  void add_term(const Exponent& k, const Poly& c);

  XiPoly& operator+=(const XiPoly& other);
  XiPoly& operator-=(const XiPoly& other);
  friend XiPoly operator+(XiPoly a, const XiPoly& b) { return a += b; }
  friend XiPoly operator-(XiPoly a, const XiPoly& b) { return a -= b; }
  friend XiPoly operator*(const XiPoly& a, const XiPoly& b);
  /// Multiplication by an element of A.
  friend XiPoly operator*(const Poly& a, const XiPoly& b);

  bool operator==(const XiPoly& other) const = default;

 private:
  std::size_t dim_ = 0;
  Terms terms_;
};

std::string to_string(const XiPoly& p);

/// Element of the twisted principal parts of order n, stored by its
/// coefficients on the twisted basis xi^{(k)}, |k| <= n.
struct Jet {
  SpecPtr spec;
  unsigned order = 0;
  std::map<Exponent, Poly, GradedLexLess> coefficients;

  /// Zero coefficient for absent k.
  Poly coefficient(const Exponent& k) const;
  /// Adds c at k; indices with |k| > order are dropped (reduction).
  void add(const Exponent& k, const Poly& c);

  bool operator==(const Jet& other) const;
};

/// Element of P_(n) (x)' P_(m): coefficients on xi^{(k)} (x) xi'^{(k')} with
/// coefficients in A acting on the left factor.
struct BiJet {
  SpecPtr spec;
  unsigned left_order = 0;
  unsigned right_order = 0;
  std::map<std::pair<Exponent, Exponent>, Poly> coefficients;

  Poly coefficient(const Exponent& k, const Exponent& kprime) const;
  void add(const Exponent& k, const Exponent& kprime, const Poly& c);

  bool operator==(const BiJet& other) const;
};

/// Univariate recurrence tables for one spec. Rows are built on demand; a
/// table is a scratch object owned by a single computation.
class BasisTables {
 public:
  explicit BasisTables(const TwistSpec& spec);

  const TwistSpec& spec() const noexcept { return spec_; }

  /// sigma_var^j(x_var).
  const Poly& sigma_iterate(std::size_t var, unsigned j);
  /// x_var - sigma_var^j(x_var).
  const Poly& gap(std::size_t var, unsigned j);
  /// Coefficients of xi^t, t = 0..j, in the expansion of xi_var^{(j)}.
  const std::vector<Poly>& twisted_expansion(std::size_t var, unsigned j);
  /// c_j, j = 0..b, with xi_var^b = sum_j c_j xi_var^{(j)}.
  const std::vector<Poly>& power_in_twisted(std::size_t var, unsigned b);
  /// d^{[j]}(x_var^a) for j <= a.
  const Poly& divided_power_of_power(std::size_t var, unsigned a, unsigned j);
  /// d^{[j]}(x_var^a), j = 0..min(a, limit).
  std::vector<Poly> divided_powers_of_power(std::size_t var, unsigned a, unsigned limit);

 private:
  struct VarTables {
    std::vector<Poly> sigma;
    std::vector<Poly> gaps;
    std::vector<std::vector<Poly>> expansions;
    std::vector<std::vector<Poly>> powers;
    // homogeneous[j][m] = h_m(x, sigma x, ..., sigma^j x)
    std::vector<std::vector<Poly>> homogeneous;
  };

  const TwistSpec& spec_;
  std::vector<VarTables> vars_;
};

/// prod_i prod_{j<k_i} (xi_i + x_i - sigma_i^j(x_i)), expanded.
XiPoly twisted_basis_element(const Exponent& k, const TwistSpec& spec);

/// Rewrites p on the twisted basis and drops indices with |k| > n.
Jet to_twisted_basis(const XiPoly& p, unsigned n, const SpecPtr& spec);
XiPoly from_twisted_basis(const Jet& jet);

/// f(x + xi) expanded on the monomial xi basis, without reduction.
XiPoly shift_substitute(const Poly& f);

/// Twisted Taylor expansion of order n: the coefficient at k is d^{[k]}(f).
Jet taylor(const Poly& f, unsigned n, const SpecPtr& spec);

/// d^{[k]}(f) without forming the whole jet.
Poly divided_power(const Poly& f, const Exponent& k, BasisTables& tables);
Poly divided_power(const Poly& f, const Exponent& k, const TwistSpec& spec);

/// Product in P_(n); both jets must share spec and order.
Jet jet_multiply(const Jet& a, const Jet& b);

/// delta_{n,m}: xi -> xi (x) 1 + 1 (x) xi'. The jet must have order n + m.
BiJet comultiplication(const Jet& jet, unsigned n, unsigned m);

struct SymmetryReport {
  bool symmetric = true;
  unsigned left_order = 0;
  unsigned right_order = 0;
  std::optional<std::pair<Exponent, Exponent>> differing_index;
};

/// Compares delta_{n,m}(taylor(f, n+m)) with 1 (x)' taylor(f, m).
SymmetryReport symmetric_check(const Poly& f, unsigned n, unsigned m, const SpecPtr& spec);

/// Substitutes xi_i -> sigma_i^{k_i}(x_i) - x_i. For taylor(f) this gives
/// sigma^k(f) whenever |k| <= order.
Poly evaluate_pi(const Jet& jet, const Exponent& k);

/// Indices where the Taylor coefficient at e_i differs from derivation(f, i).
std::vector<std::size_t> classicality_mismatches(const Poly& f, const SpecPtr& spec);

}  // namespace twistcalc
