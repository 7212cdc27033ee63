#pragma once

// Seeded generators and independent oracles shared by the test binaries.
// Oracles work in a 2d-variable ring (x_1..x_d, xi_1..xi_d) by brute-force
// expansion and never go through the library's recurrence tables.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "twistcalc/coefficients.hpp"
#include "twistcalc/operators.hpp"
#include "twistcalc/poly.hpp"
#include "twistcalc/principal_parts.hpp"
#include "twistcalc/twist.hpp"

namespace testsupport {

using namespace twistcalc;

inline std::uint64_t seed() {
  static const std::uint64_t value = [] {
    const char* env = std::getenv("TWISTCALC_SEED");
    std::uint64_t s = env ? std::strtoull(env, nullptr, 10) : 20261018ULL;
    return s;
  }();
  return value;
}

class Rng {
 public:
  explicit Rng(std::uint64_t salt = 0) : gen_(seed() ^ (salt * 0x9E3779B97F4A7C15ULL)) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin() { return integer(0, 1) == 1; }

  Scalar rational(long span = 30, long max_den = 6) {
    Scalar r(integer(-span, span), integer(1, max_den));
    r.canonicalize();
    return r;
  }

  Scalar nonzero_rational(long span = 30, long max_den = 6) {
    for (;;) {
      Scalar r = rational(span, max_den);
      if (r != 0) return r;
    }
  }

  Exponent exponent(std::size_t d, unsigned max_degree) {
    Exponent e(d, 0);
    unsigned budget = static_cast<unsigned>(integer(0, max_degree));
    for (unsigned t = 0; t < budget; ++t) e[static_cast<std::size_t>(integer(0, d - 1))] += 1;
    return e;
  }

  Poly poly(std::size_t d, unsigned max_degree, unsigned max_terms = 4) {
    Poly p(d);
    unsigned terms = static_cast<unsigned>(integer(1, max_terms));
    for (unsigned t = 0; t < terms; ++t) p.add_term(exponent(d, max_degree), rational());
    return p;
  }

  /// Polynomials with integer coefficients, used where p-adic sizes matter.
  Poly integral_poly(std::size_t d, unsigned max_degree, unsigned max_terms = 4) {
    Poly p(d);
    unsigned terms = static_cast<unsigned>(integer(1, max_terms));
    for (unsigned t = 0; t < terms; ++t) p.add_term(exponent(d, max_degree), Scalar(integer(-40, 40)));
    return p;
  }

  XiPoly xi_poly(std::size_t d, unsigned max_xi_degree, unsigned max_coeff_degree) {
    XiPoly p(d);
    unsigned terms = static_cast<unsigned>(integer(1, 4));
    for (unsigned t = 0; t < terms; ++t) {
      p.add_term(exponent(d, max_xi_degree), integral_poly(d, max_coeff_degree, 2));
    }
    return p;
  }

  TwistedOperator op(const SpecPtr& spec, unsigned max_order, unsigned max_coeff_degree,
                     bool integral = false) {
    TwistedOperator r(spec);
    unsigned terms = static_cast<unsigned>(integer(1, 3));
    for (unsigned t = 0; t < terms; ++t) {
      Poly c = integral ? integral_poly(spec->dim(), max_coeff_degree, 2)
                        : poly(spec->dim(), max_coeff_degree, 2);
      r.add_term(exponent(spec->dim(), max_order), c);
    }
    return r;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Fixture specs used across suites: q = 1+5 over 5-adics, shift h = 5,
/// Mahler l = 2, all variables of the same kind.
enum class FixtureKind { kQ, kShift, kMahler };

inline SpecPtr fixture_spec(FixtureKind kind, std::size_t d) {
  std::vector<VariableTwist> twists;
  for (std::size_t i = 0; i < d; ++i) {
    switch (kind) {
      case FixtureKind::kQ: twists.push_back(VariableTwist::q(Scalar(6 + static_cast<long>(i) * 5))); break;
      case FixtureKind::kShift: twists.push_back(VariableTwist::shift(Scalar(5 * (static_cast<long>(i) + 1)))); break;
      case FixtureKind::kMahler: twists.push_back(VariableTwist::mahler(2)); break;
    }
  }
  return make_spec(TwistSpec(std::move(twists), NormContext::padic(5)));
}

inline const char* kind_name(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::kQ: return "q";
    case FixtureKind::kShift: return "shift";
    case FixtureKind::kMahler: return "mahler";
  }
  return "?";
}

/// Prints the seed once per binary so failures can be replayed.
inline void announce_seed(const char* binary) {
  std::cerr << binary << ": TWISTCALC_SEED=" << seed() << "\n";
}

// ---------------------------------------------------------------------------
// Oracles

/// Integer p-adic valuation by trial division; returns -1 for zero.
inline long trial_division_valuation(long n, long p) {
  if (n == 0) return -1;
  n = n < 0 ? -n : n;
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Gaussian binomial as integer coefficients in q, built by the Pascal rule
/// binom(n,k) = binom(n-1,k-1) + q^k binom(n-1,k).
inline std::vector<long long> gaussian_binomial_coefficients(unsigned n, unsigned k) {
  std::vector<std::vector<std::vector<long long>>> t(n + 1);
  for (unsigned a = 0; a <= n; ++a) {
    t[a].resize(a + 1);
    for (unsigned b = 0; b <= a; ++b) {
      if (b == 0 || b == a) {
        t[a][b] = {1};
        continue;
      }
      const auto& left = t[a - 1][b - 1];
      const auto& right = t[a - 1][b];
      std::vector<long long> out(std::max(left.size(), right.size() + b), 0);
      for (std::size_t i = 0; i < left.size(); ++i) out[i] += left[i];
      for (std::size_t i = 0; i < right.size(); ++i) out[i + b] += right[i];
      t[a][b] = out;
    }
  }
  return t[n][k];
}

inline Scalar evaluate_coefficients(const std::vector<long long>& c, const Scalar& q) {
  Scalar r = 0;
  Scalar qp = 1;
  for (long long v : c) {
    r += qp * Scalar(static_cast<long>(v));
    qp *= q;
  }
  return r;
}

/// x_i in the 2d-variable oracle ring.
inline Poly ox(std::size_t d, std::size_t i) { return Poly::variable(2 * d, i); }
/// xi_i in the 2d-variable oracle ring.
inline Poly oxi(std::size_t d, std::size_t i) { return Poly::variable(2 * d, d + i); }

/// Embeds a d-variable polynomial into the oracle ring.
inline Poly lift(const Poly& f) {
  const std::size_t d = f.nvars();
  Poly r(2 * d);
  for (const auto& [e, c] : f.terms()) {
    Exponent big(2 * d, 0);
    for (std::size_t i = 0; i < d; ++i) big[i] = e[i];
    r.add_term(big, c);
  }
  return r;
}

/// sigma_i^j(x_i) by repeated direct substitution, in d variables.
inline Poly oracle_sigma_iterate(const TwistSpec& spec, std::size_t i, unsigned j) {
  Poly r = Poly::variable(spec.dim(), i);
  for (unsigned t = 0; t < j; ++t) r = r.substitute(i, spec.image(i));
  return r;
}

/// prod_i prod_{j<k_i} (xi_i + x_i - sigma_i^j(x_i)) in the oracle ring.
inline Poly oracle_twisted_basis(const Exponent& k, const TwistSpec& spec) {
  const std::size_t d = spec.dim();
  Poly r(2 * d, Scalar(1));
  for (std::size_t i = 0; i < d; ++i) {
    for (unsigned j = 0; j < k[i]; ++j) {
      r = r * (oxi(d, i) + ox(d, i) - lift(oracle_sigma_iterate(spec, i, j)));
    }
  }
  return r;
}

/// f(x + xi) in the oracle ring.
inline Poly oracle_shift(const Poly& f) {
  const std::size_t d = f.nvars();
  Poly r = lift(f);
  for (std::size_t i = 0; i < d; ++i) r = r.substitute(i, ox(d, i) + oxi(d, i));
  return r;
}

/// Splits an oracle-ring polynomial by xi-exponent.
inline std::map<Exponent, Poly, GradedLexLess> by_xi(const Poly& p, std::size_t d) {
  std::map<Exponent, Poly, GradedLexLess> out;
  for (const auto& [e, c] : p.terms()) {
    Exponent xe(e.begin(), e.begin() + static_cast<long>(d));
    Exponent ke(e.begin() + static_cast<long>(d), e.end());
    auto [it, inserted] = out.try_emplace(ke, Poly(d));
    it->second.add_term(xe, c);
  }
  return out;
}

/// Rewrites an oracle-ring polynomial on the twisted basis by repeatedly
/// cancelling the graded-lex largest xi-monomial. Keeps all indices.
inline std::map<Exponent, Poly, GradedLexLess> oracle_to_twisted(Poly p, const TwistSpec& spec) {
  const std::size_t d = spec.dim();
  std::map<Exponent, Poly, GradedLexLess> out;
  while (!p.is_zero()) {
    auto parts = by_xi(p, d);
    auto top = std::prev(parts.end());
    const Exponent k = top->first;
    const Poly c = top->second;
    out[k] = c;
    p -= lift(c) * oracle_twisted_basis(k, spec);
  }
  return out;
}

/// Twisted Taylor coefficients of f via the oracle ring, truncated at n.
inline std::map<Exponent, Poly, GradedLexLess> oracle_taylor(const Poly& f, unsigned n,
                                                             const TwistSpec& spec) {
  auto all = oracle_to_twisted(oracle_shift(f), spec);
  for (auto it = all.begin(); it != all.end();) {
    it = total_degree(it->first) > n ? all.erase(it) : std::next(it);
  }
  return all;
}

inline Jet as_jet(const std::map<Exponent, Poly, GradedLexLess>& coeffs, unsigned n,
                  const SpecPtr& spec) {
  Jet j{spec, n, {}};
  for (const auto& [k, c] : coeffs) j.add(k, c);
  return j;
}

/// Classical divided power d^k/k! of x^a: prod C(a_i, k_i) x^{a-k}.
inline Poly classical_divided_power_of_monomial(const Exponent& a, const Exponent& k) {
  if (!divides(k, a)) return Poly(a.size());
  Scalar c = 1;
  Exponent rest(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), a[i], k[i]);
    c *= Scalar(b);
    rest[i] = a[i] - k[i];
  }
  return Poly::monomial(rest, c);
}

}  // namespace testsupport
