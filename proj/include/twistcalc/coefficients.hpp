#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace twistcalc {

/// Exact rational number, always kept canonical (reduced, positive
/// denominator).
using Scalar = mpq_class;

/// Parses "a", "-a" or "a/b". Throws UsageError on malformed text and
/// ZeroDenominatorError on b == 0.
Scalar parse_scalar(std::string_view text);

/// "num" or "num/den".
std::string to_string(const Scalar& x);

Scalar power(const Scalar& base, unsigned exponent);

/// Valuation in log domain: v in Q or +infinity. The norm it encodes is
/// p^{-v}, so larger valuations mean smaller norms.
class NormValue {
 public:
  NormValue() = default;  // +infinity
  explicit NormValue(Scalar v) : v_(std::move(v)) {}

  static NormValue infinity() { return NormValue(); }

  bool is_infinite() const noexcept { return !v_.has_value(); }
  /// Precondition: finite.
  const Scalar& value() const { return *v_; }

  NormValue operator+(const NormValue& other) const;
  NormValue operator-(const Scalar& shift) const;
  NormValue operator+(const Scalar& shift) const;

  bool operator==(const NormValue& other) const;
  std::strong_ordering operator<=>(const NormValue& other) const;

  /// "inf" or the rational.
  std::string to_string() const;

 private:
  std::optional<Scalar> v_;
};

/// Valuation of a sum bound / norm of a max: the smaller valuation.
NormValue min(const NormValue& a, const NormValue& b);
NormValue max(const NormValue& a, const NormValue& b);

/// p-adic valuation of x; +infinity for x == 0. p is assumed prime.
NormValue padic_valuation(const Scalar& x, unsigned long p);

/// Trial-division primality test for the moduli accepted by NormContext.
bool is_prime(unsigned long n);

/// Non-archimedean norm regime on Q: p-adic for a prime p, or trivial.
class NormContext {
 public:
  enum class Kind { kPadic, kTrivial };

  static NormContext trivial() { return NormContext(Kind::kTrivial, 0); }
  /// Throws NonPrimeError unless p is prime.
  static NormContext padic(unsigned long p);

  Kind kind() const noexcept { return kind_; }
  bool is_padic() const noexcept { return kind_ == Kind::kPadic; }
  /// 0 for the trivial context.
  unsigned long prime() const noexcept { return prime_; }

  NormValue valuation(const Scalar& x) const;

  /// "padic:p" or "trivial".
  std::string to_string() const;

  bool operator==(const NormContext&) const = default;

 private:
  NormContext(Kind kind, unsigned long p) : kind_(kind), prime_(p) {}
  Kind kind_;
  unsigned long prime_;
};

// q-analogues.

/// (n)_q = 1 + q + ... + q^{n-1}; (0)_q = 0.
Scalar q_integer(unsigned n, const Scalar& q);

/// (n)_q! = (1)_q ... (n)_q; (0)_q! = 1.
Scalar q_factorial(unsigned n, const Scalar& q);

/// Gaussian binomial. Throws ZeroDenominatorError when (j)_q vanishes for
/// some 1 <= j <= max(k, n-k), and std::invalid_argument when k > n.
Scalar q_binomial(unsigned n, unsigned k, const Scalar& q);

/// Valuation of the Gaussian binomial in a p-adic context with
/// v_p(q - 1) > 0. Throws NormBoundViolation when the valuation is
/// negative, i.e. when the bound |binom(n,k)_q| <= 1 fails.
NormValue q_binomial_norm_check(unsigned n, unsigned k, const Scalar& q,
                                const NormContext& ctx);

/// Throws RootOfUnityError if (j)_q == 0 for some 1 <= j <= order.
void require_nonvanishing_q_integers(const Scalar& q, unsigned order);

}  // namespace twistcalc
