#include "twistcalc/coefficients.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "twistcalc/errors.hpp"

namespace twistcalc {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

unsigned long remove_factor(mpz_class& z, unsigned long p) {
  if (z == 0) return 0;
  mpz_class pz(p);
  return mpz_remove(z.get_mpz_t(), z.get_mpz_t(), pz.get_mpz_t());
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw UsageError(ErrorCode::kSyntax,
                     "malformed rational '" + std::string(text) + "'");
  }
  mpz_class n{std::string(num)};
  mpz_class d{std::string(den)};
  if (d == 0) {
    throw ZeroDenominatorError("zero denominator in '" + std::string(text) + "'");
  }
  Scalar r(n, d);
  r.canonicalize();
  return negative ? Scalar(-r) : r;
}

std::string to_string(const Scalar& x) { return x.get_str(); }

Scalar power(const Scalar& base, unsigned exponent) {
  Scalar result = 1;
  Scalar b = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent != 0) b *= b;
  }
  return result;
}

NormValue NormValue::operator+(const NormValue& other) const {
  if (is_infinite() || other.is_infinite()) return infinity();
  return NormValue(Scalar(*v_ + *other.v_));
}

NormValue NormValue::operator+(const Scalar& shift) const {
  if (is_infinite()) return infinity();
  return NormValue(Scalar(*v_ + shift));
}

NormValue NormValue::operator-(const Scalar& shift) const {
  if (is_infinite()) return infinity();
  return NormValue(Scalar(*v_ - shift));
}

bool NormValue::operator==(const NormValue& other) const {
  if (is_infinite() || other.is_infinite()) {
    return is_infinite() == other.is_infinite();
  }
  return *v_ == *other.v_;
}

std::strong_ordering NormValue::operator<=>(const NormValue& other) const {
  if (is_infinite()) {
    return other.is_infinite() ? std::strong_ordering::equal
                               : std::strong_ordering::greater;
  }
  if (other.is_infinite()) return std::strong_ordering::less;
  int c = cmp(*v_, *other.v_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string NormValue::to_string() const {
  return is_infinite() ? "inf" : twistcalc::to_string(*v_);
}

NormValue min(const NormValue& a, const NormValue& b) { return b < a ? b : a; }
NormValue max(const NormValue& a, const NormValue& b) { return a < b ? b : a; }

NormValue padic_valuation(const Scalar& x, unsigned long p) {
  if (x == 0) return NormValue::infinity();
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  long v = static_cast<long>(remove_factor(num, p)) -
           static_cast<long>(remove_factor(den, p));
  return NormValue(Scalar(v));
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

NormContext NormContext::padic(unsigned long p) {
  if (!is_prime(p)) {
    throw NonPrimeError("p-adic norm requires a prime, got " + std::to_string(p));
  }
  return NormContext(Kind::kPadic, p);
}

NormValue NormContext::valuation(const Scalar& x) const {
  if (kind_ == Kind::kTrivial) {
    return x == 0 ? NormValue::infinity() : NormValue(Scalar(0));
  }
  return padic_valuation(x, prime_);
}

std::string NormContext::to_string() const {
  return kind_ == Kind::kTrivial ? "trivial" : "padic:" + std::to_string(prime_);
}

Scalar q_integer(unsigned n, const Scalar& q) {
  Scalar sum = 0;
  Scalar term = 1;
  for (unsigned j = 0; j < n; ++j) {
    sum += term;
    term *= q;
  }
  return sum;
}

Scalar q_factorial(unsigned n, const Scalar& q) {
  Scalar prod = 1;
  for (unsigned j = 1; j <= n; ++j) prod *= q_integer(j, q);
  return prod;
}

void require_nonvanishing_q_integers(const Scalar& q, unsigned order) {
  for (unsigned j = 1; j <= order; ++j) {
    if (q_integer(j, q) == 0) {
      throw RootOfUnityError("q = " + to_string(q) + " is a root of unity: (" +
                             std::to_string(j) + ")_q = 0");
    }
  }
}

Scalar q_binomial(unsigned n, unsigned k, const Scalar& q) {
  if (k > n) throw std::invalid_argument("q_binomial: k > n");
  unsigned lo = std::min(k, n - k);
  // (n)_q (n-1)_q ... (n-lo+1)_q / (lo)_q!
  Scalar num = 1;
  Scalar den = 1;
  for (unsigned j = 1; j <= lo; ++j) {
    num *= q_integer(n - lo + j, q);
    Scalar qj = q_integer(j, q);
    if (qj == 0) {
      throw ZeroDenominatorError("q_binomial: (" + std::to_string(j) +
                                 ")_q vanishes for q = " + to_string(q));
    }
    den *= qj;
  }
  // The remaining denominator factors up to max(k, n-k) cancel against the
  // numerator, but a vanishing one still makes the quotient undefined.
  for (unsigned j = lo + 1; j <= std::max(k, n - k); ++j) {
    if (q_integer(j, q) == 0) {
      throw ZeroDenominatorError("q_binomial: (" + std::to_string(j) +
                                 ")_q vanishes for q = " + to_string(q));
    }
  }
  Scalar r = num / den;
  r.canonicalize();
  return r;
}

NormValue q_binomial_norm_check(unsigned n, unsigned k, const Scalar& q,
                                const NormContext& ctx) {
  if (!ctx.is_padic()) {
    throw std::invalid_argument("q_binomial_norm_check needs a p-adic context");
  }
  NormValue v = ctx.valuation(q_binomial(n, k, q));
  if (v < NormValue(Scalar(0))) {
    throw NormBoundViolation("|binom(" + std::to_string(n) + "," +
                             std::to_string(k) + ")_q| > 1 for q = " +
                             to_string(q));
  }
  return v;
}

}  // namespace twistcalc
