#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "support.hpp"
#include "twistcalc/errors.hpp"

using namespace twistcalc;
using testsupport::Rng;

TEST_CASE("padic valuation fixtures") {
  CHECK(padic_valuation(12, 2) == NormValue(Scalar(2)));
  CHECK(padic_valuation(0, 5).is_infinite());
  CHECK(padic_valuation(Scalar(1, 10), 5) == NormValue(Scalar(-1)));
}

TEST_CASE("padic valuation matches trial division on integers") {
  Rng rng(1);
  for (int t = 0; t < 300; ++t) {
    long n = rng.integer(-100000, 100000);
    long p = std::vector<long>{2, 3, 5, 7, 11}[static_cast<std::size_t>(rng.integer(0, 4))];
    long expected = testsupport::trial_division_valuation(n, p);
    NormValue v = padic_valuation(Scalar(n), static_cast<unsigned long>(p));
    if (expected < 0) {
      CHECK(v.is_infinite());
    } else {
      CHECK(v == NormValue(Scalar(expected)));
    }
  }
}

TEST_CASE("valuation is multiplicative and ultrametric") {
  Rng rng(2);
  auto ctx = NormContext::padic(3);
  for (int t = 0; t < 200; ++t) {
    Scalar a = rng.rational(500, 200);
    Scalar b = rng.rational(500, 200);
    CHECK(ctx.valuation(a * b) == ctx.valuation(a) + ctx.valuation(b));
    CHECK(ctx.valuation(a + b) >= min(ctx.valuation(a), ctx.valuation(b)));
  }
}

TEST_CASE("trivial norm takes values 0 and infinity") {
  auto ctx = NormContext::trivial();
  CHECK(ctx.valuation(Scalar(25)) == NormValue(Scalar(0)));
  CHECK(ctx.valuation(Scalar(0)).is_infinite());
  CHECK(ctx.to_string() == "trivial");
}

TEST_CASE("context construction rejects composite moduli") {
  CHECK_THROWS_AS(NormContext::padic(4), NonPrimeError);
  CHECK_THROWS_AS(NormContext::padic(1), NonPrimeError);
  CHECK(NormContext::padic(7).to_string() == "padic:7");
}

TEST_CASE("scalar parsing is exact and canonical") {
  CHECK(to_string(parse_scalar("4/6")) == "2/3");
  CHECK(to_string(parse_scalar("-10/4")) == "-5/2");
  CHECK(to_string(parse_scalar("7")) == "7");
  CHECK_THROWS_AS(parse_scalar("3/0"), ZeroDenominatorError);
  CHECK_THROWS_AS(parse_scalar("1.5"), UsageError);
  CHECK_THROWS_AS(parse_scalar(""), UsageError);
}

TEST_CASE("q-integers and q-factorials") {
  CHECK(q_integer(3, 2) == 7);
  CHECK(q_integer(0, 5) == 0);
  for (unsigned n = 0; n <= 10; ++n) CHECK(q_integer(n, 1) == n);
  CHECK(q_factorial(0, Scalar(3, 7)) == 1);
  CHECK(q_factorial(3, 1) == 6);
  CHECK(q_factorial(3, 2) == 21);
}

TEST_CASE("gaussian binomial fixtures") {
  Rng rng(3);
  CHECK(q_binomial(5, 0, Scalar(2, 3)) == 1);
  CHECK(testsupport::gaussian_binomial_coefficients(4, 2) == std::vector<long long>{1, 1, 2, 1, 1});
  for (int t = 0; t < 20; ++t) {
    Scalar q = rng.rational();
    if (q == -1) continue;
    CHECK(q_binomial(4, 2, q) == 1 + q + 2 * q * q + q * q * q + q * q * q * q);
  }
  CHECK(q_binomial(4, 2, 1) == 6);
  CHECK_THROWS_AS(q_binomial(4, 2, -1), ZeroDenominatorError);
  CHECK_THROWS_AS(q_binomial(2, 3, 2), std::invalid_argument);
}

TEST_CASE("gaussian binomial agrees with the pascal oracle and recurrence") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    Scalar q = rng.rational();
    if (q == -1 || q == 0) continue;
    for (unsigned n = 1; n <= 12; ++n) {
      for (unsigned k = 1; k < n; ++k) {
        Scalar expected = q_binomial(n - 1, k - 1, q) + power(q, k) * q_binomial(n - 1, k, q);
        CHECK(q_binomial(n, k, q) == expected);
        CHECK(q_binomial(n, k, q) ==
              testsupport::evaluate_coefficients(testsupport::gaussian_binomial_coefficients(n, k), q));
      }
    }
  }
}

TEST_CASE("q = 1 degenerates to the classical values") {
  for (unsigned n = 0; n <= 10; ++n) {
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), n);
    CHECK(q_factorial(n, 1) == Scalar(fact));
    for (unsigned k = 0; k <= n; ++k) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), n, k);
      CHECK(q_binomial(n, k, 1) == Scalar(b));
    }
  }
}

TEST_CASE("gaussian binomials are p-adically integral near q = 1") {
  Rng rng(5);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
    auto ctx = NormContext::padic(p);
    for (int t = 0; t < 5; ++t) {
      Scalar q = 1 + Scalar(static_cast<long>(p) * rng.integer(-20, 20));
      if (q == 1 || q == -1) continue;  // roots of unity
      REQUIRE(ctx.valuation(q - 1) > NormValue(Scalar(0)));
      for (unsigned n = 0; n <= 12; ++n) {
        for (unsigned k = 0; k <= n; ++k) {
          CHECK(q_binomial_norm_check(n, k, q, ctx) >= NormValue(Scalar(0)));
        }
      }
    }
  }
}

TEST_CASE("norm check fixtures and violations") {
  CHECK(q_binomial_norm_check(4, 2, 6, NormContext::padic(5)) >= NormValue(Scalar(0)));
  CHECK(q_binomial_norm_check(7, 0, Scalar(2, 9), NormContext::padic(3)) == NormValue(Scalar(0)));
  CHECK(q_binomial_norm_check(2, 1, 4, NormContext::padic(3)) == NormValue(Scalar(0)));
  CHECK_THROWS_AS(q_binomial_norm_check(2, 1, Scalar(1, 5), NormContext::padic(5)), NormBoundViolation);
  CHECK_THROWS_AS(q_binomial_norm_check(2, 1, 6, NormContext::trivial()), std::invalid_argument);
}

TEST_CASE("roots of unity are rejected up to the working order") {
  CHECK_THROWS_AS(require_nonvanishing_q_integers(-1, 2), RootOfUnityError);
  CHECK_NOTHROW(require_nonvanishing_q_integers(-1, 1));
  CHECK_NOTHROW(require_nonvanishing_q_integers(6, 20));
}

TEST_CASE("norm values order infinity above every rational") {
  CHECK(NormValue::infinity() > NormValue(Scalar(1000)));
  CHECK((NormValue::infinity() + Scalar(3)).is_infinite());
  CHECK(min(NormValue(Scalar(1, 2)), NormValue::infinity()) == NormValue(Scalar(1, 2)));
  CHECK(NormValue(Scalar(-3, 2)).to_string() == "-3/2");
}

int main(int argc, char** argv) {
  testsupport::announce_seed("test_coefficients");
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
