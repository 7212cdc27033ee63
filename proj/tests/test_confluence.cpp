#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "support.hpp"
#include "twistcalc/banach.hpp"
#include "twistcalc/confluence.hpp"
#include "twistcalc/errors.hpp"

using namespace twistcalc;
using testsupport::FixtureKind;
using testsupport::Rng;

namespace {

Poly x(std::size_t d, std::size_t i) { return Poly::variable(d, i); }
Poly one(std::size_t d) { return Poly(d, Scalar(1)); }

SpecPtr q_spec(const Scalar& q) { return make_spec(TwistSpec::q_twist({q}, NormContext::padic(5))); }

TwistedOperator truncate(const TwistedOperator& op, unsigned order) {
  TwistedOperator r(op.spec());
  for (const auto& [k, c] : op.terms()) {
    if (total_degree(k) <= order) r.add_term(k, c);
  }
  return r;
}

// Terms z_k d^[k] with deg z_k <= |k|, so the action never raises degree
// for q and shift twists.
TwistedOperator degree_non_increasing(Rng& rng, const SpecPtr& spec, unsigned max_order) {
  TwistedOperator r(spec);
  for (int t = 0; t < 3; ++t) {
    Exponent k = rng.exponent(spec->dim(), max_order);
    r.add_term(k, rng.integral_poly(spec->dim(), total_degree(k), 2));
  }
  return r;
}

// (q-1)^{k-1} x^{k-1} d^[k] for k = 1..n, over the classical spec.
TwistedOperator classical_q_derivative(const SpecPtr& classical, const Scalar& q, unsigned n) {
  TwistedOperator r(classical);
  for (unsigned k = 1; k <= n; ++k) {
    r.add_term({k}, Poly::monomial({k - 1}, power(q - 1, k - 1)));
  }
  return r;
}

}  // namespace

TEST_CASE("classical image of the q-derivative") {
  for (Scalar q : {Scalar(6), Scalar(26), Scalar(7, 2)}) {
    auto spec = q_spec(q);
    auto pair = to_classical(TwistedOperator::divided_power(spec, {1}), 4, 4);
    CHECK_FALSE(pair.exact);
    CHECK(pair.target == classical_q_derivative(pair.target.spec(), q, 4));
    // The full series reproduces the action on x^n for n <= 8.
    auto wide = to_classical(TwistedOperator::divided_power(spec, {1}), 8, 4).target;
    for (unsigned n = 0; n <= 8; ++n) {
      Poly m = x(1, 0).pow(n);
      CHECK(apply(wide, m) == q_integer(n, q) * (n ? x(1, 0).pow(n - 1) : Poly(1)));
      // Classical divided powers are ordinary binomials.
      for (unsigned k = 0; k <= n; ++k) {
        CHECK(divided_power(m, {k}, *wide.spec()) ==
              testsupport::classical_divided_power_of_monomial({n}, {k}));
      }
    }
  }
}

TEST_CASE("multiplication operators are twist independent") {
  auto spec = testsupport::fixture_spec(FixtureKind::kQ, 2);
  Poly g = x(2, 0) * x(2, 1) - Poly(2, Scalar(3, 4));
  auto pair = to_classical(TwistedOperator::multiplication(spec, g), 3, 3);
  CHECK(pair.exact);
  CHECK(pair.target == TwistedOperator::multiplication(classical_spec(*spec), g));
  auto back = from_classical(pair.target, spec, 3, 3);
  CHECK(back.source == TwistedOperator::multiplication(spec, g));
}

TEST_CASE("classical image of the endomorphism") {
  Scalar q(6);
  auto spec = q_spec(q);
  auto sigma = recover_from_action(spec, [&](const Poly& f) { return sigma_apply(f, 0, *spec); }, 1, 3);
  auto pair = to_classical(sigma, 5, 5);
  TwistedOperator expected(pair.target.spec());
  for (unsigned k = 0; k <= 5; ++k) expected.add_term({k}, Poly::monomial({k}, power(q - 1, k)));
  CHECK(pair.target == expected);
  for (unsigned n = 0; n <= 5; ++n) {
    CHECK(apply(pair.target, x(1, 0).pow(n)) == sigma_apply(x(1, 0).pow(n), 0, *spec));
  }
}

TEST_CASE("twisted image of the classical derivative") {
  Scalar q(6);
  auto spec = q_spec(q);
  auto classical = classical_spec(*spec);
  auto pair = from_classical(TwistedOperator::divided_power(classical, {1}), spec, 4, 4);
  CHECK(pair.source.coefficient({1}) == one(1));
  CHECK(pair.source.coefficient({0}).is_zero());
  for (unsigned n = 0; n <= 4; ++n) {
    Poly m = x(1, 0).pow(n);
    CHECK(apply(pair.source, m) == partial_derivative(m, 0));
  }
}

TEST_CASE("twisted source is required to be classical on the other side") {
  auto spec = testsupport::fixture_spec(FixtureKind::kQ, 1);
  CHECK_THROWS_AS(from_classical(TwistedOperator::divided_power(spec, {1}), spec, 2, 2),
                  InvalidTwistError);
}

TEST_CASE("actions agree on low-degree monomials") {
  Rng rng(61);
  for (auto kind : {FixtureKind::kQ, FixtureKind::kShift, FixtureKind::kMahler}) {
    auto spec = testsupport::fixture_spec(kind, 2);
    for (int t = 0; t < 8; ++t) {
      auto op = rng.op(spec, 2, 2);
      const unsigned N = 4;
      auto pair = to_classical(op, N, 2);
      for (const auto& a : monomials_up_to(2, N)) {
        Poly m = Poly::monomial(a);
        CHECK(apply(pair.target, m) == apply(op, m));
      }
      if (pair.exact) {
        for (const auto& a : monomials_up_to(2, N + 2)) {
          Poly m = Poly::monomial(a);
          CHECK(apply(pair.target, m) == apply(op, m));
        }
      }
    }
  }
}

TEST_CASE("round trips through the classical side") {
  Rng rng(62);
  for (auto kind : {FixtureKind::kQ, FixtureKind::kShift}) {
    auto spec = testsupport::fixture_spec(kind, 2);
    for (int t = 0; t < 10; ++t) {
      auto op = rng.op(spec, 2, 2);
      auto there = to_classical(op, 5, 5);
      auto back = from_classical(there.target, spec, 5, 5);
      CHECK(back.source == op);

      auto classical = rng.op(classical_spec(*spec), 2, 2);
      auto twisted = from_classical(classical, spec, 5, 5);
      CHECK(to_classical(twisted.source, 5, 5).target == classical);
    }
  }
}

TEST_CASE("classical conversion is A-linear") {
  Rng rng(63);
  auto spec = testsupport::fixture_spec(FixtureKind::kQ, 2);
  for (int t = 0; t < 10; ++t) {
    auto op = rng.op(spec, 2, 2);
    Poly a = rng.poly(2, 2);
    auto lhs = to_classical(compose(TwistedOperator::multiplication(spec, a), op), 4, 4).target;
    auto rhs = a * to_classical(op, 4, 4).target;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("classical conversion respects composition up to the order bound") {
  Rng rng(64);
  const unsigned N = 4;
  for (auto kind : {FixtureKind::kQ, FixtureKind::kShift}) {
    auto spec = testsupport::fixture_spec(kind, 2);
    for (int t = 0; t < 10; ++t) {
      auto p = rng.op(spec, 2, 2);
      auto q = degree_non_increasing(rng, spec, 2);
      auto whole = to_classical(compose(p, q), N, 4).target;
      auto parts = compose(to_classical(p, N, 4).target, to_classical(q, N, 4).target);
      CHECK(whole == truncate(parts, N));
    }
  }
}

TEST_CASE("confluence sweep fixtures") {
  const Scalar ell(1, 2);
  std::vector<Scalar> qs{Scalar(6), Scalar(26), Scalar(126)};
  auto rows = confluence_sweep(
      [](const Scalar& q) { return TwistedOperator::divided_power(q_spec(q), {1}); }, qs, 4, 4, ell);
  REQUIRE(rows.size() == 3);
  auto ctx = NormContext::padic(5);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].q == qs[i]);
    CHECK(rows[i].classical == classical_q_derivative(rows[i].classical.spec(), qs[i], 4));
    Scalar vq = ctx.valuation(qs[i] - 1).value();
    for (unsigned k = 1; k <= 4; ++k) {
      CHECK(gauss_norm(rows[i].classical.coefficient({k}), ctx) == NormValue(Scalar(k - 1) * vq));
    }
    CHECK(rows[i].eta_norm_valuation == NormValue(-ell));
  }

  Poly g = x(1, 0) + Poly(1, Scalar(2));
  auto constant = confluence_sweep(
      [&](const Scalar& q) { return TwistedOperator::multiplication(q_spec(q), g); }, qs, 4, 4, ell);
  for (const auto& row : constant) {
    CHECK(row.classical == constant.front().classical);
    CHECK(row.exact);
  }

  auto diff = confluence_sweep(
      [](const Scalar& q) {
        auto spec = q_spec(q);
        auto sigma = recover_from_action(spec, [&](const Poly& f) { return sigma_apply(f, 0, *spec); }, 1, 2);
        sigma -= TwistedOperator::multiplication(spec, one(1));
        return sigma;
      },
      qs, 4, 4, ell);
  for (const auto& row : diff) CHECK(row.classical.coefficient({0}).is_zero());
}

TEST_CASE("isometry witness fixtures") {
  auto spec = q_spec(6);
  auto ctx = spec->norm();
  EtaRadius eta(Scalar(1, 2), ctx);
  auto r = isometry_witness(to_classical(TwistedOperator::divided_power(spec, {1}), 6, 6), eta);
  CHECK(r.agree);
  CHECK(r.source_norm == NormValue(Scalar(-1, 2)));
  CHECK(r.target_norm == NormValue(Scalar(-1, 2)));
  CHECK_FALSE(r.caveat.empty());

  Poly g = Scalar(25) * x(1, 0) + Poly(1, Scalar(125));
  auto m = isometry_witness(to_classical(TwistedOperator::multiplication(spec, g), 2, 2), eta);
  CHECK(m.agree);
  CHECK(m.source_norm == NormValue(Scalar(2)));

  Rng rng(65);
  for (int t = 0; t < 10; ++t) {
    auto op = rng.op(spec, 2, 2, true);
    CHECK(isometry_witness(to_classical(op, 6, 6), eta).agree);
  }
}

int main(int argc, char** argv) {
  testsupport::announce_seed("test_confluence");
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
