#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "support.hpp"
#include "twistcalc/connection.hpp"
#include "twistcalc/errors.hpp"

using namespace twistcalc;
using testsupport::FixtureKind;
using testsupport::Rng;

namespace {

Poly x(std::size_t d, std::size_t i) { return Poly::variable(d, i); }

ConnectionModule rank_one(const SpecPtr& spec, std::vector<Poly> entries) {
  std::vector<PolyMatrix> ms;
  for (auto& e : entries) ms.push_back(PolyMatrix{{e}});
  return ConnectionModule(spec, 1, std::move(ms));
}

// Random univariate polynomial in x_var, embedded in d variables.
Poly univariate(Rng& rng, std::size_t d, std::size_t var, unsigned degree) {
  Poly p(d);
  for (unsigned j = 0; j <= degree; ++j) {
    Exponent e(d, 0);
    e[var] = j;
    p.add_term(e, Scalar(rng.integer(-3, 3)));
  }
  return p;
}

// Integrable fixtures: trivial connections, separated rank-one connections,
// and commuting constant diagonal matrices.
std::vector<ConnectionModule> integrable_fixtures() {
  std::vector<ConnectionModule> out;
  auto q1 = testsupport::fixture_spec(FixtureKind::kQ, 1);
  auto q2 = testsupport::fixture_spec(FixtureKind::kQ, 2);
  auto s2 = testsupport::fixture_spec(FixtureKind::kShift, 2);
  auto mixed = make_spec(TwistSpec({VariableTwist::q(6), VariableTwist::shift(5)}, NormContext::padic(5)));
  out.push_back(ConnectionModule::trivial(q1, 1));
  out.push_back(ConnectionModule::trivial(q2, 1));
  out.push_back(ConnectionModule::trivial(mixed, 2));
  out.push_back(rank_one(q2, {Poly(2), x(2, 1) + Poly(2, Scalar(1))}));
  out.push_back(rank_one(s2, {x(2, 0), x(2, 1) * x(2, 1)}));
  out.push_back(rank_one(q1, {x(1, 0) + Poly(1, Scalar(2))}));
  PolyMatrix a{{Poly(2, Scalar(2)), Poly(2)}, {Poly(2), Poly(2, Scalar(-1))}};
  PolyMatrix b{{Poly(2, Scalar(3)), Poly(2)}, {Poly(2), Poly(2, Scalar(5))}};
  out.push_back(ConnectionModule(q2, 2, {a, b}));
  return out;
}

ModuleForm random_form(Rng& rng, const ConnectionModule& mod, unsigned n) {
  const std::size_t d = mod.spec()->dim();
  ModuleForm form;
  for (unsigned s = 0; s < (1u << d); ++s) {
    if (static_cast<unsigned>(__builtin_popcount(s)) != n) continue;
    PolyVector v;
    for (std::size_t j = 0; j < mod.rank(); ++j) v.push_back(rng.poly(d, 4));
    form[s] = v;
  }
  return form;
}

bool form_is_zero(const ModuleForm& f) {
  for (const auto& [s, v] : f) {
    for (const auto& p : v) {
      if (!p.is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("module action fixtures") {
  auto spec = testsupport::fixture_spec(FixtureKind::kQ, 1);
  Poly f = x(1, 0).pow(3) - Poly(1, Scalar(2));
  auto triv = ConnectionModule::trivial(spec, 1);
  CHECK(module_apply(triv, 0, {f}) == PolyVector{derivation(f, 0, *spec)});

  Poly a = x(1, 0) + Poly(1, Scalar(7));
  auto mod = rank_one(spec, {a});
  CHECK(module_apply(mod, 0, {Poly(1, Scalar(1))}) == PolyVector{a});
  CHECK(module_apply(mod, 0, {f}) == PolyVector{derivation(f, 0, *spec) + sigma_apply(f, 0, *spec) * a});

  CHECK_THROWS_AS(module_apply(mod, 0, {f, f}), DimensionMismatchError);
  CHECK_THROWS_AS(ConnectionModule(spec, 2, {PolyMatrix{{a}}}), DimensionMismatchError);
}

TEST_CASE("integrability fixtures") {
  auto spec = testsupport::fixture_spec(FixtureKind::kQ, 2);
  CHECK(integrability_check(ConnectionModule::trivial(spec, 2), 4).integrable);

  auto sep = rank_one(spec, {Poly(2), x(2, 1) * x(2, 1) - Poly(2, Scalar(1))});
  CHECK(rank_one_integrable(sep));
  CHECK(integrability_check(sep, 6).integrable);

  auto bad = rank_one(spec, {x(2, 1), Poly(2)});
  CHECK_FALSE(rank_one_integrable(bad));
  auto report = integrability_check(bad, 6);
  CHECK_FALSE(report.integrable);
  REQUIRE(report.witness.has_value());
  CHECK(report.witness->var_i != report.witness->var_j);
  CHECK_THROWS_AS(certify_integrable(bad, 6), NonIntegrableError);
  CHECK_THROWS_AS(de_rham_dims(bad, 4), NonIntegrableError);

  CHECK_FALSE(sep.integrable());
  CHECK(certify_integrable(sep, 4).integrable());
}

TEST_CASE("closed form agrees with the commutation check on rank one") {
  Rng rng(41);
  for (auto kind : {FixtureKind::kQ, FixtureKind::kShift}) {
    auto spec = testsupport::fixture_spec(kind, 2);
    for (int t = 0; t < 30; ++t) {
      ConnectionModule mod = rng.coin()
          ? rank_one(spec, {univariate(rng, 2, 0, 2), univariate(rng, 2, 1, 2)})
          : rank_one(spec, {rng.integral_poly(2, 2, 2), rng.integral_poly(2, 2, 2)});
      CHECK(rank_one_integrable(mod) == integrability_check(mod, 4).integrable);
    }
  }
}

TEST_CASE("de Rham fixtures") {
  auto q1 = testsupport::fixture_spec(FixtureKind::kQ, 1);
  auto r = de_rham_dims(ConnectionModule::trivial(q1, 1), 12);
  REQUIRE(r.degrees.size() == 2);
  CHECK(r.degrees[0].cohomology == 1);
  CHECK(r.degrees[1].cohomology == 0);
  CHECK(r.nabla_squared_zero);

  for (auto kind : {FixtureKind::kQ, FixtureKind::kShift}) {
    auto spec = testsupport::fixture_spec(kind, 2);
    for (unsigned D : {2u, 5u, 8u}) {
      auto r2 = de_rham_dims(ConnectionModule::trivial(spec, 1), D);
      REQUIRE(r2.degrees.size() == 3);
      CHECK(r2.degrees[0].cohomology == 1);
      CHECK(r2.nabla_squared_zero);
    }
  }

  auto empty = de_rham_dims(ConnectionModule::trivial(q1, 0), 6);
  for (const auto& deg : empty.degrees) {
    CHECK(deg.domain_dim == 0);
    CHECK(deg.kernel == 0);
    CHECK(deg.image_rank == 0);
    CHECK(deg.cohomology == 0);
  }
}

TEST_CASE("de Rham ranks are consistent") {
  for (const auto& mod : integrable_fixtures()) {
    auto r = de_rham_dims(mod, 5);
    CHECK(r.nabla_squared_zero);
    std::size_t previous_image = 0;
    for (const auto& deg : r.degrees) {
      CHECK(deg.kernel + deg.image_rank == deg.domain_dim);
      CHECK(deg.cohomology == deg.kernel - previous_image);
      previous_image = deg.image_rank;
    }
  }
}

TEST_CASE("nabla squares to zero on integrable fixtures") {
  Rng rng(42);
  for (const auto& mod : integrable_fixtures()) {
    const unsigned d = static_cast<unsigned>(mod.spec()->dim());
    for (unsigned n = 0; n + 1 < d + 1; ++n) {
      for (int t = 0; t < 5; ++t) {
        ModuleForm f = random_form(rng, mod, n);
        CHECK(form_is_zero(de_rham_differential(mod, n + 1, de_rham_differential(mod, n, f))));
      }
    }
  }
}

TEST_CASE("nabla squared detects the non-integrable fixture") {
  auto spec = testsupport::fixture_spec(FixtureKind::kQ, 2);
  auto bad = rank_one(spec, {x(2, 1), Poly(2)});
  ModuleForm f{{0u, PolyVector{Poly(2, Scalar(1))}}};
  CHECK_FALSE(form_is_zero(de_rham_differential(bad, 1, de_rham_differential(bad, 0, f))));
}

TEST_CASE("connection and derivation action dictionary") {
  Rng rng(43);
  for (auto kind : {FixtureKind::kQ, FixtureKind::kShift, FixtureKind::kMahler}) {
    auto spec = testsupport::fixture_spec(kind, 2);
    for (int t = 0; t < 20; ++t) {
      auto mod = rank_one(spec, {rng.poly(2, 3), rng.poly(2, 3)});
      CHECK(connection_from_action(spec, 1, derivation_action(mod)) == mod);
    }
    for (int t = 0; t < 5; ++t) {
      std::vector<PolyMatrix> ms;
      for (int i = 0; i < 2; ++i) {
        ms.push_back({{rng.poly(2, 2), rng.poly(2, 2)}, {rng.poly(2, 2), rng.poly(2, 2)}});
      }
      ConnectionModule mod(spec, 2, ms);
      CHECK(connection_from_action(spec, 2, derivation_action(mod)) == mod);
    }
  }
}

int main(int argc, char** argv) {
  testsupport::announce_seed("test_connection");
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
