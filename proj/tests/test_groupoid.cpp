#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grpd/zoo.hpp"

using namespace grpd;

TEST_CASE("unit and pair groupoids satisfy the axioms") {
  for (const auto& ex : {unit_groupoid(2), pair_groupoid(1), pair_groupoid(2),
                         action_groupoid(), etale_example()}) {
    ResidualReport rep = check_groupoid_axioms(ex.groupoid, 50, 42);
    CHECK_MESSAGE(rep.max_residual() < 1e-9, ex.name);
    CHECK_MESSAGE(rep.get("ds_min_singular_value") > 0.1, ex.name);
  }
}

TEST_CASE("a broken inverse map is caught") {
  LieGroupoid G = pair_groupoid(1).groupoid;
  G.i = identity_map(2);  // no longer swaps source and target
  ResidualReport rep = check_groupoid_axioms(G, 50, 42);
  CHECK(rep.get("left_inverse") > 1e-3);
}

TEST_CASE("dm_compose on the pair groupoid keeps outer slots") {
  LieGroupoid G = pair_groupoid(1).groupoid;
  Vec y(2), z(2), wy(2), wz(2);
  y << 0.5, -1.0;   // arrow -1 -> 0.5
  z << 2.0, 0.5;    // arrow 0.5 -> 2
  wy << 0.3, 0.7;
  wz << -0.2, 0.3;  // tangent-composable: dt(wy) = ds(wz)
  Vec out = dm_compose(G, z, wz, y, wy);
  CHECK(out[0] == doctest::Approx(-0.2));
  CHECK(out[1] == doctest::Approx(0.7));

  Vec z_bad(2);
  z_bad << 2.0, 0.6;  // not composable with y
  CHECK_THROWS_AS(dm_compose(G, z_bad, wz, y, wy), contract_error);
}

TEST_CASE("projection of the transformation groupoid to its unit groupoid is not a morphism") {
  NamedExample act = action_groupoid();
  GroupoidMorphism phi;
  phi.source = act.groupoid;
  phi.target = unit_groupoid(2).groupoid;
  phi.phi0 = identity_map(2);
  phi.phi1 = SmoothMap(3, 2, [](const auto& a) { return a.tail(2).eval(); });
  ResidualReport rep = check_morphism(phi, 50, 42);
  // at phi = pi/2, x = (1, 0): t maps to (0, 1) upstairs but stays (1, 0)
  CHECK(rep.get("target_square") > 0.1);
  CHECK(rep.get("source_square") < 1e-12);
}

TEST_CASE("morphism and Morita fixtures behave as tabled") {
  for (const auto& m : zoo_morphisms()) {
    ResidualReport sq = check_morphism(m.phi, 50, 42);
    CHECK_MESSAGE((sq.max_residual() < 1e-9) == m.expect_morphism, m.name);
    ResidualReport mo = check_morita(m.phi, 50, 42);
    CHECK_MESSAGE(morita_passed(mo) == m.expect_morita, m.name);
  }
}

TEST_CASE("identity morphism is Morita") {
  GroupoidMorphism id = identity_morphism(pair_groupoid(2).groupoid);
  CHECK(check_morphism(id, 30, 42).max_residual() < 1e-12);
  CHECK(morita_passed(check_morita(id, 30, 42)));
}
