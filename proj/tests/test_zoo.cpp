#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "grpd/runner.hpp"

using namespace grpd;

TEST_CASE("registry is sorted, unique, and described") {
  auto all = zoo();
  CHECK(all.size() >= 15);
  std::set<std::string> names;
  std::string prev;
  for (const auto& ex : all) {
    CHECK(ex.name > prev);
    prev = ex.name;
    names.insert(ex.name);
    CHECK_FALSE(ex.description.empty());
    CHECK(ex.groupoid.dim_obj >= 1);
    CHECK(ex.groupoid.sample_pair != nullptr);
  }
  CHECK(names.size() == all.size());
  CHECK_NOTHROW(find_example(all, "action"));
  CHECK_THROWS_AS(find_example(all, "no_such_example"), config_error);
}

TEST_CASE("failing fixtures carry rationales for known checks") {
  const std::set<std::string> known = {
      "jacobian_ad_vs_fd", "groupoid_axioms", "connection_unit_axiom",
      "connection_composition_axiom", "functor_property", "integrable",
      "transversal", "transport_groupoid", "s_star_groupoid",
      "t_star_groupoid", "theta_isomorphism", "groupoid_form", "dclosure",
      "groupoid_form_negative", "bundle_action", "connection_form",
      "compatibility", "atiyah_round_trip", "curvature_two_route",
      "chern_weil"};
  for (const auto& ex : zoo())
    for (const auto& [check, why] : ex.expected_fail) {
      std::string where = ex.name + "/" + check;
      CHECK_MESSAGE(known.count(check) == 1, where);
      CHECK_FALSE(why.empty());
    }
}

TEST_CASE("expected tables match outcomes at the default seed") {
  RunConfig cfg;
  cfg.n_samples = 40;
  Report rep = run(cfg);
  for (const auto& r : rep.records) {
    std::string where = r.example + "/" + r.check;
    CHECK_MESSAGE(r.match(), where);
  }
  CHECK(rep.all_match());
}

TEST_CASE("samplers stay inside their validity boxes") {
  auto ex = find_example(zoo(), "vb_so3_bundle");
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    Vec a = ex.groupoid.sample_arrow(rng);
    CHECK(std::abs(a[2]) <= 0.7);  // rotation chart margin
    Vec g = ex.bundle->sample_group(rng);
    CHECK(g.cwiseAbs().maxCoeff() <= 0.5);
  }
}
