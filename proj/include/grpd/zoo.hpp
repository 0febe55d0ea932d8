#pragma once

// The example registry: analytically understood instances wired to the
// checking machinery. Every sampler draws from a fixed validity box so
// charts stay honest; expected-fail fixtures are first-class so the
// checks cannot pass vacuously.

#include <map>
#include <optional>

#include "grpd/principal.hpp"

namespace grpd {

struct NamedExample {
  std::string name;
  std::string description;

  LieGroupoid groupoid;
  std::optional<GroupoidConnection> connection;

  std::optional<Form> object_form;      // expected groupoid form
  std::optional<Form> object_form_bad;  // expected to fail the same check

  std::optional<PrincipalGroupoidBundle> bundle;
  std::optional<ConnectionForm> connection_form;
  std::optional<int> chern_weil_degree;
  std::optional<InvariantPolynomial> chern_weil_poly;

  // checks expected to fail, with a one-line rationale; every other
  // applicable check is expected to pass
  std::map<std::string, std::string> expected_fail;

  bool expects_fail(const std::string& check) const {
    return expected_fail.count(check) > 0;
  }
};

struct NamedMorphism {
  std::string name;
  std::string description;
  GroupoidMorphism phi;
  bool expect_morphism = true;
  bool expect_morita = true;

  // optional structures on the target to pull back and re-check
  std::optional<GroupoidConnection> target_connection;
  std::optional<PrincipalGroupoidBundle> target_bundle;
  std::optional<ConnectionForm> target_form;
};

// individual constructors
NamedExample unit_groupoid(int n);
NamedExample etale_example();
NamedExample pair_groupoid(int n);
NamedExample pair_perturbed();
NamedExample action_groupoid();
NamedExample action_noninvariant();
NamedExample action_broken_abelian();
NamedExample vector_bundle_groupoid(bool curved);
NamedExample gauge_groupoid(bool curved);
NamedExample vb_so3_bundle(bool broken);
NamedExample abelian_over_unit(int n);
NamedExample principal_over_unit();
NamedExample so3_untwisted();

// full registries, alphabetical by name
std::vector<NamedExample> zoo();
std::vector<NamedMorphism> zoo_morphisms();

const NamedExample& find_example(const std::vector<NamedExample>& all,
                                 const std::string& name);

}  // namespace grpd
