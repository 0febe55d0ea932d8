#pragma once

// Lie groupoids in a single coordinate patch: structure maps, seeded
// samplers, numerical axiom checks, and composition in the tangent
// groupoid.

#include <functional>
#include <tuple>
#include <utility>

#include "grpd/residual.hpp"
#include "grpd/smooth.hpp"

namespace grpd {

// [X1 => X0] with smooth structure maps. The multiplication map acts on
// the flat concatenation (z, y) of a composable pair, t(y) = s(z).
// Samplers are constructive: each instance parametrizes its own space of
// composable pairs and triples instead of solving fiber equations.
struct LieGroupoid {
  int dim_obj = 0;
  int dim_arr = 0;

  SmoothMap s;  // X1 -> X0
  SmoothMap t;  // X1 -> X0
  SmoothMap m;  // (z, y) concatenated, 2*dim_arr -> dim_arr
  SmoothMap e;  // X0 -> X1
  SmoothMap i;  // X1 -> X1

  std::function<Vec(Rng&)> sample_object;
  std::function<Vec(Rng&)> sample_arrow;
  std::function<std::pair<Vec, Vec>(Rng&)> sample_pair;             // (z, y)
  std::function<std::tuple<Vec, Vec, Vec>(Rng&)> sample_triple;     // (w, z, y)

  Vec compose(const Vec& z, const Vec& y) const {
    Vec zy(2 * dim_arr);
    zy << z, y;
    return m(zy);
  }
};

// Max residuals of all groupoid identities at seeded samples, plus the
// smallest singular value of ds (submersion diagnostic).
ResidualReport check_groupoid_axioms(const LieGroupoid& G, int n_samples,
                                     std::uint64_t seed);

// Composition in the tangent groupoid T[X1 => X0]: the Jacobian of m
// applied to the concatenated pair of tangent vectors.
Vec dm_compose(const LieGroupoid& G, const Vec& z, const Vec& w_z,
               const Vec& y, const Vec& w_y, double pair_tol = 1e-8);

struct GroupoidMorphism {
  LieGroupoid source;
  LieGroupoid target;
  SmoothMap phi0;  // X0 -> Y0
  SmoothMap phi1;  // X1 -> Y1
};

inline GroupoidMorphism identity_morphism(const LieGroupoid& G) {
  return {G, G, identity_map(G.dim_obj), identity_map(G.dim_arr)};
}

// Residuals of the four structure-map compatibility squares.
ResidualReport check_morphism(const GroupoidMorphism& phi, int n_samples,
                              std::uint64_t seed);

// Morita diagnostics: phi0 submersion rank, the arrow-space dimension
// equation, and injectivity of w -> (dphi1 w, ds w, dt w). Surjectivity
// of phi0 is not checked; it is asserted by the example author.
ResidualReport check_morita(const GroupoidMorphism& phi, int n_samples,
                            std::uint64_t seed);

inline bool morita_passed(const ResidualReport& r, double rank_floor = 0.1) {
  return r.get("cartesian_dim_defect") == 0.0 &&
         r.get("phi0_min_singular_value") >= rank_floor &&
         r.get("cartesian_min_singular_value") >= rank_floor;
}

}  // namespace grpd
