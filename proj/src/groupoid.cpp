#include "grpd/groupoid.hpp"

#include <Eigen/SVD>

namespace grpd {

ResidualReport check_groupoid_axioms(const LieGroupoid& G, int n_samples,
                                     std::uint64_t seed) {
  if (!G.sample_object || !G.sample_arrow || !G.sample_pair || !G.sample_triple)
    throw config_error("groupoid is missing a sampler");

  Rng rng(seed);
  ResidualReport rep;
  rep.add("s_unit", 0.0);
  rep.add("t_unit", 0.0);
  rep.add("s_compose", 0.0);
  rep.add("t_compose", 0.0);
  rep.add("associativity", 0.0);
  rep.add("left_inverse", 0.0);
  rep.add("right_inverse", 0.0);
  rep.add("ds_min_singular_value", std::numeric_limits<double>::infinity(),
          /*higher_is_better=*/true);

  auto& min_sv = rep.entries.back().value;

  for (int k = 0; k < n_samples; ++k) {
    const Vec x = G.sample_object(rng);
    rep.track("s_unit", (G.s(G.e(x)) - x).norm());
    rep.track("t_unit", (G.t(G.e(x)) - x).norm());

    const Vec y = G.sample_arrow(rng);
    rep.track("left_inverse", (G.compose(G.i(y), y) - G.e(G.s(y))).norm());
    rep.track("right_inverse", (G.compose(y, G.i(y)) - G.e(G.t(y))).norm());

    Mat ds = jacobian(G.s, y);
    if (ds.rows() > 0) {
      Eigen::JacobiSVD<Mat> svd(ds);
      const auto& sv = svd.singularValues();
      min_sv = std::min(min_sv, sv[sv.size() - 1]);
    }

    auto [z, yp] = G.sample_pair(rng);
    const Vec zy = G.compose(z, yp);
    rep.track("s_compose", (G.s(zy) - G.s(yp)).norm());
    rep.track("t_compose", (G.t(zy) - G.t(z)).norm());

    auto [w, z2, y2] = G.sample_triple(rng);
    rep.track("associativity",
              (G.compose(G.compose(w, z2), y2) - G.compose(w, G.compose(z2, y2))).norm());
  }
  return rep;
}

Vec dm_compose(const LieGroupoid& G, const Vec& z, const Vec& w_z,
               const Vec& y, const Vec& w_y, double pair_tol) {
  if ((G.t(y) - G.s(z)).norm() > pair_tol)
    throw contract_error("dm_compose: pair is not composable");
  if ((jacobian(G.t, y) * w_y - jacobian(G.s, z) * w_z).norm() > 1e-6)
    throw contract_error("dm_compose: tangent pair is not composable");
  Vec zy(2 * G.dim_arr);
  zy << z, y;
  Vec w(2 * G.dim_arr);
  w << w_z, w_y;
  return jacobian(G.m, zy) * w;
}

ResidualReport check_morphism(const GroupoidMorphism& phi, int n_samples,
                              std::uint64_t seed) {
  const auto& X = phi.source;
  const auto& Y = phi.target;
  Rng rng(seed);
  ResidualReport rep;
  rep.add("source_square", 0.0);
  rep.add("target_square", 0.0);
  rep.add("multiplication_square", 0.0);
  rep.add("unit_square", 0.0);

  for (int k = 0; k < n_samples; ++k) {
    const Vec y = X.sample_arrow(rng);
    rep.track("source_square", (phi.phi0(X.s(y)) - Y.s(phi.phi1(y))).norm());
    rep.track("target_square", (phi.phi0(X.t(y)) - Y.t(phi.phi1(y))).norm());

    const Vec x = X.sample_object(rng);
    rep.track("unit_square", (phi.phi1(X.e(x)) - Y.e(phi.phi0(x))).norm());

    auto [z, yp] = X.sample_pair(rng);
    rep.track("multiplication_square",
              (phi.phi1(X.compose(z, yp)) - Y.compose(phi.phi1(z), phi.phi1(yp))).norm());
  }
  return rep;
}

ResidualReport check_morita(const GroupoidMorphism& phi, int n_samples,
                            std::uint64_t seed) {
  const auto& X = phi.source;
  const auto& Y = phi.target;
  Rng rng(seed);
  ResidualReport rep;

  const int expected_arr = Y.dim_arr + 2 * X.dim_obj - 2 * Y.dim_obj;
  rep.add("cartesian_dim_defect",
          std::abs(static_cast<double>(X.dim_arr - expected_arr)));

  double phi0_sv = std::numeric_limits<double>::infinity();
  double cart_sv = std::numeric_limits<double>::infinity();

  for (int k = 0; k < n_samples; ++k) {
    const Vec x = X.sample_object(rng);
    Mat J0 = jacobian(phi.phi0, x);
    if (J0.rows() > 0) {
      Eigen::JacobiSVD<Mat> svd0(J0);
      const auto& sv0 = svd0.singularValues();
      phi0_sv = std::min(phi0_sv, sv0[sv0.size() - 1]);
    }

    // X1 -> Y1 x_(Y0 x Y0) (X0 x X0) must be an immersion for the square
    // to be Cartesian; stack the three differentials and check rank.
    const Vec y = X.sample_arrow(rng);
    Mat J(Y.dim_arr + 2 * X.dim_obj, X.dim_arr);
    J.topRows(Y.dim_arr) = jacobian(phi.phi1, y);
    J.middleRows(Y.dim_arr, X.dim_obj) = jacobian(X.s, y);
    J.bottomRows(X.dim_obj) = jacobian(X.t, y);
    Eigen::JacobiSVD<Mat> svd1(J);
    const auto& sv1 = svd1.singularValues();
    cart_sv = std::min(cart_sv, sv1[sv1.size() - 1]);
  }

  rep.add("phi0_min_singular_value", phi0_sv, /*higher_is_better=*/true);
  rep.add("cartesian_min_singular_value", cart_sv, /*higher_is_better=*/true);
  return rep;
}

}  // namespace grpd
