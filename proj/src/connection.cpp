#include "grpd/connection.hpp"

#include <Eigen/SVD>

namespace grpd {

SubspaceBasis vertical_space(const LieGroupoid& G, const Vec& y) {
  SubspaceBasis K = nullspace(jacobian(G.s, y), kRankTol);
  if (K.rank() != G.dim_arr - G.dim_obj)
    throw submersion_error("vertical space has unexpected rank");
  return K;
}

Mat horizontal_lift(const GroupoidConnection& C, const Vec& y) {
  SubspaceBasis H{C.base.dim_arr, C.frame(y)};
  return restricted_inverse(jacobian(C.base.s, y), H);
}

TransportMap theta(const GroupoidConnection& C, const Vec& y) {
  return {y, jacobian(C.base.t, y) * horizontal_lift(C, y)};
}

ResidualReport check_unit_axiom(const GroupoidConnection& C, int n_samples,
                                std::uint64_t seed) {
  const auto& G = C.base;
  Rng rng(seed);
  ResidualReport rep;
  rep.add("unit_axiom", 0.0);
  for (int k = 0; k < n_samples; ++k) {
    const Vec x = G.sample_object(rng);
    const Vec ex = G.e(x);
    SubspaceBasis de_image{G.dim_arr, jacobian(G.e, x)};
    SubspaceBasis H{G.dim_arr, C.frame(ex)};
    rep.track("unit_axiom", subspace_equal(de_image, H));
  }
  return rep;
}

ResidualReport check_composition_axiom(const GroupoidConnection& C, int n_pairs,
                                       std::uint64_t seed) {
  const auto& G = C.base;
  Rng rng(seed);
  ResidualReport rep;
  rep.add("composition_axiom", 0.0);
  for (int k = 0; k < n_pairs; ++k) {
    auto [z, y] = G.sample_pair(rng);
    const Mat th_m = theta(C, G.compose(z, y)).theta;
    const Mat th_z = theta(C, z).theta;
    const Mat th_y = theta(C, y).theta;
    rep.track("composition_axiom", (th_m - th_z * th_y).norm());
  }
  return rep;
}

Obstruction obstruction_K(const GroupoidConnection& C, const Vec& z,
                          const Vec& y, const Vec& v) {
  const auto& G = C.base;
  if ((G.t(y) - G.s(z)).norm() > 1e-8)
    throw contract_error("obstruction_K: pair is not composable");

  const Vec zy = G.compose(z, y);
  const Mat lift_y = horizontal_lift(C, y);
  const Mat lift_z = horizontal_lift(C, z);
  const Mat lift_zy = horizontal_lift(C, zy);
  const Mat th_y = jacobian(G.t, y) * lift_y;

  const Vec w_y = lift_y * v;
  const Vec w_z = lift_z * (th_y * v);
  const Vec composed = dm_compose(G, z, w_z, y, w_y);

  Obstruction out;
  out.K = lift_zy * v - composed;
  out.dt_K_norm = (jacobian(G.t, zy) * out.K).norm();
  return out;
}

ResidualReport check_functor_property(const GroupoidConnection& C, int n_pairs,
                                      std::uint64_t seed) {
  const auto& G = C.base;
  Rng rng(seed);
  ResidualReport rep;
  rep.add("obstruction_norm", 0.0);
  rep.add("dt_obstruction_norm", 0.0);
  const int n0 = G.dim_obj;
  for (int k = 0; k < n_pairs; ++k) {
    auto [z, y] = G.sample_pair(rng);
    // +-coordinate directions span T_{s(y)}X0; random ones guard indexing.
    std::vector<Vec> dirs;
    for (int j = 0; j < n0; ++j) {
      dirs.push_back(Vec::Unit(n0, j));
      dirs.push_back(-Vec::Unit(n0, j));
    }
    for (int r = 0; r < 3; ++r) dirs.push_back(rng.sphere(n0));
    for (const Vec& v : dirs) {
      Obstruction ob = obstruction_K(C, z, y, v);
      rep.track("obstruction_norm", ob.K.norm());
      rep.track("dt_obstruction_norm", ob.dt_K_norm);
    }
  }
  return rep;
}

ResidualReport check_integrable(const GroupoidConnection& C, int n_samples,
                                std::uint64_t seed) {
  const auto& G = C.base;
  Rng rng(seed);
  ResidualReport rep;
  rep.add("involutivity", 0.0);

  std::vector<VectorField> cols;
  for (int j = 0; j < G.dim_obj; ++j) {
    MatrixField frame = C.frame;
    cols.emplace_back(G.dim_arr, [frame, j](const auto& p) {
      return frame(p).col(j).eval();
    });
  }

  for (int k = 0; k < n_samples; ++k) {
    const Vec y = G.sample_arrow(rng);
    Mat H = C.frame(y);
    Mat Q = detail::orthonormalize(H);
    Mat offH = Mat::Identity(G.dim_arr, G.dim_arr) - Q * Q.transpose();
    for (int a = 0; a < G.dim_obj; ++a)
      for (int b = a + 1; b < G.dim_obj; ++b)
        rep.track("involutivity", (offH * lie_bracket(cols[a], cols[b], y)).norm());
  }
  return rep;
}

ResidualReport check_transversal(const GroupoidConnection& C, int n_samples,
                                 std::uint64_t seed) {
  const auto& G = C.base;
  Rng rng(seed);
  ResidualReport rep;
  double min_sv = std::numeric_limits<double>::infinity();
  double max_cond = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    const Vec y = G.sample_arrow(rng);
    SubspaceBasis K = vertical_space(G, y);
    Mat stacked(G.dim_arr, K.rank() + G.dim_obj);
    stacked << K.basis, C.frame(y);
    Eigen::JacobiSVD<Mat> svd(stacked);
    const auto& sv = svd.singularValues();
    min_sv = std::min(min_sv, sv[sv.size() - 1]);
    max_cond = std::max(max_cond, sv[0] / sv[sv.size() - 1]);
  }
  rep.add("direct_sum_min_singular_value", min_sv, /*higher_is_better=*/true);
  rep.add("direct_sum_condition_number", max_cond);
  return rep;
}

GroupoidConnection pullback_connection(const GroupoidMorphism& phi,
                                       const GroupoidConnection& C_target) {
  const LieGroupoid X = phi.source;
  const LieGroupoid Y = phi.target;
  const MatrixField target_frame = C_target.frame;
  const SmoothMap phi0 = phi.phi0;
  const SmoothMap phi1 = phi.phi1;
  const SmoothMap sX = X.s, tX = X.t;
  const int n_arr = X.dim_arr;
  const int n_obj = X.dim_obj;

  auto frame_at = [=](const Vec& y) -> Mat {
    const Mat dphi1 = jacobian(phi1, y);
    const Mat Hy = target_frame(phi1(y));
    Mat offH;
    if (Hy.cols() > 0) {
      Mat Q = detail::orthonormalize(Hy);
      offH = Mat::Identity(Y.dim_arr, Y.dim_arr) - Q * Q.transpose();
    } else {
      offH = Mat::Identity(Y.dim_arr, Y.dim_arr);
    }

    // ker(dphi0) components of ds and dt must move together.
    SubspaceBasis V0 = nullspace(jacobian(phi0, sX(y)), kRankTol);
    Mat rows(Y.dim_arr + V0.rank(), n_arr);
    rows.topRows(Y.dim_arr) = offH * dphi1;
    if (V0.rank() > 0)
      rows.bottomRows(V0.rank()) =
          V0.basis.transpose() * (jacobian(tX, y) - jacobian(sX, y));

    SubspaceBasis H = nullspace(rows, kRankTol);
    if (H.rank() != n_obj)
      throw pullback_degenerate_error("pulled-back distribution has rank " +
                                      std::to_string(H.rank()) + ", expected " +
                                      std::to_string(n_obj));
    return H.basis;
  };

  GroupoidConnection out;
  out.base = X;
  out.frame = MatrixField::pointwise(n_arr, n_arr, n_obj, frame_at);
  return out;
}

namespace {

// Shared builder for [X1 x_s TX0 => TX0]-type groupoids. keep_source
// selects whether the composite carries the source-slot or target-slot
// vector.
LieGroupoid tangent_slot_groupoid(const GroupoidConnection& C, bool s_model) {
  const LieGroupoid G = C.base;
  const GroupoidConnection Cc = C;
  const int n0 = G.dim_obj;
  const int n1 = G.dim_arr;

  LieGroupoid out;
  out.dim_obj = 2 * n0;
  out.dim_arr = n1 + n0;

  auto split_arrow = [n1, n0](const auto& a) {
    return std::pair{a.head(n1).eval(), a.tail(n0).eval()};
  };

  if (s_model) {
    out.s = SmoothMap(n1 + n0, 2 * n0, [=](const auto& a) {
      auto [g, v] = split_arrow(a);
      auto x = G.s(g);
      std::decay_t<decltype(a)> o(2 * n0);
      o << x, v;
      return o;
    });
    out.t = SmoothMap::two_level(n1 + n0, 2 * n0, [=](const auto& a) {
      auto [g, v] = split_arrow(a);
      auto x = G.t(g);
      auto tv = (theta_jet(Cc, g) * v).eval();
      std::decay_t<decltype(a)> o(2 * n0);
      o << x, tv;
      return o;
    });
    out.m = SmoothMap(2 * (n1 + n0), n1 + n0, [=](const auto& zy) {
      auto z = zy.head(n1).eval();
      auto vy = zy.tail(n0).eval();
      auto y = zy.segment(n1 + n0, n1).eval();
      auto gg = G.m((std::decay_t<decltype(zy)>(2 * n1) << z, y).finished());
      std::decay_t<decltype(zy)> o(n1 + n0);
      o << gg, vy;  // composite keeps the source-slot vector
      return o;
    });
    out.i = SmoothMap::two_level(n1 + n0, n1 + n0, [=](const auto& a) {
      auto [g, v] = split_arrow(a);
      auto ig = G.i(g);
      auto tv = (theta_jet(Cc, g) * v).eval();
      std::decay_t<decltype(a)> o(n1 + n0);
      o << ig, tv;
      return o;
    });
  } else {
    out.s = SmoothMap::two_level(n1 + n0, 2 * n0, [=](const auto& a) {
      auto [g, u] = split_arrow(a);
      auto x = G.s(g);
      auto bv = (theta_jet(Cc, G.i(g)) * u).eval();
      std::decay_t<decltype(a)> o(2 * n0);
      o << x, bv;
      return o;
    });
    out.t = SmoothMap(n1 + n0, 2 * n0, [=](const auto& a) {
      auto [g, u] = split_arrow(a);
      auto x = G.t(g);
      std::decay_t<decltype(a)> o(2 * n0);
      o << x, u;
      return o;
    });
    out.m = SmoothMap(2 * (n1 + n0), n1 + n0, [=](const auto& zy) {
      auto z = zy.head(n1).eval();
      auto uz = zy.segment(n1, n0).eval();
      auto y = zy.segment(n1 + n0, n1).eval();
      auto gg = G.m((std::decay_t<decltype(zy)>(2 * n1) << z, y).finished());
      std::decay_t<decltype(zy)> o(n1 + n0);
      o << gg, uz;  // composite keeps the target-slot vector
      return o;
    });
    out.i = SmoothMap::two_level(n1 + n0, n1 + n0, [=](const auto& a) {
      auto [g, u] = split_arrow(a);
      auto ig = G.i(g);
      // inverse carries the vector back: u' = theta_{i(g)} u
      auto bv = (theta_jet(Cc, ig) * u).eval();
      std::decay_t<decltype(a)> o(n1 + n0);
      o << ig, bv;
      return o;
    });
  }

  out.e = SmoothMap(2 * n0, n1 + n0, [=](const auto& xv) {
    auto x = xv.head(n0).eval();
    auto v = xv.tail(n0).eval();
    auto ex = G.e(x);
    std::decay_t<decltype(xv)> o(n1 + n0);
    o << ex, v;
    return o;
  });

  auto rand_vec = [n0](Rng& rng) {
    Vec v(n0);
    for (int j = 0; j < n0; ++j) v[j] = rng.uniform(-1.0, 1.0);
    return v;
  };
  out.sample_object = [=](Rng& rng) {
    Vec o(2 * n0);
    o << G.sample_object(rng), rand_vec(rng);
    return o;
  };
  out.sample_arrow = [=](Rng& rng) {
    Vec a(n1 + n0);
    a << G.sample_arrow(rng), rand_vec(rng);
    return a;
  };
  out.sample_pair = [=](Rng& rng) {
    auto [z, y] = G.sample_pair(rng);
    Vec az(n1 + n0), ay(n1 + n0);
    if (s_model) {
      Vec v1 = rand_vec(rng);
      ay << y, v1;
      az << z, (theta(Cc, y).theta * v1).eval();
    } else {
      Vec u1 = rand_vec(rng);  // in T_{t(y)}X0
      ay << y, u1;
      az << z, (theta(Cc, z).theta * u1).eval();
    }
    return std::pair{az, ay};
  };
  out.sample_triple = [=](Rng& rng) {
    auto [w, z, y] = G.sample_triple(rng);
    Vec aw(n1 + n0), az(n1 + n0), ay(n1 + n0);
    if (s_model) {
      Vec v1 = rand_vec(rng);
      Vec vz = theta(Cc, y).theta * v1;
      ay << y, v1;
      az << z, vz;
      aw << w, (theta(Cc, z).theta * vz).eval();
    } else {
      Vec u1 = rand_vec(rng);
      Vec uz = theta(Cc, z).theta * u1;
      ay << y, u1;
      az << z, uz;
      aw << w, (theta(Cc, w).theta * uz).eval();
    }
    return std::tuple{aw, az, ay};
  };
  return out;
}

}  // namespace

LieGroupoid transport_groupoid(const GroupoidConnection& C) {
  return tangent_slot_groupoid(C, /*s_model=*/true);
}

LieGroupoid s_star_groupoid(const GroupoidConnection& C) {
  return tangent_slot_groupoid(C, /*s_model=*/true);
}

LieGroupoid t_star_groupoid(const GroupoidConnection& C) {
  return tangent_slot_groupoid(C, /*s_model=*/false);
}

ResidualReport theta_iso_check(const GroupoidConnection& C, int n_samples,
                               std::uint64_t seed) {
  const GroupoidConnection Cc = C;
  const int n0 = C.base.dim_obj;
  const int n1 = C.base.dim_arr;

  GroupoidMorphism iso;
  iso.source = s_star_groupoid(C);
  iso.target = t_star_groupoid(C);
  iso.phi0 = identity_map(2 * n0);
  iso.phi1 = SmoothMap::two_level(n1 + n0, n1 + n0, [=](const auto& a) {
    auto g = a.head(n1).eval();
    auto v = a.tail(n0).eval();
    auto tv = (theta_jet(Cc, g) * v).eval();
    std::decay_t<decltype(a)> o(n1 + n0);
    o << g, tv;
    return o;
  });

  ResidualReport rep = check_morphism(iso, n_samples, seed);

  Rng rng(derive_seed(seed, "theta_invertible"));
  double min_sv = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_samples; ++k) {
    const Vec y = C.base.sample_arrow(rng);
    Eigen::JacobiSVD<Mat> svd(theta(C, y).theta);
    const auto& sv = svd.singularValues();
    if (sv.size() > 0) min_sv = std::min(min_sv, sv[sv.size() - 1]);
  }
  rep.add("theta_min_singular_value", min_sv, /*higher_is_better=*/true);
  return rep;
}

}  // namespace grpd
