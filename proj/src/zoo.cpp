#include "grpd/zoo.hpp"

#include <algorithm>

namespace grpd {

namespace {

Vec box(Rng& rng, int n, double lo, double hi) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

// x1 dx2 on R^n
Form x1dx2_form(int n) {
  return Form::make(n, 1, 1, [](const auto& p, const Idx& I) {
    using S = typename std::decay_t<decltype(p)>::Scalar;
    VecX<S> v(1);
    v[0] = I[0] == 1 ? p[0] : S(0);
    return v;
  });
}

// x1 dx2 - x2 dx1 on R^2
Form angular_form() {
  return Form::make(2, 1, 1, [](const auto& p, const Idx& I) {
    using S = typename std::decay_t<decltype(p)>::Scalar;
    VecX<S> v(1);
    v[0] = I[0] == 0 ? S(-p[1]) : S(p[0]);
    return v;
  });
}

Form dx1_form(int n) {
  return Form::make(n, 1, 1, [](const auto& p, const Idx& I) {
    using S = typename std::decay_t<decltype(p)>::Scalar;
    VecX<S> v(1);
    v[0] = I[0] == 0 ? S(1) : S(0);
    return v;
  });
}

LieGroupoid make_unit(int n) {
  LieGroupoid G;
  G.dim_obj = n;
  G.dim_arr = n;
  G.s = identity_map(n);
  G.t = identity_map(n);
  G.e = identity_map(n);
  G.i = identity_map(n);
  G.m = SmoothMap(2 * n, n, [n](const auto& a) { return a.tail(n).eval(); });
  G.sample_object = [n](Rng& rng) { return box(rng, n, -1.5, 1.5); };
  G.sample_arrow = G.sample_object;
  G.sample_pair = [n](Rng& rng) {
    Vec x = box(rng, n, -1.5, 1.5);
    return std::pair{x, x};
  };
  G.sample_triple = [n](Rng& rng) {
    Vec x = box(rng, n, -1.5, 1.5);
    return std::tuple{x, x, x};
  };
  return G;
}

LieGroupoid make_pair(int n) {
  LieGroupoid G;
  G.dim_obj = n;
  G.dim_arr = 2 * n;
  G.s = SmoothMap(2 * n, n, [n](const auto& a) { return a.tail(n).eval(); });
  G.t = SmoothMap(2 * n, n, [n](const auto& a) { return a.head(n).eval(); });
  G.e = SmoothMap(n, 2 * n, [n](const auto& x) {
    std::decay_t<decltype(x.eval())> o(2 * n);
    o << x, x;
    return o;
  });
  G.i = SmoothMap(2 * n, 2 * n, [n](const auto& a) {
    std::decay_t<decltype(a.eval())> o(2 * n);
    o << a.tail(n), a.head(n);
    return o;
  });
  G.m = SmoothMap(4 * n, 2 * n, [n](const auto& zy) {
    std::decay_t<decltype(zy.eval())> o(2 * n);
    o << zy.head(n), zy.tail(n);
    return o;
  });
  G.sample_object = [n](Rng& rng) { return box(rng, n, -1.5, 1.5); };
  G.sample_arrow = [n](Rng& rng) { return box(rng, 2 * n, -1.5, 1.5); };
  G.sample_pair = [n](Rng& rng) {
    Vec y = box(rng, 2 * n, -1.5, 1.5);
    Vec z(2 * n);
    z << box(rng, n, -1.5, 1.5), y.head(n);
    return std::pair{z, y};
  };
  G.sample_triple = [n](Rng& rng) {
    Vec y = box(rng, 2 * n, -1.5, 1.5);
    Vec z(2 * n), w(2 * n);
    z << box(rng, n, -1.5, 1.5), y.head(n);
    w << box(rng, n, -1.5, 1.5), z.head(n);
    return std::tuple{w, z, y};
  };
  return G;
}

// arrows (phi, x) with s = x, t = R_{k phi} x
LieGroupoid make_action(int speed) {
  LieGroupoid G;
  G.dim_obj = 2;
  G.dim_arr = 3;
  const double k = speed;
  G.s = SmoothMap(3, 2, [](const auto& a) { return a.tail(2).eval(); });
  G.t = SmoothMap(3, 2, [k](const auto& a) {
    using S = typename std::decay_t<decltype(a)>::Scalar;
    S c = cos(S(k) * a[0]), sn = sin(S(k) * a[0]);
    VecX<S> o(2);
    o[0] = c * a[1] - sn * a[2];
    o[1] = sn * a[1] + c * a[2];
    return o;
  });
  G.e = SmoothMap(2, 3, [](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    VecX<S> o(3);
    o << S(0), x[0], x[1];
    return o;
  });
  G.i = SmoothMap(3, 3, [k](const auto& a) {
    using S = typename std::decay_t<decltype(a)>::Scalar;
    S c = cos(S(k) * a[0]), sn = sin(S(k) * a[0]);
    VecX<S> o(3);
    o[0] = -a[0];
    o[1] = c * a[1] - sn * a[2];
    o[2] = sn * a[1] + c * a[2];
    return o;
  });
  G.m = SmoothMap(6, 3, [](const auto& zy) {
    using S = typename std::decay_t<decltype(zy)>::Scalar;
    VecX<S> o(3);
    o[0] = zy[0] + zy[3];
    o[1] = zy[4];
    o[2] = zy[5];
    return o;
  });
  G.sample_object = [](Rng& rng) { return box(rng, 2, 1.0, 2.0); };
  G.sample_arrow = [](Rng& rng) {
    Vec a(3);
    a[0] = rng.uniform(-1.5, 1.5);
    a.tail(2) = box(rng, 2, 1.0, 2.0);
    return a;
  };
  auto rot = [k](double phi, const Vec& x) {
    Vec y(2);
    const double c = std::cos(k * phi), sn = std::sin(k * phi);
    y[0] = c * x[0] - sn * x[1];
    y[1] = sn * x[0] + c * x[1];
    return y;
  };
  G.sample_pair = [rot](Rng& rng) {
    Vec y(3);
    y[0] = rng.uniform(-1.5, 1.5);
    y.tail(2) = box(rng, 2, 1.0, 2.0);
    Vec z(3);
    z[0] = rng.uniform(-1.5, 1.5);
    z.tail(2) = rot(y[0], y.tail(2));
    return std::pair{z, y};
  };
  G.sample_triple = [rot](Rng& rng) {
    Vec y(3);
    y[0] = rng.uniform(-1.5, 1.5);
    y.tail(2) = box(rng, 2, 1.0, 2.0);
    Vec z(3), w(3);
    z[0] = rng.uniform(-1.5, 1.5);
    z.tail(2) = rot(y[0], y.tail(2));
    w[0] = rng.uniform(-1.5, 1.5);
    w.tail(2) = rot(z[0], z.tail(2));
    return std::tuple{w, z, y};
  };
  return G;
}

// [R^2 x R => R^2]: fiberwise addition over a fixed base point
LieGroupoid make_vb() {
  LieGroupoid G;
  G.dim_obj = 2;
  G.dim_arr = 3;
  G.s = SmoothMap(3, 2, [](const auto& a) { return a.head(2).eval(); });
  G.t = G.s;
  G.e = SmoothMap(2, 3, [](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    VecX<S> o(3);
    o << x[0], x[1], S(0);
    return o;
  });
  G.i = SmoothMap(3, 3, [](const auto& a) {
    using S = typename std::decay_t<decltype(a)>::Scalar;
    VecX<S> o(3);
    o << a[0], a[1], S(-a[2]);
    return o;
  });
  G.m = SmoothMap(6, 3, [](const auto& zy) {
    using S = typename std::decay_t<decltype(zy)>::Scalar;
    VecX<S> o(3);
    o << zy[0], zy[1], zy[2] + zy[5];
    return o;
  });
  G.sample_object = [](Rng& rng) { return box(rng, 2, -1.5, 1.5); };
  G.sample_arrow = [](Rng& rng) {
    Vec a(3);
    a.head(2) = box(rng, 2, -1.5, 1.5);
    a[2] = rng.uniform(0.5, 1.5);
    return a;
  };
  G.sample_pair = [](Rng& rng) {
    Vec x = box(rng, 2, -1.5, 1.5);
    Vec y(3), z(3);
    y << x, rng.uniform(0.5, 1.5);
    z << x, rng.uniform(0.5, 1.5);
    return std::pair{z, y};
  };
  G.sample_triple = [](Rng& rng) {
    Vec x = box(rng, 2, -1.5, 1.5);
    Vec y(3), z(3), w(3);
    y << x, rng.uniform(0.5, 1.5);
    z << x, rng.uniform(0.5, 1.5);
    w << x, rng.uniform(0.5, 1.5);
    return std::tuple{w, z, y};
  };
  return G;
}

// slice chart of (P x P)/SO(2), P = R^2 x SO(2): arrow = (x, psi, y)
LieGroupoid make_gauge() {
  LieGroupoid G;
  G.dim_obj = 2;
  G.dim_arr = 5;
  G.s = SmoothMap(5, 2, [](const auto& a) { return a.tail(2).eval(); });
  G.t = SmoothMap(5, 2, [](const auto& a) { return a.head(2).eval(); });
  G.e = SmoothMap(2, 5, [](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    VecX<S> o(5);
    o << x[0], x[1], S(0), x[0], x[1];
    return o;
  });
  G.i = SmoothMap(5, 5, [](const auto& a) {
    using S = typename std::decay_t<decltype(a)>::Scalar;
    VecX<S> o(5);
    o << a[3], a[4], S(-a[2]), a[0], a[1];
    return o;
  });
  G.m = SmoothMap(10, 5, [](const auto& zy) {
    using S = typename std::decay_t<decltype(zy)>::Scalar;
    VecX<S> o(5);
    o << zy[0], zy[1], zy[2] + zy[7], zy[8], zy[9];
    return o;
  });
  G.sample_object = [](Rng& rng) { return box(rng, 2, -1.5, 1.5); };
  G.sample_arrow = [](Rng& rng) {
    Vec a(5);
    a.head(2) = box(rng, 2, -1.5, 1.5);
    a[2] = rng.uniform(-1.5, 1.5);
    a.tail(2) = box(rng, 2, -1.5, 1.5);
    return a;
  };
  G.sample_pair = [](Rng& rng) {
    Vec y(5), z(5);
    y.head(2) = box(rng, 2, -1.5, 1.5);
    y[2] = rng.uniform(-1.5, 1.5);
    y.tail(2) = box(rng, 2, -1.5, 1.5);
    z.head(2) = box(rng, 2, -1.5, 1.5);
    z[2] = rng.uniform(-1.5, 1.5);
    z.tail(2) = y.head(2);
    return std::pair{z, y};
  };
  G.sample_triple = [](Rng& rng) {
    Vec y(5), z(5), w(5);
    y.head(2) = box(rng, 2, -1.5, 1.5);
    y[2] = rng.uniform(-1.5, 1.5);
    y.tail(2) = box(rng, 2, -1.5, 1.5);
    z.head(2) = box(rng, 2, -1.5, 1.5);
    z[2] = rng.uniform(-1.5, 1.5);
    z.tail(2) = y.head(2);
    w.head(2) = box(rng, 2, -1.5, 1.5);
    w[2] = rng.uniform(-1.5, 1.5);
    w.tail(2) = z.head(2);
    return std::tuple{w, z, y};
  };
  return G;
}

PrincipalGroupoidBundle trivial_bundle_over_unit(int n,
                                                 const MatrixLieGroup& group,
                                                 double group_box) {
  PrincipalGroupoidBundle B;
  B.base = make_unit(n);
  B.group = group;
  const int d = group.dim();
  B.action = SmoothMap(2 * n + d, n + d,
                       [n, d](const auto& a) { return a.tail(n + d).eval(); });
  B.sample_group = [d, group_box](Rng& rng) {
    return box(rng, d, -group_box, group_box);
  };
  return B;
}

}  // namespace

NamedExample unit_groupoid(int n) {
  NamedExample ex;
  ex.name = "unit";
  ex.description = "unit groupoid over R^2; identity arrows only, every check is exact";
  ex.groupoid = make_unit(n);
  ex.connection =
      GroupoidConnection{ex.groupoid, MatrixField::constant(n, Mat::Identity(n, n))};
  if (n >= 2) ex.object_form = x1dx2_form(n);
  return ex;
}

NamedExample etale_example() {
  NamedExample ex;
  ex.name = "etale_flip";
  ex.description =
      "sign flip acting on the line, arrows carry a +-1 branch flag; source is a local diffeomorphism";
  LieGroupoid G;
  G.dim_obj = 1;
  G.dim_arr = 2;  // (g, x), g sampled at +-1
  G.s = SmoothMap(2, 1, [](const auto& a) { return a.tail(1).eval(); });
  G.t = SmoothMap(2, 1, [](const auto& a) {
    using S = typename std::decay_t<decltype(a)>::Scalar;
    VecX<S> o(1);
    o[0] = a[0] * a[1];
    return o;
  });
  G.e = SmoothMap(1, 2, [](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    VecX<S> o(2);
    o << S(1), x[0];
    return o;
  });
  G.i = SmoothMap(2, 2, [](const auto& a) {
    using S = typename std::decay_t<decltype(a)>::Scalar;
    VecX<S> o(2);
    o << a[0], a[0] * a[1];
    return o;
  });
  G.m = SmoothMap(4, 2, [](const auto& zy) {
    using S = typename std::decay_t<decltype(zy)>::Scalar;
    VecX<S> o(2);
    o << zy[0] * zy[2], zy[3];
    return o;
  });
  auto flip = [](Rng& rng) { return rng.pick(2) == 0 ? 1.0 : -1.0; };
  G.sample_object = [](Rng& rng) { return box(rng, 1, -1.5, 1.5); };
  G.sample_arrow = [flip](Rng& rng) {
    Vec a(2);
    a[0] = flip(rng);
    a[1] = rng.uniform(-1.5, 1.5);
    return a;
  };
  G.sample_pair = [flip](Rng& rng) {
    Vec y(2), z(2);
    y[0] = flip(rng);
    y[1] = rng.uniform(-1.5, 1.5);
    z[0] = flip(rng);
    z[1] = y[0] * y[1];
    return std::pair{z, y};
  };
  G.sample_triple = [flip](Rng& rng) {
    Vec y(2), z(2), w(2);
    y[0] = flip(rng);
    y[1] = rng.uniform(-1.5, 1.5);
    z[0] = flip(rng);
    z[1] = y[0] * y[1];
    w[0] = flip(rng);
    w[1] = z[0] * z[1];
    return std::tuple{w, z, y};
  };
  ex.groupoid = G;
  Mat frame(2, 1);
  frame << 0, 1;
  ex.connection = GroupoidConnection{G, MatrixField::constant(2, frame)};
  return ex;
}

NamedExample pair_groupoid(int n) {
  NamedExample ex;
  ex.name = n == 1 ? "pair" : "pair" + std::to_string(n);
  ex.description = "pair groupoid of R^" + std::to_string(n) +
                   " with the diagonal horizontal distribution";
  ex.groupoid = make_pair(n);
  Mat frame(2 * n, n);
  frame << Mat::Identity(n, n), Mat::Identity(n, n);
  ex.connection = GroupoidConnection{ex.groupoid, MatrixField::constant(2 * n, frame)};
  // transport identifies all base points, so invariant forms must have
  // constant coefficients
  ex.object_form = dx1_form(n);
  if (n >= 2) ex.object_form_bad = x1dx2_form(n);
  if (n >= 2)
    ex.expected_fail = {
        {"groupoid_form_negative", "non-constant coefficients are moved by transport"},
    };
  return ex;
}

NamedExample pair_perturbed() {
  NamedExample ex = pair_groupoid(1);
  ex.name = "pair_perturbed";
  ex.description =
      "pair groupoid of R with a source-fiber-dependent frame; transport is no longer multiplicative";
  ex.connection->frame = MatrixField(2, 2, 1, [](const auto& a) {
    using S = typename std::decay_t<decltype(a)>::Scalar;
    MatX<S> M(2, 1);
    M(0, 0) = a[1] * a[1] + S(1);
    M(1, 0) = S(1);
    return M;
  });
  ex.object_form.reset();
  ex.expected_fail = {
      {"connection_unit_axiom", "frame at units differs from the unit-section image"},
      {"connection_composition_axiom", "theta picks up a (b^2+1) factor per arrow"},
      {"functor_property", "lift of a composite differs from the composite of lifts"},
      {"transport_groupoid", "derived structure maps inherit the broken transport"},
      {"s_star_groupoid", "derived structure maps inherit the broken transport"},
      {"t_star_groupoid", "derived structure maps inherit the broken transport"},
      {"theta_isomorphism", "multiplication square fails for non-multiplicative theta"},
  };
  return ex;
}

namespace {

PrincipalGroupoidBundle action_bundle() {
  PrincipalGroupoidBundle B;
  B.base = make_action(1);
  B.group = so2();
  B.action = SmoothMap(3 + 2 + 1, 3, [](const auto& a) {
    using S = typename std::decay_t<decltype(a)>::Scalar;
    S c = cos(a[0]), sn = sin(a[0]);
    VecX<S> o(3);
    o[0] = c * a[3] - sn * a[4];
    o[1] = sn * a[3] + c * a[4];
    o[2] = a[0] + a[5];
    return o;
  });
  B.sample_group = [](Rng& rng) { return box(rng, 1, -1.5, 1.5); };
  return B;
}

// A = -(x1 dx2 - x2 dx1)/|x|^2: rotation invariant and normalized
// against the rotation generator, so MC + A dx is compatible
MatrixField invariant_potential() {
  return MatrixField(2, 1, 2, [](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    S n2 = x[0] * x[0] + x[1] * x[1];
    MatX<S> A(1, 2);
    A(0, 0) = x[1] / n2;
    A(0, 1) = -x[0] / n2;
    return A;
  });
}

}  // namespace

NamedExample action_groupoid() {
  NamedExample ex;
  ex.name = "action";
  ex.description =
      "transformation groupoid of SO(2) acting on the plane, coordinate horizontal frame, "
      "equivariant circle bundle with the invariant connection form";
  ex.groupoid = make_action(1);
  Mat frame(3, 2);
  frame << 0, 0, 1, 0, 0, 1;
  ex.connection = GroupoidConnection{ex.groupoid, MatrixField::constant(3, frame)};
  ex.object_form = angular_form();
  ex.object_form_bad = dx1_form(2);
  ex.bundle = action_bundle();
  ex.connection_form = twisted_form(so2(), invariant_potential());
  ex.chern_weil_degree = 1;
  ex.chern_weil_poly = so2_pairing();
  ex.expected_fail = {
      {"groupoid_form_negative", "dx1 is not rotation invariant"},
  };
  return ex;
}

NamedExample action_noninvariant() {
  NamedExample ex = action_groupoid();
  ex.name = "action_noninvariant";
  ex.description =
      "same equivariant circle bundle with a gauge potential that is not rotation invariant";
  ex.object_form.reset();
  ex.object_form_bad.reset();
  ex.chern_weil_degree.reset();
  ex.chern_weil_poly.reset();
  MatrixField A(2, 1, 2, [](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    S n2 = x[0] * x[0] + x[1] * x[1];
    MatX<S> M(1, 2);
    M(0, 0) = x[1] / n2;
    M(0, 1) = -x[0] / n2 + x[0];  // extra x1 dx2 breaks invariance
    return M;
  });
  ex.connection_form = twisted_form(so2(), A);
  ex.expected_fail = {
      {"compatibility", "the added x1 dx2 term is not rotation invariant"},
  };
  return ex;
}

NamedExample action_broken_abelian() {
  NamedExample ex = action_groupoid();
  ex.name = "action_broken_abelian";
  ex.description =
      "circle bundle acted on from the wrong side; for an abelian group the two orders "
      "coincide, so every check still passes (documented degeneracy)";
  ex.object_form.reset();
  ex.object_form_bad.reset();
  ex.expected_fail.clear();
  return ex;
}

NamedExample vector_bundle_groupoid(bool curved) {
  NamedExample ex;
  ex.name = curved ? "vb_curved" : "vb_flat";
  ex.groupoid = make_vb();
  if (!curved) {
    ex.description =
        "fiber-addition groupoid of a line bundle over the plane, flat linear connection";
    Mat frame(3, 2);
    frame << 1, 0, 0, 1, 0, 0;
    ex.connection = GroupoidConnection{ex.groupoid, MatrixField::constant(3, frame)};
  } else {
    ex.description =
        "fiber-addition groupoid with a curved linear connection; transport is still exact "
        "but the distribution is not involutive";
    ex.connection = GroupoidConnection{
        ex.groupoid, MatrixField(3, 3, 2, [](const auto& p) {
          using S = typename std::decay_t<decltype(p)>::Scalar;
          MatX<S> M = MatX<S>::Zero(3, 2);
          M(0, 0) = S(1);
          M(1, 1) = S(1);
          M(2, 1) = -p[0] * p[2];  // Gamma_2(x) = x1 acting on the fiber
          return M;
        })};
    ex.expected_fail = {
        {"integrable", "bracket of the horizontal fields has fiber component -v"},
    };
  }
  ex.object_form = x1dx2_form(2);
  return ex;
}

NamedExample gauge_groupoid(bool curved) {
  NamedExample ex;
  ex.name = curved ? "gauge_curved" : "gauge_flat";
  ex.groupoid = make_gauge();
  if (!curved) {
    ex.description =
        "gauge groupoid of the trivial circle bundle over the plane in the identity slice, "
        "connection induced from the flat principal connection";
    Mat frame(5, 2);
    frame << 1, 0, 0, 1, 0, 0, 1, 0, 0, 1;
    ex.connection = GroupoidConnection{ex.groupoid, MatrixField::constant(5, frame)};
  } else {
    ex.description =
        "gauge groupoid with the connection induced from A = x1^2 dx2; groupoid-connection "
        "axioms hold exactly while the distribution fails to be involutive";
    ex.connection = GroupoidConnection{
        ex.groupoid, MatrixField(5, 5, 2, [](const auto& p) {
          using S = typename std::decay_t<decltype(p)>::Scalar;
          // A_2(x) = x1^2; frame column j = (e_j, A_j(y) - A_j(x), e_j)
          MatX<S> M = MatX<S>::Zero(5, 2);
          M(0, 0) = S(1);
          M(1, 1) = S(1);
          M(2, 1) = p[3] * p[3] - p[0] * p[0];
          M(3, 0) = S(1);
          M(4, 1) = S(1);
          return M;
        })};
    ex.expected_fail = {
        {"integrable", "bracket has angle component F(y) - F(x) = 2(y1 - x1)"},
    };
  }
  return ex;
}

NamedExample vb_so3_bundle(bool broken) {
  NamedExample ex;
  ex.name = broken ? "vb_so3_bundle_broken" : "vb_so3_bundle";
  ex.groupoid = make_vb();
  // tighter boxes keep all products inside the rotation chart
  ex.groupoid.sample_arrow = [](Rng& rng) {
    Vec a(3);
    a.head(2) = box(rng, 2, -1.5, 1.5);
    a[2] = rng.uniform(-0.7, 0.7);
    return a;
  };
  ex.groupoid.sample_pair = [](Rng& rng) {
    Vec x = box(rng, 2, -1.5, 1.5);
    Vec y(3), z(3);
    y << x, rng.uniform(-0.35, 0.35);
    z << x, rng.uniform(-0.35, 0.35);
    return std::pair{z, y};
  };
  ex.groupoid.sample_triple = [](Rng& rng) {
    Vec x = box(rng, 2, -1.5, 1.5);
    Vec y(3), z(3), w(3);
    y << x, rng.uniform(-0.2, 0.2);
    z << x, rng.uniform(-0.2, 0.2);
    w << x, rng.uniform(-0.2, 0.2);
    return std::tuple{w, z, y};
  };
  Mat frame(3, 2);
  frame << 1, 0, 0, 1, 0, 0;
  ex.connection = GroupoidConnection{ex.groupoid, MatrixField::constant(3, frame)};

  PrincipalGroupoidBundle B;
  B.base = ex.groupoid;
  B.group = so3();
  const MatrixLieGroup G3 = so3();
  B.action = SmoothMap(3 + 2 + 3, 5, [G3, broken](const auto& a) {
    using S = typename std::decay_t<decltype(a)>::Scalar;
    VecX<S> ue3(3);
    ue3 << S(0), S(0), a[2];
    VecX<S> psi = a.tail(3);
    VecX<S> moved = broken ? chart_product<S>(G3, psi, ue3)
                           : chart_product<S>(G3, ue3, psi);
    VecX<S> o(5);
    o << a[3], a[4], moved;
    return o;
  });
  B.sample_group = [](Rng& rng) { return box(rng, 3, -0.5, 0.5); };
  ex.bundle = B;
  ex.connection_form = maurer_cartan_form(so3(), 2);

  if (broken) {
    ex.description =
        "rank-one fiber-addition groupoid acting on a rotation-group bundle from the wrong "
        "side; equivariance fails for the nonabelian group";
    ex.expected_fail = {
        {"bundle_action", "right and left multiplication by exp(u xi3) differ"},
        {"compatibility", "arrows move fibers vertically, no form is compatible"},
    };
  } else {
    ex.description =
        "rank-one fiber-addition groupoid acting on a rotation-group bundle by left "
        "multiplication with exp(u xi3)";
    ex.expected_fail = {
        {"compatibility", "arrows move fibers vertically, no form is compatible"},
    };
  }
  return ex;
}

NamedExample abelian_over_unit(int n) {
  NamedExample ex;
  ex.name = n == 2 ? "abelian_over_unit" : "abelian_over_unit" + std::to_string(n);
  ex.groupoid = make_unit(n);
  ex.connection =
      GroupoidConnection{ex.groupoid, MatrixField::constant(n, Mat::Identity(n, n))};
  ex.bundle = trivial_bundle_over_unit(n, so2(), 1.5);
  MatrixField A(n, 1, n, [n](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    MatX<S> M = MatX<S>::Zero(1, n);
    if (n == 2) {
      M(0, 1) = x[0];  // x1 dx2
    } else {
      M(0, 0) = x[1] * x[2];  // x2 x3 dx1
      M(0, n - 1) = x[0] * x[0];  // x1^2 dxn
    }
    return M;
  });
  ex.connection_form = twisted_form(so2(), A);
  ex.chern_weil_degree = 1;
  ex.chern_weil_poly = so2_pairing();
  ex.description = n == 2
      ? "trivial circle bundle over the unit groupoid of the plane with potential x1 dx2"
      : "trivial circle bundle over the unit groupoid of R^4 with a non-constant curvature";
  return ex;
}

NamedExample principal_over_unit() {
  NamedExample ex;
  ex.name = "principal_over_unit";
  ex.description =
      "trivial rotation-group bundle over the unit groupoid of R^4; ordinary gauge theory, "
      "nonabelian curvature and a degree-4 characteristic form";
  ex.groupoid = make_unit(4);
  ex.connection =
      GroupoidConnection{ex.groupoid, MatrixField::constant(4, Mat::Identity(4, 4))};
  ex.bundle = trivial_bundle_over_unit(4, so3(), 0.8);
  MatrixField A(4, 3, 4, [](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    // A = x1 dx2 xi1 + x2 dx1 xi2 + x3 dx4 xi2
    MatX<S> M = MatX<S>::Zero(3, 4);
    M(0, 1) = x[0];
    M(1, 0) = x[1];
    M(1, 3) = x[2];
    return M;
  });
  ex.connection_form = twisted_form(so3(), A);
  ex.chern_weil_degree = 2;
  ex.chern_weil_poly = invariant_poly(2);
  return ex;
}

NamedExample so3_untwisted() {
  NamedExample ex = principal_over_unit();
  ex.name = "so3_untwisted";
  ex.description =
      "same rotation-group bundle with the gauge potential added without the adjoint twist; "
      "equivariance fails away from the identity";
  MatrixField A(4, 3, 4, [](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    MatX<S> M = MatX<S>::Zero(3, 4);
    M(0, 1) = x[0];
    M(1, 0) = x[1];
    M(1, 3) = x[2];
    return M;
  });
  ex.connection_form = untwisted_form(so3(), A);
  ex.chern_weil_degree.reset();
  ex.chern_weil_poly.reset();
  ex.expected_fail = {
      {"connection_form", "without the adjoint twist the form is not equivariant"},
      {"atiyah_round_trip",
       "the splitting keeps only the equivariant part of the form"},
      {"curvature_two_route",
       "without the twist the bracket term enters the section curvature with "
       "the opposite sign"},
  };
  return ex;
}

std::vector<NamedExample> zoo() {
  std::vector<NamedExample> all;
  all.push_back(abelian_over_unit(2));
  all.push_back(abelian_over_unit(4));
  all.push_back(action_groupoid());
  all.push_back(action_broken_abelian());
  all.push_back(action_noninvariant());
  all.push_back(etale_example());
  all.push_back(gauge_groupoid(true));
  all.push_back(gauge_groupoid(false));
  all.push_back(pair_groupoid(1));
  all.push_back(pair_groupoid(2));
  all.push_back(pair_perturbed());
  all.push_back(principal_over_unit());
  all.push_back(so3_untwisted());
  all.push_back(unit_groupoid(2));
  all.push_back(vector_bundle_groupoid(true));
  all.push_back(vector_bundle_groupoid(false));
  all.push_back(vb_so3_bundle(false));
  all.push_back(vb_so3_bundle(true));
  std::sort(all.begin(), all.end(),
            [](const NamedExample& a, const NamedExample& b) { return a.name < b.name; });
  return all;
}

std::vector<NamedMorphism> zoo_morphisms() {
  std::vector<NamedMorphism> all;

  {
    NamedMorphism m;
    m.name = "identity_action";
    m.description = "identity morphism of the transformation groupoid";
    NamedExample act = action_groupoid();
    m.phi = identity_morphism(act.groupoid);
    m.target_connection = act.connection;
    m.target_bundle = act.bundle;
    m.target_form = act.connection_form;
    all.push_back(m);
  }

  {
    NamedMorphism m;
    m.name = "pair_squash";
    m.description =
        "first-coordinate projection pair(R^2) -> pair(R); surjective submersion with "
        "Cartesian square, the classical Morita reduction";
    NamedExample src = pair_groupoid(2);
    NamedExample dst = pair_groupoid(1);
    m.phi.source = src.groupoid;
    m.phi.target = dst.groupoid;
    m.phi.phi0 = SmoothMap(2, 1, [](const auto& x) { return x.head(1).eval(); });
    m.phi.phi1 = SmoothMap(4, 2, [](const auto& a) {
      using S = typename std::decay_t<decltype(a)>::Scalar;
      VecX<S> o(2);
      o << a[0], a[2];
      return o;
    });
    m.target_connection = dst.connection;

    PrincipalGroupoidBundle B;
    B.base = dst.groupoid;
    B.group = so2();
    B.action = SmoothMap(2 + 1 + 1, 2, [](const auto& a) {
      using S = typename std::decay_t<decltype(a)>::Scalar;
      VecX<S> o(2);
      o << a[0], a[3];
      return o;
    });
    B.sample_group = [](Rng& rng) { return box(rng, 1, -1.5, 1.5); };
    m.target_bundle = B;
    m.target_form = maurer_cartan_form(so2(), 1);
    all.push_back(m);
  }

  {
    NamedMorphism m;
    m.name = "flat_projection";
    m.description =
        "target-coordinate projection pair(R) -> unit(R); breaks the source square, not a "
        "morphism";
    m.phi.source = make_pair(1);
    m.phi.target = make_unit(1);
    m.phi.phi0 = identity_map(1);
    m.phi.phi1 = SmoothMap(2, 1, [](const auto& a) { return a.head(1).eval(); });
    m.expect_morphism = false;
    m.expect_morita = false;
    all.push_back(m);
  }

  {
    NamedMorphism m;
    m.name = "double_cover";
    m.description =
        "angle-doubling morphism from the double-speed transformation groupoid onto the "
        "transformation groupoid; etale on arrows";
    NamedExample dst = action_groupoid();
    m.phi.source = make_action(2);
    m.phi.target = dst.groupoid;
    m.phi.phi0 = identity_map(2);
    m.phi.phi1 = SmoothMap(3, 3, [](const auto& a) {
      using S = typename std::decay_t<decltype(a)>::Scalar;
      VecX<S> o(3);
      o << S(2) * a[0], a[1], a[2];
      return o;
    });
    m.target_connection = dst.connection;
    m.target_bundle = dst.bundle;
    m.target_form = dst.connection_form;
    all.push_back(m);
  }

  std::sort(all.begin(), all.end(),
            [](const NamedMorphism& a, const NamedMorphism& b) { return a.name < b.name; });
  return all;
}

const NamedExample& find_example(const std::vector<NamedExample>& all,
                                 const std::string& name) {
  for (const auto& ex : all)
    if (ex.name == name) return ex;
  throw config_error("unknown example: " + name);
}

}  // namespace grpd
