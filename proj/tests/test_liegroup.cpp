#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grpd/liegroup.hpp"

using namespace grpd;

TEST_CASE("matrix exponential hand values") {
  MatrixLieGroup G = so2();
  Vec th(1);
  th << 0.6;
  Mat R = exp(G, th);
  CHECK(R(0, 0) == doctest::Approx(std::cos(0.6)).epsilon(1e-12));
  CHECK(R(1, 0) == doctest::Approx(std::sin(0.6)).epsilon(1e-12));

  MatrixLieGroup H = so3();
  Vec xi(3);
  xi << 0, 0, M_PI / 2;
  Mat Q = exp(H, xi);  // quarter turn about the z axis
  CHECK(Q(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(Q(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(Q(2, 2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("algebra coordinates round trip and reject outsiders") {
  MatrixLieGroup G = so3();
  Vec xi(3);
  xi << 0.3, -1.2, 0.8;
  CHECK((algebra_coords(G, G.algebra_element(xi)) - xi).norm() < 1e-12);
  Mat sym = Mat::Identity(3, 3);
  CHECK_THROWS_AS(algebra_coords(G, sym), closure_error);
}

TEST_CASE("adjoint rotates the algebra") {
  MatrixLieGroup G = so3();
  Vec z(3), x(3);
  z << 0, 0, M_PI / 2;
  x << 1, 0, 0;
  Vec ad = Ad(G, exp(G, z), x);  // Ad(exp(pi/2 xi3)) xi1 = xi2
  CHECK(ad[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ad[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ad[2] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("algebra diagnostics pass for all shipped groups") {
  for (const auto& G : {so2(), so3(), scaling()}) {
    ResidualReport rep = check_algebra(G);
    CHECK_MESSAGE(rep.get("bracket_closure") < 1e-12, G.name);
    CHECK_MESSAGE(rep.get("jacobi_identity") < 1e-12, G.name);
    CHECK_MESSAGE(rep.get("basis_min_singular_value") > 0.1, G.name);
  }
}

TEST_CASE("structure constants reproduce the so(3) bracket") {
  MatrixLieGroup G = so3();
  auto SC = structure_constants(G);
  Vec a = Vec::Zero(3), b = Vec::Zero(3);
  a[0] = 1;
  b[1] = 1;
  Vec c = bracket_coords<double>(SC, a, b);  // [xi1, xi2] = xi3
  CHECK(c[0] == doctest::Approx(0.0));
  CHECK(c[1] == doctest::Approx(0.0));
  CHECK(c[2] == doctest::Approx(1.0));
  CHECK((c + bracket_coords<double>(SC, b, a)).norm() < 1e-12);
}

TEST_CASE("chart product composes exponentials") {
  MatrixLieGroup G = so3();
  Vec a(3), b(3);
  a << 0.4, -0.2, 0.7;
  b << -0.1, 0.5, 0.3;
  Vec c = chart_product<double>(G, a, b);
  CHECK((exp(G, c) - exp(G, a) * exp(G, b)).norm() < 1e-10);
  CHECK(chart_product<double>(G, a, (-a).eval()).norm() < 1e-10);

  MatrixLieGroup A = so2();
  Vec u(1), v(1);
  u << 0.4;
  v << -1.1;
  CHECK(chart_product<double>(A, u, v)[0] == doctest::Approx(-0.7));
}

TEST_CASE("rotation logarithm survives the small-angle branch") {
  MatrixLieGroup G = so3();
  for (double scale : {1e-7, 1e-3, 1.0}) {
    Vec w(3);
    w << 0.3 * scale, -0.4 * scale, 0.5 * scale;
    Vec back = so3_log<double>(expm<double>(so3_hat<double>(w)));
    CHECK((back - w).norm() < 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("invariant polynomial hand values") {
  InvariantPolynomial pair = so2_pairing();
  Mat J(2, 2);
  J << 0, -3.5, 3.5, 0;
  CHECK(eval_poly(pair, {J}) == doctest::Approx(3.5));

  InvariantPolynomial tr2 = invariant_poly(2);
  MatrixLieGroup G = so3();
  Mat x1 = G.algebra_basis[0], x2 = G.algebra_basis[1];
  CHECK(eval_poly(tr2, {x1, x2}) == doctest::Approx(0.0));
  CHECK(eval_poly(tr2, {x1, x1}) == doctest::Approx(-2.0));

  // Ad-invariance at a sample: nu(Ad_g a, Ad_g b) = nu(a, b)
  Vec z(3);
  z << 0.2, 0.9, -0.4;
  Mat g = exp(G, z);
  Mat a = G.algebra_element((Vec(3) << 1, 2, 3).finished());
  Mat b = G.algebra_element((Vec(3) << -2, 0, 1).finished());
  CHECK(eval_poly(tr2, {g * a * g.transpose(), g * b * g.transpose()}) ==
        doctest::Approx(eval_poly(tr2, {a, b})).epsilon(1e-10));
}
