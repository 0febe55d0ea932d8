#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grpd/smooth.hpp"

using namespace grpd;

namespace {
SmoothMap curvy() {
  // (x, y) -> (sin(x y), x^2 - y)
  return SmoothMap(2, 2, [](const auto& p) {
    using S = typename std::decay_t<decltype(p)>::Scalar;
    VecX<S> o(2);
    o[0] = sin(p[0] * p[1]);
    o[1] = p[0] * p[0] - p[1];
    return o;
  });
}
}  // namespace

TEST_CASE("jacobian matches hand derivative") {
  Vec p(2);
  p << 0.7, -0.3;
  Mat J = jacobian(curvy(), p);
  CHECK(J(0, 0) == doctest::Approx(-0.3 * std::cos(-0.21)).epsilon(1e-12));
  CHECK(J(0, 1) == doctest::Approx(0.7 * std::cos(-0.21)).epsilon(1e-12));
  CHECK(J(1, 0) == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(J(1, 1) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("jacobian agrees with the finite-difference oracle") {
  Vec p(2);
  p << 1.1, 0.4;
  Mat Ja = jacobian(curvy(), p);
  Mat Jf = jacobian_fd(curvy(), p, 1e-5);
  CHECK((Ja - Jf).cwiseAbs().maxCoeff() < 1e-9);
  CHECK_THROWS_AS(jacobian_fd(curvy(), p, 0.0), contract_error);
}

TEST_CASE("nested jets expose second derivatives") {
  // f(x) = x^3, f''(2) = 12
  SmoothMap f(1, 1, [](const auto& p) {
    return (p.array() * p.array() * p.array()).matrix().eval();
  });
  VecX<J1> q(1);
  q[0] = J1(2.0, 1.0);
  MatX<J1> J = jacobian(f, q);
  CHECK(J(0, 0).v == doctest::Approx(12.0));
  CHECK(J(0, 0).d == doctest::Approx(12.0));  // f''' * dx = 12
}

TEST_CASE("two_level maps refuse second-order jets") {
  SmoothMap f = SmoothMap::two_level(1, 1, [](const auto& p) { return p; });
  Vec p(1);
  p << 1.0;
  CHECK(f(p)[0] == 1.0);
  VecX<J2> q(1);
  q[0] = J2(J1(1.0, 0.0), J1(0.0, 0.0));
  CHECK_THROWS_AS(f(q), evaluation_error);
}

TEST_CASE("pointwise matrix fields refuse jets") {
  MatrixField M = MatrixField::pointwise(1, 1, 1, [](const Vec& p) {
    Mat out(1, 1);
    out(0, 0) = p[0];
    return out;
  });
  Vec p(1);
  p << 3.0;
  CHECK(M(p)(0, 0) == 3.0);
  VecX<J1> q(1);
  q[0] = J1(3.0, 1.0);
  CHECK_THROWS_AS(M(q), evaluation_error);
}

TEST_CASE("nullspace finds the kernel and is orthonormal") {
  Mat M(2, 3);
  M << 1, 0, 0, 0, 1, 0;
  SubspaceBasis K = nullspace(M);
  REQUIRE(K.rank() == 1);
  CHECK(std::abs(std::abs(K.basis(2, 0)) - 1.0) < 1e-12);
  CHECK((M * K.basis).norm() < 1e-12);
  CHECK_THROWS_AS(nullspace(M, -1.0), contract_error);
}

TEST_CASE("subspace_equal separates spans") {
  SubspaceBasis A{2, Mat(2, 1)}, B{2, Mat(2, 1)}, C{2, Mat(2, 1)};
  A.basis << 1, 1;
  B.basis << 2, 2;  // same span, different scaling
  C.basis << 1, 0;
  CHECK(subspace_equal(A, B) < 1e-12);
  CHECK(subspace_equal(A, C) > 0.5);
}

TEST_CASE("restricted_inverse inverts on the given span only") {
  Mat M(1, 2);
  M << 1, 1;
  SubspaceBasis B{2, Mat(2, 1)};
  B.basis << 1, 1;
  Mat R = restricted_inverse(M, B);
  Vec w(1);
  w << 2.0;
  Vec v = R * w;  // the vector in span(B) with M v = 2
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] == doctest::Approx(1.0));

  SubspaceBasis Bad{2, Mat(2, 1)};
  Bad.basis << 1, -1;  // M annihilates this span
  CHECK_THROWS_AS(restricted_inverse(M, Bad), non_transversal_error);
}

TEST_CASE("lie_bracket hand value") {
  // [d/dx, x d/dy] = d/dy
  VectorField u(2, [](const auto& p) {
    using S = typename std::decay_t<decltype(p)>::Scalar;
    VecX<S> o(2);
    o << S(1), S(0);
    return o;
  });
  VectorField v(2, [](const auto& p) {
    using S = typename std::decay_t<decltype(p)>::Scalar;
    VecX<S> o(2);
    o << S(0), p[0];
    return o;
  });
  Vec p(2);
  p << 0.3, 0.9;
  Vec b = lie_bracket(u, v, p);
  CHECK(b[0] == doctest::Approx(0.0));
  CHECK(b[1] == doctest::Approx(1.0));
}
