#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grpd/zoo.hpp"

using namespace grpd;

TEST_CASE("chart matrices are the identity at the origin") {
  MatrixLieGroup G = so3();
  Vec zero = Vec::Zero(3);
  CHECK((mc_matrix<double>(G, zero) - Mat::Identity(3, 3)).norm() < 1e-12);
  CHECK((ad_inverse_matrix<double>(G, zero) - Mat::Identity(3, 3)).norm() <
        1e-12);

  // Ad_{g^{-1}} for a quarter turn about z sends xi1 to -xi2
  Vec z(3);
  z << 0, 0, M_PI / 2;
  Vec e1 = Vec::Zero(3);
  e1[0] = 1;
  Vec got = ad_inverse_matrix<double>(G, z) * e1;
  CHECK(got[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("connection-form coefficients at the identity section") {
  NamedExample ex = principal_over_unit();
  const Form& w = ex.connection_form->omega;
  Vec p = Vec::Zero(7);
  p << 1.0, 2.0, 0.5, -1.0, 0, 0, 0;  // (x, psi = 0)
  // dx2 slot carries A_2 = x1 xi1; dpsi slots are the identity
  Vec c = w.coeff(p, {1});
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[1] == doctest::Approx(0.0));
  Vec cpsi = w.coeff(p, {4});
  CHECK(cpsi[0] == doctest::Approx(1.0));
  CHECK(cpsi[1] == doctest::Approx(0.0));
}

TEST_CASE("bundle action checks separate the action orders") {
  CHECK(check_bundle_action(*vb_so3_bundle(false).bundle, 50, 42)
            .max_residual() < 1e-9);
  CHECK(check_bundle_action(*vb_so3_bundle(true).bundle, 50, 42)
            .get("action_equivariance") > 0.1);
}

TEST_CASE("equivariance needs the adjoint twist for nonabelian groups") {
  NamedExample good = principal_over_unit();
  CHECK(check_connection_form(*good.bundle, *good.connection_form, 40, 42)
            .max_residual() < 1e-9);
  NamedExample bad = so3_untwisted();
  CHECK(check_connection_form(*bad.bundle, *bad.connection_form, 40, 42)
            .get("ad_equivariance") > 1e-3);
}

TEST_CASE("convex combinations of connection forms are connection forms") {
  NamedExample ex = principal_over_unit();
  ConnectionForm w1 = *ex.connection_form;
  ConnectionForm w2 = maurer_cartan_form(so3(), 4);
  for (double t : {0.0, 0.25, 0.5, 1.0}) {
    ConnectionForm blend{w1.group, w1.base_dim,
                         form_sum(form_scaled(t, w1.omega),
                                  form_scaled(1.0 - t, w2.omega))};
    CHECK(check_connection_form(*ex.bundle, blend, 20, 42).max_residual() <
          1e-9);
  }
}

TEST_CASE("Atiyah splitting round trips equivariant forms") {
  NamedExample ex = principal_over_unit();
  AtiyahSplitting D = split_from_form(*ex.bundle, *ex.connection_form);
  Vec x(4);
  x << 0.5, -1.2, 0.8, 0.1;
  Mat A = D.A(x);
  CHECK(A(0, 1) == doctest::Approx(0.5));   // x1 xi1 dx2
  CHECK(A(1, 0) == doctest::Approx(-1.2));  // x2 xi2 dx1
  CHECK(A(1, 3) == doctest::Approx(0.8));   // x3 xi2 dx4

  ConnectionForm back = form_from_split(*ex.bundle, D);
  Rng rng(7);
  for (int k = 0; k < 10; ++k) {
    Vec p(7);
    for (int j = 0; j < 7; ++j) p[j] = rng.uniform(-0.6, 0.6);
    for (int i = 0; i < 7; ++i)
      CHECK((ex.connection_form->omega.coeff(p, {i}) - back.omega.coeff(p, {i}))
                .norm() < 1e-10);
  }
}

TEST_CASE("curvature hand value and bracket oracle") {
  NamedExample ex = principal_over_unit();
  Form F = curvature(*ex.bundle, *ex.connection_form);
  Vec x(4);
  x << 0.7, -0.3, 1.1, 0.2;
  // F_12 = d(A)_12 + [A_1, A_2] = xi1 - xi2 - x1 x2 xi3
  Vec c = F.coeff(x, {0, 1});
  CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(c[1] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(c[2] == doctest::Approx(0.21).epsilon(1e-8));

  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK((F.coeff(x, {i, j}) - curvature_oracle(*ex.connection_form, x, i, j))
                .norm() < 1e-9);

  // flat reference: the Maurer-Cartan form has zero section curvature
  NamedExample mc = vb_so3_bundle(false);
  Form F0 = curvature(*mc.bundle, *mc.connection_form);
  Vec x2(2);
  x2 << 0.4, -0.9;
  CHECK(F0.coeff(x2, {0, 1}).norm() < 1e-12);
}

TEST_CASE("characteristic forms: hand value, closedness, degree overflow") {
  NamedExample ab = abelian_over_unit(2);
  ChernWeilResult cw =
      chern_weil(*ab.bundle, *ab.connection_form, 1, so2_pairing(),
                 &*ab.connection, 20, 42);
  Vec x(2);
  x << 0.3, 0.7;
  Mat V(2, 2);
  V << 1, 0, 0, 1;
  CHECK(evaluate(cw.form, x, V)[0] == doctest::Approx(1.0));  // dx1 ^ dx2
  CHECK_FALSE(cw.degree_overflow);

  ChernWeilResult over =
      chern_weil(*ab.bundle, *ab.connection_form, 2, invariant_poly(2),
                 nullptr, 10, 42);
  CHECK(over.degree_overflow);

  NamedExample ab4 = abelian_over_unit(4);
  ChernWeilResult cw4 =
      chern_weil(*ab4.bundle, *ab4.connection_form, 1, so2_pairing(),
                 &*ab4.connection, 20, 42);
  CHECK(cw4.report.get("chern_weil_closedness") < 1e-9);

  // nonabelian degree-4 form is not identically zero
  NamedExample pr = principal_over_unit();
  ChernWeilResult cw2 =
      chern_weil(*pr.bundle, *pr.connection_form, 2, invariant_poly(2),
                 &*pr.connection, 20, 42);
  Vec x4(4);
  x4 << 0.9, 0.4, -0.3, 0.6;
  Mat V4 = Mat::Identity(4, 4);
  CHECK(std::abs(evaluate(cw2.form, x4, V4)[0]) > 1e-3);
}

TEST_CASE("compatibility residual separates invariant potentials") {
  NamedExample good = action_groupoid();
  CHECK(check_groupoid_compatibility(*good.bundle, *good.connection_form, 40, 42)
            .max_residual() < 1e-9);
  NamedExample bad = action_noninvariant();
  CHECK(check_groupoid_compatibility(*bad.bundle, *bad.connection_form, 40, 42)
            .max_residual() > 0.05);
}
