#include "grpd/liegroup.hpp"

#include <Eigen/QR>

namespace grpd {

MatrixLieGroup so2() {
  Mat J(2, 2);
  J << 0, -1, 1, 0;
  return {"so2", 2, {J}};
}

MatrixLieGroup so3() {
  Mat x1 = Mat::Zero(3, 3), x2 = Mat::Zero(3, 3), x3 = Mat::Zero(3, 3);
  x1(1, 2) = -1; x1(2, 1) = 1;
  x2(0, 2) = 1;  x2(2, 0) = -1;
  x3(0, 1) = -1; x3(1, 0) = 1;
  return {"so3", 3, {x1, x2, x3}};
}

MatrixLieGroup scaling() {
  Mat one(1, 1);
  one << 1;
  return {"scaling", 1, {one}};
}

Mat MatrixLieGroup::coords_pinv() const {
  const int n = matrix_size;
  const int d = dim();
  Mat B(n * n, d);
  for (int j = 0; j < d; ++j)
    B.col(j) = Eigen::Map<const Vec>(algebra_basis[j].data(), n * n);
  return (B.transpose() * B).ldlt().solve(B.transpose());
}

std::vector<Mat> structure_constants(const MatrixLieGroup& G) {
  const int d = G.dim();
  std::vector<Mat> SC(d, Mat::Zero(d, d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Vec c = ad_bracket(G, Vec::Unit(d, a), Vec::Unit(d, b));
      for (int k = 0; k < d; ++k) SC[k](a, b) = c[k];
    }
  return SC;
}

Mat exp(const MatrixLieGroup& G, const Vec& xi) {
  return expm<double>(G.algebra_element(xi));
}

Vec algebra_coords(const MatrixLieGroup& G, const Mat& X) {
  const int n = G.matrix_size;
  const int d = G.dim();
  Mat B(n * n, d);
  for (int j = 0; j < d; ++j)
    B.col(j) = Eigen::Map<const Vec>(G.algebra_basis[j].data(), n * n);
  Vec x = Eigen::Map<const Vec>(X.data(), n * n);
  Vec c = B.colPivHouseholderQr().solve(x);
  const double scale = std::max(1.0, x.norm());
  if ((B * c - x).norm() > 1e-9 * scale)
    throw closure_error("matrix is not in the span of the algebra basis");
  return c;
}

Vec Ad(const MatrixLieGroup& G, const Mat& g, const Vec& xi) {
  Mat X = G.algebra_element(xi);
  return algebra_coords(G, g * X * g.inverse());
}

Vec ad_bracket(const MatrixLieGroup& G, const Vec& xi, const Vec& eta) {
  Mat X = G.algebra_element(xi);
  Mat Y = G.algebra_element(eta);
  return algebra_coords(G, X * Y - Y * X);
}

ResidualReport check_algebra(const MatrixLieGroup& G) {
  const int d = G.dim();
  ResidualReport rep;

  Mat B(G.matrix_size * G.matrix_size, d);
  for (int j = 0; j < d; ++j)
    B.col(j) = Eigen::Map<const Vec>(G.algebra_basis[j].data(),
                                     G.matrix_size * G.matrix_size);
  Eigen::JacobiSVD<Mat> svd(B);
  rep.add("basis_min_singular_value", svd.singularValues()[d - 1],
          /*higher_is_better=*/true);

  double closure = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Mat C = G.algebra_basis[a] * G.algebra_basis[b] -
              G.algebra_basis[b] * G.algebra_basis[a];
      Vec cvec = Eigen::Map<const Vec>(C.data(), C.size());
      Vec coords = B.colPivHouseholderQr().solve(cvec);
      closure = std::max(closure, (B * coords - cvec).norm());
    }
  rep.add("bracket_closure", closure);

  double jacobi = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        Vec ea = Vec::Unit(d, a), eb = Vec::Unit(d, b), ec = Vec::Unit(d, c);
        Vec r = ad_bracket(G, ea, ad_bracket(G, eb, ec)) +
                ad_bracket(G, eb, ad_bracket(G, ec, ea)) +
                ad_bracket(G, ec, ad_bracket(G, ea, eb));
        jacobi = std::max(jacobi, r.norm());
      }
  rep.add("jacobi_identity", jacobi);
  return rep;
}

InvariantPolynomial invariant_poly(int k) {
  if (k < 1) throw contract_error("invariant_poly: degree must be positive");
  return {k, InvariantPolynomial::Kind::trace_power};
}

InvariantPolynomial so2_pairing() {
  return {1, InvariantPolynomial::Kind::so2_pairing};
}

}  // namespace grpd
