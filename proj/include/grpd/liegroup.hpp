#pragma once

// Matrix Lie groups at desk scale: a basis of the algebra, a templated
// exponential usable inside jet computations, adjoint actions, and the
// invariant polynomials that feed characteristic forms.

#include <string>
#include <vector>

#include "grpd/residual.hpp"

namespace grpd {

struct MatrixLieGroup {
  std::string name;
  int matrix_size = 0;
  std::vector<Mat> algebra_basis;

  int dim() const { return static_cast<int>(algebra_basis.size()); }

  Mat algebra_element(const Vec& coords) const {
    if (coords.size() != dim())
      throw contract_error("algebra_element: wrong coordinate count");
    Mat X = Mat::Zero(matrix_size, matrix_size);
    for (int j = 0; j < dim(); ++j) X += coords[j] * algebra_basis[j];
    return X;
  }

  template <typename S>
  MatX<S> algebra_element(const VecX<S>& coords) const {
    MatX<S> X = MatX<S>::Zero(matrix_size, matrix_size);
    for (int j = 0; j < dim(); ++j)
      X += coords[j] * algebra_basis[j].cast<S>();
    return X;
  }

  // left pseudo-inverse of the vectorized basis, for projecting
  // matrices back to coordinates inside jet computations
  Mat coords_pinv() const;

  template <typename S>
  VecX<S> algebra_coords_t(const MatX<S>& X) const {
    const int n = matrix_size;
    VecX<S> v(n * n);
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r) v[c * n + r] = X(r, c);
    return (coords_pinv().cast<S>() * v).eval();
  }
};

MatrixLieGroup so2();
MatrixLieGroup so3();
MatrixLieGroup scaling();  // multiplicative reals, 1x1 matrices

// Scaling-and-squaring Taylor exponential; converges to ~1e-14 after
// scaling the spectral ball below 1/4, and evaluates on jet scalars.
template <typename S>
MatX<S> expm(const MatX<S>& A) {
  const Eigen::Index n = A.rows();
  double a = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a = std::max(a, std::abs(value(A(i, j))));
  a *= static_cast<double>(n);
  int s = 0;
  while (a > 0.25 && s < 60) {
    a /= 2.0;
    ++s;
  }
  MatX<S> X = A * S(std::pow(0.5, s));
  MatX<S> term = MatX<S>::Identity(n, n);
  MatX<S> sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = (term * X * S(1.0 / k)).eval();
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = (sum * sum).eval();
  return sum;
}

Mat exp(const MatrixLieGroup& G, const Vec& xi);

// Coordinates of X in the algebra basis; throws closure_error if X is
// not in the span within 1e-9 (relative).
Vec algebra_coords(const MatrixLieGroup& G, const Mat& X);

Vec Ad(const MatrixLieGroup& G, const Mat& g, const Vec& xi);
Vec ad_bracket(const MatrixLieGroup& G, const Vec& xi, const Vec& eta);

// Basis independence, bracket closure, and the Jacobi identity at the
// level of structure constants.
ResidualReport check_algebra(const MatrixLieGroup& G);

// --- so(3) chart helpers ---------------------------------------------------

template <typename S>
MatX<S> so3_hat(const VecX<S>& w) {
  MatX<S> W = MatX<S>::Zero(3, 3);
  W(0, 1) = -w[2]; W(0, 2) = w[1];
  W(1, 0) = w[2];  W(1, 2) = -w[0];
  W(2, 0) = -w[1]; W(2, 1) = w[0];
  return W;
}

// Rodrigues logarithm, valid for rotation angle < pi - margin. The
// angle comes from atan2(|sin|, cos); the theta -> 0 limit switches to
// an even series so jets stay finite.
template <typename S>
VecX<S> so3_log(const MatX<S>& R) {
  VecX<S> a(3);  // sin(theta) * axis
  a[0] = (R(2, 1) - R(1, 2)) * S(0.5);
  a[1] = (R(0, 2) - R(2, 0)) * S(0.5);
  a[2] = (R(1, 0) - R(0, 1)) * S(0.5);
  S c = (R(0, 0) + R(1, 1) + R(2, 2) - S(1)) * S(0.5);
  S s2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
  if (value(s2) < 1e-4) {
    // theta^2 = s2 + s2^2/3 + O(s2^3); g = theta/sin(theta)
    S t = s2 + s2 * s2 * S(1.0 / 3.0);
    S g = S(1) + t * S(1.0 / 6.0) + t * t * S(7.0 / 360.0);
    return (a * g).eval();
  }
  S sn = sqrt(s2);
  S theta = atan2(sn, c);
  return (a * (theta / sn)).eval();
}

// Coordinates of exp(hat a) exp(hat b) in the exponential chart.
// Closed form per shipped group; so(3) keeps both angles below ~2, well
// inside the injectivity radius.
template <typename S>
VecX<S> chart_product(const MatrixLieGroup& G, const VecX<S>& a,
                      const VecX<S>& b) {
  if (G.name == "so2" || G.name == "scaling") return (a + b).eval();
  if (G.name == "so3")
    return so3_log<S>((expm<S>(so3_hat<S>(a)) * expm<S>(so3_hat<S>(b))).eval());
  throw config_error("chart_product: no chart rule for group " + G.name);
}

// Structure constants: SC[k](a,b) = coordinate k of [xi_a, xi_b].
std::vector<Mat> structure_constants(const MatrixLieGroup& G);

template <typename S>
VecX<S> bracket_coords(const std::vector<Mat>& SC, const VecX<S>& a,
                       const VecX<S>& b) {
  const int d = static_cast<int>(SC.size());
  VecX<S> out(d);
  for (int k = 0; k < d; ++k) out[k] = a.dot(SC[k].cast<S>() * b);
  return out;
}

// --- invariant polynomials -------------------------------------------------

// Closed family: polarized trace powers and the so(2) coordinate
// pairing nu(a J) = a. Both are Ad-invariant on the shipped groups.
struct InvariantPolynomial {
  enum class Kind { trace_power, so2_pairing };
  int degree = 1;
  Kind kind = Kind::trace_power;
};

InvariantPolynomial invariant_poly(int k);
InvariantPolynomial so2_pairing();

template <typename S>
S eval_poly_t(const InvariantPolynomial& nu, const std::vector<MatX<S>>& A) {
  if (static_cast<int>(A.size()) != nu.degree)
    throw contract_error("eval_poly: wrong argument count");
  if (nu.kind == InvariantPolynomial::Kind::so2_pairing) return A[0](1, 0);
  std::vector<int> perm(nu.degree);
  for (int j = 0; j < nu.degree; ++j) perm[j] = j;
  S total = S(0);
  int count = 0;
  do {
    MatX<S> P = A[perm[0]];
    for (int j = 1; j < nu.degree; ++j) P = (P * A[perm[j]]).eval();
    total += P.trace();
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total * S(1.0 / count);
}

inline double eval_poly(const InvariantPolynomial& nu, const std::vector<Mat>& A) {
  return eval_poly_t<double>(nu, A);
}

}  // namespace grpd
