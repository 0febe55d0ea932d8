#pragma once

// Scalar/jet arithmetic layer: smooth maps evaluable on nested jets,
// Jacobians (forward-mode and finite-difference oracle), vector-field
// brackets, and the small subspace algebra used everywhere else.

#include <functional>
#include <utility>

#include <Eigen/Dense>

#include "grpd/dual.hpp"
#include "grpd/errors.hpp"

namespace grpd {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kRankTol = 1e-9;   // relative nullspace threshold
inline constexpr double kCondMax = 1e8;    // restricted-solve condition cap

// A map between coordinate patches, evaluable at three scalar levels:
// plain doubles, first-order jets, and second-order (nested) jets.
class SmoothMap {
 public:
  SmoothMap() = default;

  template <typename F>
  SmoothMap(int domain_dim, int codomain_dim, F f)
      : dom_(domain_dim),
        cod_(codomain_dim),
        f0_([f](const VecX<double>& p) { return VecX<double>(f(p)); }),
        f1_([f](const VecX<J1>& p) { return VecX<J1>(f(p)); }),
        f2_([f](const VecX<J2>& p) { return VecX<J2>(f(p)); }) {}

  // For maps whose body itself differentiates (derived structure maps
  // built from transport): evaluable on doubles and first-order jets,
  // second-order evaluation throws.
  template <typename F>
  static SmoothMap two_level(int domain_dim, int codomain_dim, F f) {
    SmoothMap m;
    m.dom_ = domain_dim;
    m.cod_ = codomain_dim;
    m.f0_ = [f](const VecX<double>& p) { return VecX<double>(f(p)); };
    m.f1_ = [f](const VecX<J1>& p) { return VecX<J1>(f(p)); };
    m.f2_ = [](const VecX<J2>&) -> VecX<J2> {
      throw evaluation_error("map does not support second-order jets");
    };
    return m;
  }

  int domain_dim() const { return dom_; }
  int codomain_dim() const { return cod_; }

  Vec operator()(const Vec& p) const {
    check_dim(p.size());
    Vec out = f0_(p);
    if (!out.allFinite()) throw evaluation_error("smooth map produced non-finite values");
    return out;
  }
  VecX<J1> operator()(const VecX<J1>& p) const {
    check_dim(p.size());
    return f1_(p);
  }
  VecX<J2> operator()(const VecX<J2>& p) const {
    check_dim(p.size());
    return f2_(p);
  }

 private:
  void check_dim(Eigen::Index n) const {
    if (static_cast<int>(n) != dom_)
      throw contract_error("smooth map applied to point of wrong dimension");
  }

  int dom_ = 0, cod_ = 0;
  std::function<VecX<double>(const VecX<double>&)> f0_;
  std::function<VecX<J1>(const VecX<J1>&)> f1_;
  std::function<VecX<J2>(const VecX<J2>&)> f2_;
};

inline SmoothMap identity_map(int n) {
  return SmoothMap(n, n, [](const auto& p) { return p; });
}

inline SmoothMap compose(const SmoothMap& f, const SmoothMap& g) {
  if (g.codomain_dim() != f.domain_dim())
    throw contract_error("compose: dimension mismatch");
  return SmoothMap(g.domain_dim(), f.codomain_dim(),
                   [f, g](const auto& p) { return f(g(p)); });
}

// A matrix whose value varies smoothly over a patch (connection frames,
// coefficient matrices). Same three evaluation levels as SmoothMap.
class MatrixField {
 public:
  MatrixField() = default;

  template <typename F>
  MatrixField(int point_dim, int rows, int cols, F f)
      : point_dim_(point_dim), rows_(rows), cols_(cols),
        f0_([f](const VecX<double>& p) { return MatX<double>(f(p)); }),
        f1_([f](const VecX<J1>& p) { return MatX<J1>(f(p)); }),
        f2_([f](const VecX<J2>& p) { return MatX<J2>(f(p)); }) {}

  int point_dim() const { return point_dim_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Mat operator()(const Vec& p) const { return f0_(p); }
  MatX<J1> operator()(const VecX<J1>& p) const { return f1_(p); }
  MatX<J2> operator()(const VecX<J2>& p) const { return f2_(p); }

  // Value computable only on plain doubles (rank-revealing constructions);
  // jet evaluation throws.
  template <typename F>
  static MatrixField pointwise(int point_dim, int rows, int cols, F f) {
    MatrixField m;
    m.point_dim_ = point_dim;
    m.rows_ = rows;
    m.cols_ = cols;
    m.f0_ = [f](const VecX<double>& p) { return MatX<double>(f(p)); };
    m.f1_ = [](const VecX<J1>&) -> MatX<J1> {
      throw evaluation_error("matrix field does not support jet evaluation");
    };
    m.f2_ = [](const VecX<J2>&) -> MatX<J2> {
      throw evaluation_error("matrix field does not support jet evaluation");
    };
    return m;
  }

  static MatrixField constant(int point_dim, Mat value) {
    const int r = static_cast<int>(value.rows());
    const int c = static_cast<int>(value.cols());
    return MatrixField(point_dim, r, c, [value](const auto& p) {
      using S = typename std::decay_t<decltype(p)>::Scalar;
      return MatX<S>(value.template cast<S>());
    });
  }

 private:
  int point_dim_ = 0, rows_ = 0, cols_ = 0;
  std::function<MatX<double>(const VecX<double>&)> f0_;
  std::function<MatX<J1>(const VecX<J1>&)> f1_;
  std::function<MatX<J2>(const VecX<J2>&)> f2_;
};

// Orthonormal (or at least independent) spanning columns of a subspace.
struct SubspaceBasis {
  int ambient_dim = 0;
  Mat basis;  // ambient_dim x rank

  int rank() const { return static_cast<int>(basis.cols()); }
};

// --- Jacobians -------------------------------------------------------------

namespace detail {
template <typename S>
MatX<S> jacobian_seeded(const SmoothMap& f, const VecX<S>& p) {
  const int n = f.domain_dim();
  const int m = f.codomain_dim();
  MatX<S> J(m, n);
  VecX<Dual<S>> q(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) q[k] = Dual<S>(p[k], S(k == j ? 1 : 0));
    VecX<Dual<S>> out = f(q);
    for (int i = 0; i < m; ++i) J(i, j) = out[i].d;
  }
  return J;
}
}  // namespace detail

inline Mat jacobian(const SmoothMap& f, const Vec& p) {
  Mat J = detail::jacobian_seeded<double>(f, p);
  if (!J.allFinite()) throw evaluation_error("jacobian: non-finite derivative");
  return J;
}
inline MatX<J1> jacobian(const SmoothMap& f, const VecX<J1>& p) {
  return detail::jacobian_seeded<J1>(f, p);
}

inline Mat jacobian_fd(const SmoothMap& f, const Vec& p, double h) {
  if (!(h > 0)) throw contract_error("jacobian_fd: step must be positive");
  const int n = f.domain_dim();
  Mat J(f.codomain_dim(), n);
  for (int j = 0; j < n; ++j) {
    Vec pp = p, pm = p;
    pp[j] += h;
    pm[j] -= h;
    J.col(j) = (f(pp) - f(pm)) / (2.0 * h);
  }
  if (!J.allFinite()) throw evaluation_error("jacobian_fd: non-finite derivative");
  return J;
}

// --- Vector fields ---------------------------------------------------------

struct VectorField {
  SmoothMap map;  // point -> tangent vector, codomain_dim == domain_dim

  template <typename F>
  VectorField(int dim, F f) : map(dim, dim, std::move(f)) {}
  explicit VectorField(SmoothMap m) : map(std::move(m)) {
    if (map.domain_dim() != map.codomain_dim())
      throw contract_error("vector field must map a patch to its own tangent dimension");
  }
  int dim() const { return map.domain_dim(); }
};

// [u, v](p) = J_v(p) u(p) - J_u(p) v(p)
inline Vec lie_bracket(const VectorField& u, const VectorField& v, const Vec& p) {
  if (u.dim() != v.dim()) throw contract_error("lie_bracket: dimension mismatch");
  return jacobian(v.map, p) * u.map(p) - jacobian(u.map, p) * v.map(p);
}

// --- Subspace algebra ------------------------------------------------------

// Orthonormal basis of { v : ||Mv|| <= tol * ||M|| } by SVD thresholding.
inline SubspaceBasis nullspace(const Mat& M, double tol = kRankTol) {
  if (!(tol > 0)) throw contract_error("nullspace: tolerance must be positive");
  const int n = static_cast<int>(M.cols());
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  const double thresh = tol * smax;
  int rank_M = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > thresh) ++rank_M;
  SubspaceBasis out;
  out.ambient_dim = n;
  out.basis = svd.matrixV().rightCols(n - rank_M);
  return out;
}

namespace detail {
inline Mat orthonormalize(const Mat& B) {
  if (B.cols() == 0) return B;
  Eigen::ColPivHouseholderQR<Mat> qr(B);
  qr.setThreshold(kRankTol);
  if (qr.rank() < B.cols())
    throw contract_error("subspace basis is rank deficient");
  Eigen::HouseholderQR<Mat> hqr(B);
  Mat Q = hqr.householderQ() * Mat::Identity(B.rows(), B.cols());
  return Q;
}
}  // namespace detail

// Frobenius distance of orthogonal projectors; 0 iff the spans agree.
inline double subspace_equal(const SubspaceBasis& A, const SubspaceBasis& B) {
  if (A.ambient_dim != B.ambient_dim)
    throw contract_error("subspace_equal: ambient dimension mismatch");
  const int n = A.ambient_dim;
  Mat PA = Mat::Zero(n, n), PB = Mat::Zero(n, n);
  if (A.rank() > 0) {
    Mat QA = detail::orthonormalize(A.basis);
    PA = QA * QA.transpose();
  }
  if (B.rank() > 0) {
    Mat QB = detail::orthonormalize(B.basis);
    PB = QB * QB.transpose();
  }
  return (PA - PB).norm();
}

// Inverse of M restricted to span(B), valued in ambient coordinates:
// w |-> B (M B)^{-1} w. Returned as an explicit matrix.
inline Mat restricted_inverse(const Mat& M, const SubspaceBasis& B) {
  if (static_cast<int>(M.cols()) != B.ambient_dim)
    throw contract_error("restricted_inverse: dimension mismatch");
  Mat MB = M * B.basis;
  if (MB.rows() != MB.cols())
    throw contract_error("restricted_inverse: restricted system is not square");
  if (MB.rows() == 0) return Mat::Zero(B.ambient_dim, 0);
  Eigen::JacobiSVD<Mat> svd(MB);
  const auto& sv = svd.singularValues();
  if (sv[sv.size() - 1] <= 0.0 || sv[0] / sv[sv.size() - 1] > kCondMax)
    throw non_transversal_error("restricted map is singular or ill conditioned");
  return B.basis * MB.inverse();
}

// Jet-level restricted inverse for use inside derived structure maps.
template <typename S>
MatX<S> restricted_inverse_jet(const MatX<S>& M, const MatX<S>& B) {
  MatX<S> MB = M * B;
  Eigen::PartialPivLU<MatX<S>> lu(MB);
  return B * lu.solve(MatX<S>::Identity(MB.rows(), MB.cols()));
}

}  // namespace grpd
