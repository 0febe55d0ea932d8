#include "grpd/forms.hpp"

#include <Eigen/LU>

namespace grpd {

Form Form::shell(int ambient, int degree, int value_dim, int max_level) {
  if (degree < 0 || degree > ambient)
    throw contract_error("form degree out of range");
  Form w;
  w.ambient = ambient;
  w.degree = degree;
  w.value_dim = value_dim;
  w.max_level = max_level;
  w.c0 = [](const VecX<double>&, const Idx&) -> VecX<double> {
    throw evaluation_error("form has no scalar-level coefficients");
  };
  w.c1 = [](const VecX<J1>&, const Idx&) -> VecX<J1> {
    throw evaluation_error("form coefficients not available at jet level 1");
  };
  w.c2 = [](const VecX<J2>&, const Idx&) -> VecX<J2> {
    throw evaluation_error("form coefficients not available at jet level 2");
  };
  return w;
}

namespace detail {

std::vector<Idx> combinations(int n, int k) {
  std::vector<Idx> out;
  if (k < 0 || k > n) return out;
  Idx cur(k);
  for (int j = 0; j < k; ++j) cur[j] = j;
  while (true) {
    out.push_back(cur);
    int j = k - 1;
    while (j >= 0 && cur[j] == n - k + j) --j;
    if (j < 0) break;
    ++cur[j];
    for (int r = j + 1; r < k; ++r) cur[r] = cur[r - 1] + 1;
  }
  return out;
}

// det of the square submatrix M[rows, cols]
template <typename S>
S minor_det(const MatX<S>& M, const Idx& rows, const Idx& cols) {
  const int k = static_cast<int>(rows.size());
  if (k == 0) return S(1);
  MatX<S> sub(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) sub(r, c) = M(rows[r], cols[c]);
  return sub.determinant();
}

}  // namespace detail

Vec evaluate(const Form& w, const Vec& p, const Mat& V) {
  if (static_cast<int>(V.rows()) != w.ambient || static_cast<int>(V.cols()) != w.degree)
    throw contract_error("evaluate: argument matrix has wrong shape");
  Vec out = Vec::Zero(w.value_dim);
  Idx all_cols(w.degree);
  for (int c = 0; c < w.degree; ++c) all_cols[c] = c;
  for (const Idx& I : detail::combinations(w.ambient, w.degree))
    out += w.c0(p, I) * detail::minor_det<double>(V, I, all_cols);
  return out;
}

namespace {

template <typename S>
VecX<S> pullback_coeff(const SmoothMap& f, const Form& w,
                       const std::vector<Idx>& tuples, const VecX<S>& p,
                       const Idx& I) {
  if (w.degree == 0) {
    if constexpr (std::is_same_v<S, double>) return w.c0(f(p), I);
    else return w.c1(f(p), I);
  }
  MatX<S> J = detail::jacobian_seeded<S>(f, p);
  VecX<S> fp = f(p);
  VecX<S> out = VecX<S>::Zero(w.value_dim);
  for (const Idx& Jt : tuples) {
    S d = detail::minor_det<S>(J, Jt, I);
    if constexpr (std::is_same_v<S, double>) out += w.c0(fp, Jt) * d;
    else out += w.c1(fp, Jt) * d;
  }
  return out;
}

}  // namespace

Form pullback(const SmoothMap& f, const Form& w) {
  if (f.codomain_dim() != w.ambient)
    throw contract_error("pullback: codomain of map does not match form ambient");
  // the Jacobian costs one jet level of the map, so results stop at level 1
  Form out = Form::shell(f.domain_dim(), w.degree, w.value_dim,
                         std::min(w.max_level, 1));
  const Form ww = w;
  const SmoothMap ff = f;
  const auto tuples = detail::combinations(w.ambient, w.degree);
  out.c0 = [ff, ww, tuples](const VecX<double>& p, const Idx& I) {
    // minor indices are columns of the Jacobian restricted to I
    return pullback_coeff<double>(ff, ww, tuples, p, I);
  };
  if (out.max_level >= 1)
    out.c1 = [ff, ww, tuples](const VecX<J1>& p, const Idx& I) {
      return pullback_coeff<J1>(ff, ww, tuples, p, I);
    };
  return out;
}

Form exterior_derivative(const Form& w) {
  if (w.degree >= w.ambient)
    throw contract_error("exterior_derivative: degree equals ambient dimension");
  if (w.max_level < 1)
    throw evaluation_error("exterior_derivative: form lacks jet-level coefficients");
  Form d = Form::shell(w.ambient, w.degree + 1, w.value_dim, w.max_level - 1);
  const Form ww = w;
  d.c0 = [ww](const VecX<double>& p, const Idx& I) {
    VecX<double> out = VecX<double>::Zero(ww.value_dim);
    const int n = static_cast<int>(p.size());
    for (int j = 0; j < static_cast<int>(I.size()); ++j) {
      Idx rest;
      for (int r = 0; r < static_cast<int>(I.size()); ++r)
        if (r != j) rest.push_back(I[r]);
      VecX<J1> q(n);
      for (int t = 0; t < n; ++t) q[t] = J1(p[t], t == I[j] ? 1.0 : 0.0);
      VecX<J1> c = ww.c1(q, rest);
      const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
      for (int r = 0; r < ww.value_dim; ++r) out[r] += sgn * c[r].d;
    }
    return out;
  };
  if (d.max_level >= 1)
    d.c1 = [ww](const VecX<J1>& p, const Idx& I) {
      VecX<J1> out = VecX<J1>::Zero(ww.value_dim);
      const int n = static_cast<int>(p.size());
      for (int j = 0; j < static_cast<int>(I.size()); ++j) {
        Idx rest;
        for (int r = 0; r < static_cast<int>(I.size()); ++r)
          if (r != j) rest.push_back(I[r]);
        VecX<J2> q(n);
        for (int t = 0; t < n; ++t)
          q[t] = J2(p[t], J1(t == I[j] ? 1.0 : 0.0));
        VecX<J2> c = ww.c2(q, rest);
        const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        for (int r = 0; r < ww.value_dim; ++r)
          out[r] += sgn * c[r].d;
      }
      return out;
    };
  return d;
}

Form form_sum(const Form& a, const Form& b) {
  if (a.ambient != b.ambient || a.degree != b.degree || a.value_dim != b.value_dim)
    throw contract_error("form_sum: shape mismatch");
  Form w = Form::shell(a.ambient, a.degree, a.value_dim,
                       std::min(a.max_level, b.max_level));
  const Form aa = a, bb = b;
  if (w.max_level >= 0)
    w.c0 = [aa, bb](const VecX<double>& p, const Idx& I) {
      return (aa.c0(p, I) + bb.c0(p, I)).eval();
    };
  if (w.max_level >= 1)
    w.c1 = [aa, bb](const VecX<J1>& p, const Idx& I) {
      return (aa.c1(p, I) + bb.c1(p, I)).eval();
    };
  if (w.max_level >= 2)
    w.c2 = [aa, bb](const VecX<J2>& p, const Idx& I) {
      return (aa.c2(p, I) + bb.c2(p, I)).eval();
    };
  return w;
}

Form form_scaled(double c, const Form& a) {
  Form w = Form::shell(a.ambient, a.degree, a.value_dim, a.max_level);
  const Form aa = a;
  if (w.max_level >= 0)
    w.c0 = [aa, c](const VecX<double>& p, const Idx& I) {
      return (c * aa.c0(p, I)).eval();
    };
  if (w.max_level >= 1)
    w.c1 = [aa, c](const VecX<J1>& p, const Idx& I) {
      return (aa.c1(p, I) * J1(c)).eval();
    };
  if (w.max_level >= 2)
    w.c2 = [aa, c](const VecX<J2>& p, const Idx& I) {
      return (aa.c2(p, I) * J2(c)).eval();
    };
  return w;
}

Mat h_projector(const GroupoidConnection& C, const Vec& y) {
  SubspaceBasis K = vertical_space(C.base, y);
  Mat H = C.frame(y);
  const int n = C.base.dim_arr;
  if (static_cast<int>(H.cols()) + K.rank() != n)
    throw non_transversal_error("frame and vertical space do not fill the tangent space");
  Mat B(n, n);
  B << H, K.basis;
  Eigen::JacobiSVD<Mat> svd(B);
  const auto& sv = svd.singularValues();
  if (sv[n - 1] <= 0.0 || sv[0] / sv[n - 1] > kCondMax)
    throw non_transversal_error("horizontal and vertical spaces are not transversal");
  Mat Binv = B.inverse();
  return H * Binv.topRows(H.cols());
}

Form h_projection(const GroupoidConnection& C, const Form& w) {
  if (w.ambient != C.base.dim_arr)
    throw contract_error("h_projection: form does not live on the arrow space");
  Form out = Form::shell(w.ambient, w.degree, w.value_dim, 0);
  const Form ww = w;
  const GroupoidConnection Cc = C;
  const auto tuples = detail::combinations(w.ambient, w.degree);
  out.c0 = [ww, Cc, tuples](const VecX<double>& p, const Idx& I) {
    if (ww.degree == 0) return ww.c0(p, I);
    Mat P = h_projector(Cc, p);
    VecX<double> out_v = VecX<double>::Zero(ww.value_dim);
    for (const Idx& Jt : tuples)
      out_v += ww.c0(p, Jt) * detail::minor_det<double>(P, Jt, I);
    return out_v;
  };
  return out;
}

ResidualReport check_groupoid_form(const GroupoidConnection& C, const Form& w,
                                   int n_samples, std::uint64_t seed) {
  if (w.ambient != C.base.dim_obj)
    throw contract_error("check_groupoid_form: form does not live on the object space");
  const Form Hs = h_projection(C, pullback(C.base.s, w));
  const Form Ht = h_projection(C, pullback(C.base.t, w));
  const int n1 = C.base.dim_arr;
  const int k = w.degree;

  Rng rng(seed);
  ResidualReport rep;
  rep.add("groupoid_form", 0.0);
  for (int s = 0; s < n_samples; ++s) {
    const Vec y = C.base.sample_arrow(rng);
    std::vector<Mat> args;
    for (const Idx& I : detail::combinations(n1, k)) {
      Mat V = Mat::Zero(n1, k);
      for (int c = 0; c < k; ++c) V(I[c], c) = 1.0;
      args.push_back(V);
    }
    for (int r = 0; r < 3; ++r) {
      Mat V(n1, k);
      for (int a = 0; a < n1; ++a)
        for (int c = 0; c < k; ++c) V(a, c) = rng.uniform(-1.0, 1.0);
      args.push_back(V);
    }
    for (const Mat& V : args)
      rep.track("groupoid_form", (evaluate(Hs, y, V) - evaluate(Ht, y, V)).norm());
  }
  return rep;
}

ResidualReport check_dclosure(const GroupoidConnection& C, const Form& w,
                              int n_samples, std::uint64_t seed) {
  ResidualReport inner = check_groupoid_form(C, exterior_derivative(w), n_samples, seed);
  ResidualReport rep;
  rep.add("dclosure", inner.get("groupoid_form"));
  return rep;
}

}  // namespace grpd
