#pragma once

// Coordinate exterior calculus. Forms are function-backed: a coefficient
// callback evaluated on demand at sorted index tuples. Coefficients can
// be valued in R^value_dim (algebra coordinates) so the same machinery
// carries scalar and Lie-algebra-valued forms.
//
// Level bookkeeping: differentiating a form consumes one jet level of
// its coefficients, pulling back consumes one level of the map. Each
// Form records how many levels remain; requesting a missing level
// throws evaluation_error.

#include <vector>

#include "grpd/connection.hpp"

namespace grpd {

using Idx = std::vector<int>;  // strictly increasing index tuple

struct Form {
  int ambient = 0;
  int degree = 0;
  int value_dim = 1;
  int max_level = 2;

  std::function<VecX<double>(const VecX<double>&, const Idx&)> c0;
  std::function<VecX<J1>(const VecX<J1>&, const Idx&)> c1;
  std::function<VecX<J2>(const VecX<J2>&, const Idx&)> c2;

  Vec coeff(const Vec& p, const Idx& I) const { return c0(p, I); }

  template <typename S>
  VecX<S> coeff_t(const VecX<S>& p, const Idx& I) const {
    if constexpr (std::is_same_v<S, double>) return c0(p, I);
    else if constexpr (std::is_same_v<S, J1>) return c1(p, I);
    else return c2(p, I);
  }

  // analytic coefficients, full jet depth
  template <typename F>
  static Form make(int ambient, int degree, int value_dim, F f) {
    Form w = shell(ambient, degree, value_dim, 2);
    w.c0 = [f](const VecX<double>& p, const Idx& I) { return VecX<double>(f(p, I)); };
    w.c1 = [f](const VecX<J1>& p, const Idx& I) { return VecX<J1>(f(p, I)); };
    w.c2 = [f](const VecX<J2>& p, const Idx& I) { return VecX<J2>(f(p, I)); };
    return w;
  }

  // coefficients computable on plain doubles only
  template <typename F>
  static Form make_pointwise(int ambient, int degree, int value_dim, F f) {
    Form w = shell(ambient, degree, value_dim, 0);
    w.c0 = [f](const VecX<double>& p, const Idx& I) { return VecX<double>(f(p, I)); };
    return w;
  }

  static Form shell(int ambient, int degree, int value_dim, int max_level);
};

namespace detail {
std::vector<Idx> combinations(int n, int k);
}

// omega_p(v_1..v_k) with the v_i as columns of V; scalar level only.
Vec evaluate(const Form& w, const Vec& p, const Mat& V);

Form pullback(const SmoothMap& f, const Form& w);

Form exterior_derivative(const Form& w);

// The oblique projector onto H_y along ker(ds_y), as a matrix.
Mat h_projector(const GroupoidConnection& C, const Vec& y);

// Precompose every slot with the oblique projector onto H along K.
Form h_projection(const GroupoidConnection& C, const Form& w);

Form form_sum(const Form& a, const Form& b);
Form form_scaled(double c, const Form& a);

// max |H(s*w) - H(t*w)| over sampled arrows and spanning tangent tuples.
ResidualReport check_groupoid_form(const GroupoidConnection& C, const Form& w,
                                   int n_samples, std::uint64_t seed);

// check_groupoid_form applied to dw.
ResidualReport check_dclosure(const GroupoidConnection& C, const Form& w,
                              int n_samples, std::uint64_t seed);

// --- wedge -----------------------------------------------------------------

namespace detail {
// parity of moving subset positions to the front of the tuple
inline int shuffle_sign(const Idx& positions) {
  int inv = 0;
  for (int r = 0; r < static_cast<int>(positions.size()); ++r)
    inv += positions[r] - r;
  return inv % 2 == 0 ? 1 : -1;
}

template <typename S, typename Prod>
VecX<S> wedge_coeff(const Form& a, const Form& b, int value_dim, Prod prod,
                    const VecX<S>& p, const Idx& I) {
  VecX<S> out = VecX<S>::Zero(value_dim);
  const int k = a.degree;
  const int n = static_cast<int>(I.size());
  for (const Idx& pos : combinations(n, k)) {
    Idx IA, IB;
    IA.reserve(k);
    IB.reserve(n - k);
    std::vector<bool> in_a(n, false);
    for (int r : pos) in_a[r] = true;
    for (int r = 0; r < n; ++r) (in_a[r] ? IA : IB).push_back(I[r]);
    const double sgn = shuffle_sign(pos);
    VecX<S> ca, cb;
    if constexpr (std::is_same_v<S, double>) {
      ca = a.c0(p, IA); cb = b.c0(p, IB);
    } else if constexpr (std::is_same_v<S, J1>) {
      ca = a.c1(p, IA); cb = b.c1(p, IB);
    } else {
      ca = a.c2(p, IA); cb = b.c2(p, IB);
    }
    out += sgn * prod(ca, cb);
  }
  return out;
}
}  // namespace detail

// Shuffle-sum wedge; prod combines the two coefficient values (scalar
// multiplication, an algebra bracket, an invariant pairing).
template <typename Prod>
Form wedge(const Form& a, const Form& b, int value_dim, Prod prod) {
  if (a.ambient != b.ambient) throw contract_error("wedge: ambient mismatch");
  if (a.degree + b.degree > a.ambient)
    throw contract_error("wedge: degree exceeds ambient dimension");
  Form w = Form::shell(a.ambient, a.degree + b.degree, value_dim,
                       std::min(a.max_level, b.max_level));
  const Form aa = a, bb = b;
  if (w.max_level >= 0)
    w.c0 = [aa, bb, value_dim, prod](const VecX<double>& p, const Idx& I) {
      return detail::wedge_coeff<double>(aa, bb, value_dim, prod, p, I);
    };
  if (w.max_level >= 1)
    w.c1 = [aa, bb, value_dim, prod](const VecX<J1>& p, const Idx& I) {
      return detail::wedge_coeff<J1>(aa, bb, value_dim, prod, p, I);
    };
  if (w.max_level >= 2)
    w.c2 = [aa, bb, value_dim, prod](const VecX<J2>& p, const Idx& I) {
      return detail::wedge_coeff<J2>(aa, bb, value_dim, prod, p, I);
    };
  return w;
}

inline Form wedge(const Form& a, const Form& b) {
  if (a.value_dim != 1 || b.value_dim != 1)
    throw contract_error("wedge: default product needs scalar forms");
  return wedge(a, b, 1, [](const auto& x, const auto& y) {
    return (x * y(0)).eval();
  });
}

}  // namespace grpd
