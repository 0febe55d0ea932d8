#include "grpd/principal.hpp"

namespace grpd {

namespace {

// omega = MC + T(psi) A(x) dx; the twist T is Ad_{g^{-1}} or nothing
Form potential_form(const MatrixLieGroup& G, const MatrixField& A, bool twist) {
  const int n0 = A.point_dim();
  const int d = G.dim();
  return Form::make(n0 + d, 1, d, [G, A, n0, d, twist](const auto& p, const Idx& I) {
    using S = typename std::decay_t<decltype(p)>::Scalar;
    const int i = I[0];
    VecX<S> psi = p.tail(d);
    if (i < n0) {
      VecX<S> x = p.head(n0);
      VecX<S> col = (A(x).col(i)).eval();
      if (twist) col = (ad_inverse_matrix<S>(G, psi) * col).eval();
      return col;
    }
    return (mc_matrix<S>(G, psi).col(i - n0)).eval();
  });
}

}  // namespace

ConnectionForm maurer_cartan_form(const MatrixLieGroup& G, int base_dim) {
  MatrixField zero = MatrixField::constant(base_dim, Mat::Zero(G.dim(), base_dim));
  return {G, base_dim, potential_form(G, zero, false)};
}

ConnectionForm twisted_form(const MatrixLieGroup& G, const MatrixField& A) {
  return {G, A.point_dim(), potential_form(G, A, true)};
}

ConnectionForm untwisted_form(const MatrixLieGroup& G, const MatrixField& A) {
  return {G, A.point_dim(), potential_form(G, A, false)};
}

ResidualReport check_bundle_action(const PrincipalGroupoidBundle& B,
                                   int n_samples, std::uint64_t seed) {
  const auto& G = B.base;
  const int n0 = G.dim_obj;
  const int d = B.group.dim();
  Rng rng(seed);
  ResidualReport rep;
  rep.add("action_covers_target", 0.0);
  rep.add("unit_acts_trivially", 0.0);
  rep.add("action_associativity", 0.0);
  rep.add("action_equivariance", 0.0);

  auto with_group = [n0, d](const Vec& x, const Vec& psi) {
    Vec p(n0 + d);
    p << x, psi;
    return p;
  };

  for (int k = 0; k < n_samples; ++k) {
    const Vec psi = B.sample_group(rng);

    const Vec y = G.sample_arrow(rng);
    const Vec p = with_group(G.s(y), psi);
    rep.track("action_covers_target", (B.act(y, p).head(n0) - G.t(y)).norm());

    const Vec x = G.sample_object(rng);
    const Vec px = with_group(x, psi);
    rep.track("unit_acts_trivially", (B.act(G.e(x), px) - px).norm());

    auto [z, yp] = G.sample_pair(rng);
    const Vec q = with_group(G.s(yp), psi);
    rep.track("action_associativity",
              (B.act(z, B.act(yp, q)) - B.act(G.compose(z, yp), q)).norm());

    const Vec eta = B.sample_group(rng);
    const Vec pg = with_group(G.s(y), chart_product<double>(B.group, psi, eta));
    const Vec yp_res = B.act(y, p);
    Vec yp_then_g(n0 + d);
    yp_then_g << yp_res.head(n0),
        chart_product<double>(B.group, Vec(yp_res.tail(d)), eta);
    rep.track("action_equivariance", (B.act(y, pg) - yp_then_g).norm());
  }
  return rep;
}

ResidualReport check_connection_form(const PrincipalGroupoidBundle& B,
                                     const ConnectionForm& w, int n_samples,
                                     std::uint64_t seed) {
  const int n0 = w.base_dim;
  const int d = w.group.dim();
  const int n = n0 + d;
  Rng rng(seed);
  ResidualReport rep;
  rep.add("fundamental_vector", 0.0);
  rep.add("ad_equivariance", 0.0);

  for (int k = 0; k < n_samples; ++k) {
    Vec x = B.base.sample_object(rng);
    Vec psi = B.sample_group(rng);
    Vec p(n);
    p << x, psi;

    // zeta_xi at p: d/dt chart(psi . exp(t xi)) at t = 0
    for (int a = 0; a < d; ++a) {
      VecX<J1> psi1 = psi.cast<J1>();
      VecX<J1> tb(d);
      for (int r = 0; r < d; ++r) tb[r] = J1(0.0, r == a ? 1.0 : 0.0);
      VecX<J1> moved = chart_product<J1>(w.group, psi1, tb);
      Mat V = Mat::Zero(n, 1);
      for (int r = 0; r < d; ++r) V(n0 + r, 0) = moved[r].d;
      rep.track("fundamental_vector",
                (evaluate(w.omega, p, V) - Vec::Unit(d, a)).norm());
    }

    // R_g^* omega = Ad_{g^{-1}} omega
    const Vec eta = B.sample_group(rng);
    const MatrixLieGroup group = w.group;
    SmoothMap Rg(n, n, [group, eta, n0, d](const auto& q) {
      using S = typename std::decay_t<decltype(q)>::Scalar;
      VecX<S> out(n0 + d);
      out.head(n0) = q.head(n0);
      out.tail(d) =
          chart_product<S>(group, VecX<S>(q.tail(d)), VecX<S>(eta.cast<S>()));
      return out;
    });
    Form pulled = pullback(Rg, w.omega);
    Mat ad_inv = ad_inverse_matrix<double>(w.group, eta);
    for (int i = 0; i < n; ++i) {
      Mat V = Mat::Zero(n, 1);
      V(i, 0) = 1.0;
      rep.track("ad_equivariance",
                (evaluate(pulled, p, V) - ad_inv * evaluate(w.omega, p, V)).norm());
    }
  }
  return rep;
}

ResidualReport check_groupoid_compatibility(const PrincipalGroupoidBundle& B,
                                            const ConnectionForm& w,
                                            int n_samples, std::uint64_t seed) {
  const auto& G = B.base;
  const int n0 = G.dim_obj;
  const int n1 = G.dim_arr;
  const int d = B.group.dim();
  const SmoothMap action = B.action;
  const SmoothMap src = G.s;

  // s*E_G parametrized by (gamma, psi)
  SmoothMap shat(n1 + d, n0 + d, [src, n0, n1, d](const auto& a) {
    using S = typename std::decay_t<decltype(a)>::Scalar;
    VecX<S> out(n0 + d);
    out.head(n0) = src(VecX<S>(a.head(n1)));
    out.tail(d) = a.tail(d);
    return out;
  });
  SmoothMap that(n1 + d, n0 + d, [action, src, n0, n1, d](const auto& a) {
    using S = typename std::decay_t<decltype(a)>::Scalar;
    VecX<S> gamma = a.head(n1);
    VecX<S> q(n1 + n0 + d);
    q << gamma, src(gamma), VecX<S>(a.tail(d));
    return action(q);
  });

  Form ps = pullback(shat, w.omega);
  Form pt = pullback(that, w.omega);

  Rng rng(seed);
  ResidualReport rep;
  rep.add("compatibility", 0.0);
  for (int k = 0; k < n_samples; ++k) {
    const Vec y = G.sample_arrow(rng);
    const Vec psi = B.sample_group(rng);
    Vec a(n1 + d);
    a << y, psi;
    for (int i = 0; i < n1 + d; ++i) {
      Mat V = Mat::Zero(n1 + d, 1);
      V(i, 0) = 1.0;
      rep.track("compatibility", (evaluate(ps, a, V) - evaluate(pt, a, V)).norm());
    }
  }
  return rep;
}

AtiyahSplitting split_from_form(const PrincipalGroupoidBundle& B,
                                const ConnectionForm& w) {
  const int n0 = w.base_dim;
  const int d = w.group.dim();
  const Form omega = w.omega;
  MatrixField A(n0, d, n0, [omega, n0, d](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    VecX<S> p = VecX<S>::Zero(n0 + d);
    p.head(n0) = x;
    MatX<S> out(d, n0);
    for (int i = 0; i < n0; ++i) out.col(i) = omega.template coeff_t<S>(p, {i});
    return out;
  });
  return {w.group, n0, A};
}

ConnectionForm form_from_split(const PrincipalGroupoidBundle& B,
                               const AtiyahSplitting& D) {
  (void)B;
  return twisted_form(D.group, D.A);
}

Form curvature(const PrincipalGroupoidBundle& B, const ConnectionForm& w) {
  AtiyahSplitting D = split_from_form(B, w);
  const int n0 = w.base_dim;
  const int d = w.group.dim();
  const MatrixField A = D.A;
  Form a_form = Form::make(n0, 1, d, [A](const auto& x, const Idx& I) {
    return (A(x).col(I[0])).eval();
  });
  const auto SC = structure_constants(w.group);
  Form comm = wedge(a_form, a_form, d, [SC](const auto& u, const auto& v) {
    return bracket_coords(SC, u, v);
  });
  return form_sum(exterior_derivative(a_form), form_scaled(0.5, comm));
}

Vec curvature_oracle(const ConnectionForm& w, const Vec& x, int i, int j) {
  const int n0 = w.base_dim;
  const int d = w.group.dim();
  const int n = n0 + d;
  const Form omega = w.omega;

  auto lift = [omega, n0, d, n](int dir) {
    return VectorField(n, [omega, n0, d, n, dir](const auto& p) {
      using S = typename std::decay_t<decltype(p)>::Scalar;
      MatX<S> Wx(d, n0), Wpsi(d, d);
      for (int a = 0; a < n0; ++a) Wx.col(a) = omega.template coeff_t<S>(p, {a});
      for (int b = 0; b < d; ++b)
        Wpsi.col(b) = omega.template coeff_t<S>(p, {n0 + b});
      VecX<S> out = VecX<S>::Zero(n);
      out[dir] = S(1);
      out.tail(d) =
          (-Eigen::PartialPivLU<MatX<S>>(Wpsi).solve(VecX<S>(Wx.col(dir)))).eval();
      return out;
    });
  };

  Vec p0 = Vec::Zero(n);
  p0.head(n0) = x;
  Vec br = lie_bracket(lift(i), lift(j), p0);
  return -evaluate(w.omega, p0, Mat(br));
}

ChernWeilResult chern_weil(const PrincipalGroupoidBundle& B,
                           const ConnectionForm& w, int k,
                           const InvariantPolynomial& nu,
                           const GroupoidConnection* C, int n_samples,
                           std::uint64_t seed) {
  const int n0 = w.base_dim;
  ChernWeilResult res;
  if (2 * k > n0) {
    res.degree_overflow = true;
    res.form = Form::make(n0, n0, 1, [](const auto& p, const Idx&) {
      using S = typename std::decay_t<decltype(p)>::Scalar;
      return VecX<S>(VecX<S>::Zero(1));
    });
    res.report.add("chern_weil_closedness", 0.0);
    return res;
  }
  if (nu.degree != k) throw contract_error("chern_weil: polynomial degree mismatch");

  const Form F = curvature(B, w);
  const MatrixLieGroup group = w.group;
  const double norm = 1.0 / (std::pow(2.0, k) * std::tgamma(k + 1.0));

  auto coeff = [F, group, k, norm, nu](const auto& p, const Idx& I) {
    using S = typename std::decay_t<decltype(p)>::Scalar;
    const int m = 2 * k;
    // curvature components as matrices, all pairs from I
    std::vector<std::vector<MatX<S>>> comp(m, std::vector<MatX<S>>(m));
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        VecX<S> c = F.template coeff_t<S>(p, {I[a], I[b]});
        comp[a][b] = group.algebra_element<S>(c);
        comp[b][a] = (-comp[a][b]).eval();
      }
    std::vector<int> perm(m);
    for (int r = 0; r < m; ++r) perm[r] = r;
    S total = S(0);
    do {
      int inv = 0;
      for (int r = 0; r < m; ++r)
        for (int q = r + 1; q < m; ++q)
          if (perm[r] > perm[q]) ++inv;
      std::vector<MatX<S>> args;
      args.reserve(k);
      for (int t = 0; t < k; ++t) args.push_back(comp[perm[2 * t]][perm[2 * t + 1]]);
      S term = eval_poly_t<S>(nu, args);
      total += (inv % 2 == 0) ? term : -term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    VecX<S> out(1);
    out[0] = total * S(norm);
    return out;
  };

  // curvature carries one jet level, so the characteristic form does too
  res.form = Form::shell(n0, 2 * k, 1, F.max_level);
  res.form.c0 = [coeff](const VecX<double>& p, const Idx& I) { return coeff(p, I); };
  if (res.form.max_level >= 1)
    res.form.c1 = [coeff](const VecX<J1>& p, const Idx& I) { return coeff(p, I); };

  // closedness at sampled points on spanning tuples
  Rng rng(derive_seed(seed, "chern_weil_closedness"));
  res.report.add("chern_weil_closedness", 0.0);
  if (2 * k < n0 && res.form.max_level >= 1) {
    Form dcw = exterior_derivative(res.form);
    for (int s = 0; s < n_samples; ++s) {
      const Vec x = B.base.sample_object(rng);
      for (const Idx& I : detail::combinations(n0, 2 * k + 1)) {
        Mat V = Mat::Zero(n0, 2 * k + 1);
        for (int c = 0; c <= 2 * k; ++c) V(I[c], c) = 1.0;
        res.report.track("chern_weil_closedness", evaluate(dcw, x, V).norm());
      }
    }
  }

  if (C) {
    ResidualReport gf =
        check_groupoid_form(*C, res.form, n_samples, derive_seed(seed, "cw_gform"));
    res.report.add("chern_weil_groupoid_form", gf.get("groupoid_form"));
  }
  return res;
}

std::pair<PrincipalGroupoidBundle, ConnectionForm> pullback_bundle(
    const GroupoidMorphism& phi, const PrincipalGroupoidBundle& B,
    const ConnectionForm& w) {
  const LieGroupoid X = phi.source;
  const int n1 = X.dim_arr;
  const int n0 = X.dim_obj;
  const int d = B.group.dim();
  const SmoothMap phi0 = phi.phi0, phi1 = phi.phi1, tX = X.t;
  const SmoothMap action = B.action;
  const int m1 = phi.target.dim_arr;
  const int m0 = phi.target.dim_obj;

  PrincipalGroupoidBundle out;
  out.base = X;
  out.group = B.group;
  out.sample_group = B.sample_group;
  out.action =
      SmoothMap(n1 + n0 + d, n0 + d,
                [phi0, phi1, tX, action, n1, n0, d, m1, m0](const auto& a) {
                  using S = typename std::decay_t<decltype(a)>::Scalar;
                  VecX<S> gamma = a.head(n1);
                  VecX<S> q(m1 + m0 + d);
                  q << phi1(gamma), phi0(VecX<S>(a.segment(n1, n0))),
                      VecX<S>(a.tail(d));
                  VecX<S> r = action(q);
                  VecX<S> o(n0 + d);
                  o << tX(gamma), VecX<S>(r.tail(d));
                  return o;
                });

  SmoothMap base_change(n0 + d, w.base_dim + d, [phi0, n0, d](const auto& p) {
    using S = typename std::decay_t<decltype(p)>::Scalar;
    VecX<S> o(phi0.codomain_dim() + d);
    o << phi0(VecX<S>(p.head(n0))), VecX<S>(p.tail(d));
    return o;
  });
  ConnectionForm pulled{w.group, n0, pullback(base_change, w.omega)};
  return {out, pulled};
}

}  // namespace grpd
