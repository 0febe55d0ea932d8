#pragma once

// Principal G-bundles over a groupoid with trivialized total space
// X0 x G. Group directions use the exponential chart, so every bundle
// object is a SmoothMap or Form on flat coordinates (x, psi) with
// g = exp(hat psi).

#include "grpd/forms.hpp"
#include "grpd/liegroup.hpp"

namespace grpd {

struct PrincipalGroupoidBundle {
  LieGroupoid base;
  MatrixLieGroup group;
  // (gamma, x, psi) -> (x', psi'), defined where s(gamma) = x
  SmoothMap action;
  std::function<Vec(Rng&)> sample_group;  // chart coordinates

  int total_dim() const { return base.dim_obj + group.dim(); }

  Vec act(const Vec& gamma, const Vec& p) const {
    Vec q(base.dim_arr + total_dim());
    q << gamma, p;
    return action(q);
  }
};

// g-valued 1-form on the total space; value coordinates in the algebra
// basis of `group`.
struct ConnectionForm {
  MatrixLieGroup group;
  int base_dim = 0;
  Form omega;  // ambient base_dim + dim(group), degree 1, value_dim dim(group)
};

// Splitting of the Atiyah sequence in the right-translation framing:
// D(v) = (v, -A(x) v).
struct AtiyahSplitting {
  MatrixLieGroup group;
  int base_dim = 0;
  MatrixField A;  // dim(group) x base_dim
};

// --- chart matrices --------------------------------------------------------

template <typename S>
MatX<S> chart_inverse(const MatX<S>& E) {
  return Eigen::PartialPivLU<MatX<S>>(E).solve(
      MatX<S>::Identity(E.rows(), E.cols()));
}

// column j = coordinates of exp(-hat psi) d/dpsi_j exp(hat psi)
template <typename S>
MatX<S> mc_matrix(const MatrixLieGroup& G, const VecX<S>& psi) {
  const int d = G.dim();
  const int n = G.matrix_size;
  MatX<S> Einv = chart_inverse(expm<S>(G.algebra_element<S>(psi)));
  MatX<S> out(d, d);
  for (int j = 0; j < d; ++j) {
    VecX<Dual<S>> q(d);
    for (int k = 0; k < d; ++k) q[k] = Dual<S>(psi[k], S(k == j ? 1 : 0));
    MatX<Dual<S>> Eq = expm<Dual<S>>(G.algebra_element<Dual<S>>(q));
    MatX<S> dE(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) dE(r, c) = Eq(r, c).d;
    out.col(j) = G.algebra_coords_t<S>((Einv * dE).eval());
  }
  return out;
}

// matrix of Ad_{g^{-1}}, g = exp(hat psi), in basis coordinates
template <typename S>
MatX<S> ad_inverse_matrix(const MatrixLieGroup& G, const VecX<S>& psi) {
  const int d = G.dim();
  MatX<S> E = expm<S>(G.algebra_element<S>(psi));
  MatX<S> Einv = chart_inverse(E);
  MatX<S> out(d, d);
  for (int k = 0; k < d; ++k)
    out.col(k) =
        G.algebra_coords_t<S>((Einv * G.algebra_basis[k].cast<S>() * E).eval());
  return out;
}

// --- connection forms ------------------------------------------------------

// omega = g^{-1} dg in the chart (zero gauge potential)
ConnectionForm maurer_cartan_form(const MatrixLieGroup& G, int base_dim);

// omega = MC + Ad_{g^{-1}}(A(x) dx); passes equivariance for any A
ConnectionForm twisted_form(const MatrixLieGroup& G, const MatrixField& A);

// omega = MC + A(x) dx without the adjoint twist; equivariant only for
// abelian groups (kept as a failing fixture for nonabelian G)
ConnectionForm untwisted_form(const MatrixLieGroup& G, const MatrixField& A);

// --- checks ----------------------------------------------------------------

ResidualReport check_bundle_action(const PrincipalGroupoidBundle& B,
                                   int n_samples, std::uint64_t seed);

ResidualReport check_connection_form(const PrincipalGroupoidBundle& B,
                                     const ConnectionForm& w, int n_samples,
                                     std::uint64_t seed);

ResidualReport check_groupoid_compatibility(const PrincipalGroupoidBundle& B,
                                            const ConnectionForm& w,
                                            int n_samples, std::uint64_t seed);

// --- Atiyah splitting ------------------------------------------------------

AtiyahSplitting split_from_form(const PrincipalGroupoidBundle& B,
                                const ConnectionForm& w);

ConnectionForm form_from_split(const PrincipalGroupoidBundle& B,
                               const AtiyahSplitting& D);

// --- curvature and characteristic forms ------------------------------------

// F = dA + (1/2)[A wedge A] on X0; degree 2, algebra-valued
Form curvature(const PrincipalGroupoidBundle& B, const ConnectionForm& w);

// Independent route: algebra coordinates of -omega([h_i, h_j]) at
// (x, psi = 0), with h_i the horizontal lifts of the coordinate fields.
Vec curvature_oracle(const ConnectionForm& w, const Vec& x, int i, int j);

struct ChernWeilResult {
  Form form;  // degree 2k on X0, scalar
  ResidualReport report;
  bool degree_overflow = false;
};

// nu(F,..,F) with antisymmetrized slots; reports closedness and, when a
// base connection is supplied, the groupoid-form residual.
ChernWeilResult chern_weil(const PrincipalGroupoidBundle& B,
                           const ConnectionForm& w, int k,
                           const InvariantPolynomial& nu,
                           const GroupoidConnection* C, int n_samples,
                           std::uint64_t seed);

// Base change along a morphism into the base of B; the connection form
// pulls back along (x, psi) -> (phi0(x), psi).
std::pair<PrincipalGroupoidBundle, ConnectionForm> pullback_bundle(
    const GroupoidMorphism& phi, const PrincipalGroupoidBundle& B,
    const ConnectionForm& w);

}  // namespace grpd
