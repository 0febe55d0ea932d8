#pragma once

// Connections on Lie groupoids: horizontal distributions, the transport
// maps theta, the two connection axioms, flatness, the composition
// obstruction, pullback along morphisms, and the tangent-transport
// groupoid constructions.

#include "grpd/groupoid.hpp"

namespace grpd {

// A horizontal distribution complementary to ker(ds), presented by a
// global frame: y |-> dim_arr x dim_obj matrix spanning H_y.
struct GroupoidConnection {
  LieGroupoid base;
  MatrixField frame;
};

struct TransportMap {
  Vec base_point;  // y in X1
  Mat theta;       // dim_obj x dim_obj, dt o (d_H s)^{-1}
};

// ker(ds) at y. Throws submersion_error if the rank is not
// dim_arr - dim_obj.
SubspaceBasis vertical_space(const LieGroupoid& G, const Vec& y);

// Horizontal lift operator at y: dim_arr x dim_obj matrix L with
// ds L = Id and columns in H_y.
Mat horizontal_lift(const GroupoidConnection& C, const Vec& y);

TransportMap theta(const GroupoidConnection& C, const Vec& y);

// Jet-level theta for use inside derived structure maps.
template <typename S>
MatX<S> theta_jet(const GroupoidConnection& C, const VecX<S>& y) {
  MatX<S> ds = detail::jacobian_seeded<S>(C.base.s, y);
  MatX<S> dt = detail::jacobian_seeded<S>(C.base.t, y);
  return dt * restricted_inverse_jet<S>(ds, C.frame(y));
}

// Axiom (i): image(de(x)) coincides with H_{e(x)}.
ResidualReport check_unit_axiom(const GroupoidConnection& C, int n_samples,
                                std::uint64_t seed);

// Axiom (ii): theta_{m(z,y)} = theta_z theta_y on composable pairs.
ResidualReport check_composition_axiom(const GroupoidConnection& C, int n_pairs,
                                       std::uint64_t seed);

// Defect of horizontal lifting under composition. The difference vector
// lies in ker(dt) whenever axiom (ii) holds.
struct Obstruction {
  Vec K;            // in T_{m(z,y)} X1
  double dt_K_norm;  // ||dt(K)||
};
Obstruction obstruction_K(const GroupoidConnection& C, const Vec& z,
                          const Vec& y, const Vec& v);

// max ||K|| over sampled pairs and spanning directions; K == 0 iff
// horizontal lifting is a functor into the tangent groupoid.
ResidualReport check_functor_property(const GroupoidConnection& C, int n_pairs,
                                      std::uint64_t seed);

// Pointwise involutivity of the frame at samples (flatness at desk scale).
ResidualReport check_integrable(const GroupoidConnection& C, int n_samples,
                                std::uint64_t seed);

// Direct-sum diagnostic: rank and conditioning of [K_y | H_y].
ResidualReport check_transversal(const GroupoidConnection& C, int n_samples,
                                 std::uint64_t seed);

// Induced connection on the source of phi. For dimension-reducing Morita
// morphisms the preimage of H alone is too large; the surplus is cut by
// matching the ker(dphi0) components of ds and dt, which assumes that
// ker(dphi0) is a fixed coordinate subspace (true for every shipped
// example). Throws pullback_degenerate_error on rank collapse.
GroupoidConnection pullback_connection(const GroupoidMorphism& phi,
                                       const GroupoidConnection& C_target);

// [Y1 => TX0] with s'(g,v) = (s(g), v), t'(g,v) = (t(g), theta_g v),
// m'((z,.),(y,v)) = (m(z,y), v).
LieGroupoid transport_groupoid(const GroupoidConnection& C);

// The same construction presented as the groupoid structure on s*TX0.
LieGroupoid s_star_groupoid(const GroupoidConnection& C);

// [t*TX0 => TX0]: composite keeps the target-slot vector.
LieGroupoid t_star_groupoid(const GroupoidConnection& C);

// (g, v) -> (g, theta_g v) as a morphism s*TX0 -> t*TX0; reports the
// morphism residuals and the smallest singular value of theta_g.
ResidualReport theta_iso_check(const GroupoidConnection& C, int n_samples,
                               std::uint64_t seed);

}  // namespace grpd
