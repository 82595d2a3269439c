#pragma once

#include "kpso3/liegroup.hpp"
#include "kpso3/orbitspace.hpp"

#include <span>
#include <vector>

/// Closed-form minimizing geodesics of the K-P problem on SO(3): curves
/// X(t) = e^{-A_k t}·e^{(A_k + A_p) t} driven by controls of constant norm in
/// the P directions. Every geodesic is conjugate under G to a reduced one
/// with A_k = α·k and A_p = p1, whose orbit-space projection has an explicit
/// trigonometric form used throughout the synthesis.
namespace kpso3 {

/// Parameters (A_k, A_p) of a geodesic, with ‖A_p‖ equal to the control-norm
/// bound `speed`. A_k must be a pure K element and A_p a pure P element.
struct GeodesicSpec {
    AlgebraElement a_k;
    AlgebraElement a_p;
    double speed = 1.0;
};

/// Validating factory; throws std::invalid_argument when a_k has a P
/// component, a_p has a K component, or ‖a_p‖ differs from speed > 0.
GeodesicSpec make_geodesic_spec(const AlgebraElement& a_k, const AlgebraElement& a_p,
                                double speed = 1.0);

/// Geodesic position X(t) = e^{-A_k t}·e^{(A_k + A_p) t}; X(0) = identity.
GroupElement geodesic_at(const GeodesicSpec& g, double t);

/// Coordinates (u1, u2) in {p1, p2} of the control steering the system along
/// the geodesic, i.e. of e^{-A_k t}·A_p·e^{A_k t}. The norm equals g.speed
/// for all t.
std::pair<double, double> optimal_control(const GeodesicSpec& g, double t);

/// Reduced geodesic class [e^{-α k t}·e^{(α k + p1) t}] at unit speed. Orbit
/// projections are even in α, so α ≥ 0 covers all classes.
struct ReducedGeodesic {
    double alpha = 0.0;
    double speed = 1.0;
};

/// The closed-form matrix of the reduced geodesic at unit speed, transcribed
/// entrywise from the trigonometric solution in C1 = cos(√(1+α²) t),
/// C2 = sin(√(1+α²) t)/√(1+α²), C3 = α(1-C1)/(1+α²). Agrees with
/// geodesic_at(α k, p1, t) to roundoff; both routes are kept as a guard
/// against transcription drift.
Eigen::Matrix3d reduced_matrix(double alpha, double t);

/// Orbit-space projection of the reduced geodesic at time t, computed from
/// the (3,3) entry and the trace of the closed form only.
OrbitPoint reduced_projection(const ReducedGeodesic& r, double t,
                              DiscMode mode = DiscMode::half_disc);

/// Reachable-set transform for the drifted system Ẋ = A X + Σ uⱼ Bⱼ X with
/// A in the K span: maps the driftless reachable set at time t to the
/// drifted one, U ↦ e^{A t}·U. Throws std::invalid_argument if A has a P
/// component.
std::vector<GroupElement> drift_reduce(const AlgebraElement& a, double t,
                                       std::span<const GroupElement> reachable);

}  // namespace kpso3
