#pragma once

#include "kpso3/geodesics.hpp"
#include "kpso3/liegroup.hpp"
#include "kpso3/orbitspace.hpp"

#include <vector>

/// Minimum-time solver for the K-P problem on SO(3) at unit control norm.
///
/// The solve proceeds on the orbit-space half disc: targets on the singular
/// strata have closed-form minimum times (T = √(θ(4π-θ)) on the boundary
/// arc, T = π at the center, T = s on the lower diameter segment), interior
/// targets are found by a sweep over the reduced-geodesic parameter α with a
/// closed-form inner solve in t and Newton polishing. The returned pair
/// (A_k, A_p) is conjugated back into position so that the geodesic ends at
/// the requested group element, not just on its orbit.
namespace kpso3 {

/// Frobenius-norm tolerance for solver postconditions on group elements.
inline constexpr double kSolTol = 1e-7;

/// Thrown when the numeric parts of the solve fail to converge.
struct SolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Minimum time together with the reduced parameter achieving it.
struct BoundaryTime {
    double time = 0.0;
    double alpha = 0.0;
};

/// Full answer for one target: minimum time, reduced parameter, the geodesic
/// pair (A_k, A_p) reaching the target exactly, and the symmetry element
/// conjugating the reduced geodesic onto it.
struct SynthesisResult {
    double t_min = 0.0;
    double alpha = 0.0;
    AlgebraElement a_k;
    AlgebraElement a_p;
    SymmetryElement conjugator;
    GroupElement target;

    GeodesicSpec spec() const { return GeodesicSpec{a_k, a_p, 1.0}; }
};

/// Cut/critical locus membership of a target, with at least two distinct
/// minimizing geodesics as witnesses when the target is a cut point.
struct CutLocusReport {
    bool on_cut = false;
    bool on_critical = false;
    std::vector<GeodesicSpec> witnesses;
};

/// Minimum time to reach the boundary-arc orbit at angle θ ∈ (0, π]:
/// T = √(θ(4π-θ)), α = (2π-θ)/T.
BoundaryTime min_time_boundary(double theta);

/// Minimum time to the lower diameter segment point at arc parameter
/// s ∈ (0, π) (orbit (ρ = π - s, θ = 0)): T = s with α = 0.
BoundaryTime min_time_segment_ob(double s);

/// Minimum time to the disc center: T = π with α = 0.
BoundaryTime min_time_origin();

/// Time at which the reduced geodesic with parameter α ≥ 0 stops being
/// minimizing: π at α = 0, the first crossing of the upper diameter segment
/// (in (π, π√3)) for α ∈ (0, 1/√3), and the boundary arrival 2π/√(1+α²) for
/// α ≥ 1/√3.
double loss_of_optimality_time(double alpha);

/// Minimum time and reduced parameter for an orbit given directly in disc
/// coordinates: exactly the dispatch used by solve, without constructing a
/// representative or the conjugating element.
BoundaryTime min_time(const OrbitPoint& p);

/// Minimum-time synthesis for an arbitrary target.
SynthesisResult solve(const GroupElement& x_f);

/// Cut-locus classification with witness construction.
CutLocusReport cut_report(const GroupElement& x_f);

/// Checks the isotropy invariance each minimizer to a non-cut target must
/// satisfy: Ĥ·ad_{A_k}ⁿ(A_p)·Ĥ⁻¹ = ad_{A_k}ⁿ(A_p) for every Ĥ in the
/// isotropy group of x_f and every 0 ≤ n ≤ n_max.
bool isotropy_invariance_check(const GroupElement& x_f, const GeodesicSpec& g, int n_max);

}  // namespace kpso3
