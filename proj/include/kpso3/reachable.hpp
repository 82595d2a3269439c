#pragma once

#include "kpso3/geodesics.hpp"
#include "kpso3/orbitspace.hpp"

#include <vector>

/// Boundaries of the projected reachable sets on the orbit-space half disc,
/// as parametric curves over the reduced-geodesic parameter α. For T < π the
/// sweep starts at α = 0 on the lower diameter segment; for T ≥ π it starts
/// at the α whose geodesic lost optimality on the upper segment exactly at
/// time T; either way it ends where the curve meets the boundary arc.
namespace kpso3 {

struct FrontierCurve {
    double time = 0.0;
    std::vector<std::pair<double, OrbitPoint>> samples;  ///< ordered by alpha
};

/// Frontier of the projected reachable set at time T ∈ (0, π√3], densified
/// so that consecutive samples are within arc step h_max of each other.
/// When consistency_filter is set, swept points whose minimum time disagrees
/// with T by more than 1e-4 are dropped (the sweep can overshoot the exact
/// boundary endpoints by roundoff).
FrontierCurve frontier(double t, double h_max = 0.01, bool consistency_filter = true);

/// Membership test for the projected reachable set: true iff the minimum
/// time of the orbit is at most T (within the solver tolerance).
bool reachable_contains(double t, const OrbitPoint& p);

}  // namespace kpso3
