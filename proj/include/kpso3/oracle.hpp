#pragma once

#include "kpso3/liegroup.hpp"
#include "kpso3/orbitspace.hpp"

#include <cstdint>
#include <vector>

/// Independent brute-force estimator of minimum times, used to validate the
/// closed-form synthesis. Works directly on the control formulation: unit
/// norm piecewise-constant controls in the P directions, integrated by exact
/// per-step exponentials, searched by random restarts plus coordinate
/// descent under a bisection on the total horizon. Returns guaranteed upper
/// bounds; it never certifies lower bounds.
namespace kpso3 {

/// Piecewise-constant unit-norm control: direction (cos φᵢ, sin φᵢ) held for
/// dt each.
struct ControlSchedule {
    double dt = 0.0;
    std::vector<double> angles;
};

/// Exact product of step exponentials, applied in time order. No
/// integration drift: the result is orthogonal to roundoff regardless of
/// the schedule length.
GroupElement integrate(const ControlSchedule& c);

struct SearchBudget {
    int steps = 40;           ///< schedule length N
    int restarts = 10000;     ///< total random restarts across bisection levels
    std::uint64_t seed = 0;   ///< deterministic seed
    double orbit_tol = 0.02;  ///< acceptance radius around the target, disc units
    double time_tol = 1e-3;   ///< bisection resolution on the horizon
    int threads = 0;          ///< 0 = hardware concurrency
};

/// Thrown when no schedule reaching the target is found within budget.
struct NoEstimateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Upper bound on the minimum time to reach the orbit `target`: the smallest
/// bisected horizon whose search lands within orbit_tol of the target, plus
/// the acceptance radius (so the bound stays sound for the exact target).
/// Deterministic for a fixed budget, including thread count.
double estimate_min_time(const OrbitPoint& target, const SearchBudget& budget);

}  // namespace kpso3
