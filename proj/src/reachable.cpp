#include "kpso3/reachable.hpp"

#include "kpso3/synthesis.hpp"

#include <cmath>
#include <numbers>

namespace kpso3 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt3 = 0.57735026918962576451;

OrbitPoint point_at(double alpha, double t) {
    return reduced_projection(ReducedGeodesic{alpha, 1.0}, t);
}

// Parameter at which the sweep meets the boundary arc: the geodesic returns
// to radius π when √(1+α²)·T = 2π.
double boundary_alpha(double t) {
    const double w = 2.0 * kPi / t;
    return std::sqrt(w * w - 1.0);
}

// Parameter whose geodesic lost optimality on the upper segment exactly at
// time T; loss time is increasing in alpha on (0, 1/√3).
double start_alpha(double t) {
    double lo = 1e-9, hi = kInvSqrt3;
    for (int i = 0; i < 70; ++i) {
        const double mid = 0.5 * (lo + hi);
        (loss_of_optimality_time(mid) < t ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

FrontierCurve frontier(double t, double h_max, bool consistency_filter) {
    if (!(t > 0.0) || t > std::sqrt(3.0) * kPi + 1e-9) {
        throw std::invalid_argument("frontier time must lie in (0, pi*sqrt(3)]");
    }
    if (h_max <= 0.0) throw std::invalid_argument("arc step must be positive");

    const double a_hi = boundary_alpha(std::min(t, std::sqrt(3.0) * kPi));
    const double a_lo = t < kPi ? 0.0 : std::min(start_alpha(t), a_hi);

    FrontierCurve curve;
    curve.time = t;

    // Seed nonuniformly (the curve moves faster in alpha near the ends),
    // then refine adjacent pairs to the arc-step contract.
    const int seed = 64;
    std::vector<double> alphas;
    alphas.reserve(seed + 1);
    for (int i = 0; i <= seed; ++i) {
        const double u = static_cast<double>(i) / seed;
        alphas.push_back(a_lo + (a_hi - a_lo) * u * u);
    }

    std::vector<std::pair<double, OrbitPoint>> samples;
    for (double a : alphas) samples.emplace_back(a, point_at(a, t));

    for (std::size_t i = 0; i + 1 < samples.size();) {
        const auto& [a0, p0] = samples[i];
        const auto& [a1, p1] = samples[i + 1];
        if (orbit_distance(p0, p1) > h_max && a1 - a0 > 1e-12) {
            const double mid = 0.5 * (a0 + a1);
            samples.insert(samples.begin() + i + 1, {mid, point_at(mid, t)});
        } else {
            ++i;
        }
    }

    if (consistency_filter) {
        for (const auto& [a, p] : samples) {
            if (std::abs(min_time(p).time - t) <= 1e-4) curve.samples.emplace_back(a, p);
        }
    } else {
        curve.samples = std::move(samples);
    }
    return curve;
}

bool reachable_contains(double t, const OrbitPoint& p) {
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
    return min_time(p).time <= t + kSolTol;
}

}  // namespace kpso3
