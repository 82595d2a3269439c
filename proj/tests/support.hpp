#pragma once

#include "kpso3/geodesics.hpp"
#include "kpso3/liegroup.hpp"

#include <functional>
#include <random>

// Shared helpers for the test suites: deterministic random sampling of
// algebra/group/symmetry elements and a small RK4 integrator used as an
// independent oracle for the closed-form curves.
namespace kpso3::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline AlgebraElement random_algebra(std::mt19937_64& rng, double scale = 2.0) {
    return {uniform(rng, -scale, scale), uniform(rng, -scale, scale),
            uniform(rng, -scale, scale)};
}

inline GroupElement random_rotation(std::mt19937_64& rng) {
    Eigen::Vector3d axis(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0),
                         uniform(rng, -1.0, 1.0));
    while (axis.norm() < 1e-3) {
        axis = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    }
    axis.normalize();
    const double angle = uniform(rng, 0.0, std::numbers::pi);
    return exp(AlgebraElement(axis), angle);
}

inline SymmetryElement random_symmetry(std::mt19937_64& rng) {
    const double angle = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    return uniform(rng, 0.0, 1.0) < 0.5 ? SymmetryElement::plus(angle)
                                        : SymmetryElement::minus(angle);
}

// Unit-norm geodesic parameters with a random P direction.
inline GeodesicSpec random_unit_spec(std::mt19937_64& rng, double k_scale = 2.0) {
    const double phi = uniform(rng, -std::numbers::pi, std::numbers::pi);
    const AlgebraElement a_p(std::cos(phi), std::sin(phi), 0.0);
    const AlgebraElement a_k(0.0, 0.0, uniform(rng, -k_scale, k_scale));
    return make_geodesic_spec(a_k, a_p, 1.0);
}

// Classic RK4 on the matrix ODE X' = U(t)·X from the identity.
inline Eigen::Matrix3d rk4_integrate(const std::function<Eigen::Matrix3d(double)>& u,
                                     double t_end, double dt) {
    Eigen::Matrix3d x = Eigen::Matrix3d::Identity();
    double t = 0.0;
    while (t < t_end - 1e-15) {
        const double h = std::min(dt, t_end - t);
        const Eigen::Matrix3d k1 = u(t) * x;
        const Eigen::Matrix3d k2 = u(t + 0.5 * h) * (x + 0.5 * h * k1);
        const Eigen::Matrix3d k3 = u(t + 0.5 * h) * (x + 0.5 * h * k2);
        const Eigen::Matrix3d k4 = u(t + h) * (x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }
    return x;
}

}  // namespace kpso3::testing
