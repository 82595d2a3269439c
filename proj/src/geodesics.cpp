#include "kpso3/geodesics.hpp"

#include <cmath>
#include <numbers>

namespace kpso3 {

namespace {
constexpr double kPi = std::numbers::pi;
}

GeodesicSpec make_geodesic_spec(const AlgebraElement& a_k, const AlgebraElement& a_p,
                                double speed) {
    if (speed <= 0.0) throw std::invalid_argument("speed must be positive");
    if (std::hypot(a_k.a(), a_k.b()) > kNumTol) {
        throw std::invalid_argument("a_k must lie in the K span");
    }
    if (std::abs(a_p.c()) > kNumTol) {
        throw std::invalid_argument("a_p must lie in the P span");
    }
    if (std::abs(a_p.norm() - speed) > kNumTol) {
        throw std::invalid_argument("a_p norm must equal the speed bound");
    }
    return GeodesicSpec{a_k, a_p, speed};
}

GroupElement geodesic_at(const GeodesicSpec& g, double t) {
    return exp(g.a_k, -t) * exp(g.a_k + g.a_p, t);
}

std::pair<double, double> optimal_control(const GeodesicSpec& g, double t) {
    const Eigen::Matrix3d r = exp(g.a_k, -t).matrix();
    const AlgebraElement u = AlgebraElement::from_matrix(r * g.a_p.matrix() * r.transpose());
    return {u.a(), u.b()};
}

Eigen::Matrix3d reduced_matrix(double alpha, double t) {
    const double a2 = alpha * alpha;
    const double omega = std::sqrt(1.0 + a2);
    const double c1 = std::cos(omega * t);
    const double c2 = std::sin(omega * t) / omega;
    const double c3 = alpha * (1.0 - c1) / (1.0 + a2);
    const double d = (1.0 + c1 * a2) / (1.0 + a2);
    const double ca = std::cos(alpha * t), sa = std::sin(alpha * t);

    Eigen::Matrix3d m;
    m << d * ca + c2 * alpha * sa, c1 * sa - c2 * alpha * ca, c3 * ca - c2 * sa,
        -d * sa + c2 * alpha * ca, c1 * ca + c2 * alpha * sa, -c2 * ca - c3 * sa,
        c3, c2, (c1 + a2) / (1.0 + a2);
    return m;
}

OrbitPoint reduced_projection(const ReducedGeodesic& r, double t, DiscMode mode) {
    const Eigen::Matrix3d m = reduced_matrix(r.alpha, r.speed * t);
    const double x33 = m(2, 2);
    const double rho = kPi - std::acos(std::clamp(x33, -1.0, 1.0));
    double theta = 0.0;
    const double denom = 1.0 + x33;
    if (denom > 1e-15) {
        // Uses the trace and the (3,3) entry only.
        const double arg = (m.trace() - x33) / denom;
        theta = std::acos(std::clamp(arg, -1.0, 1.0));
        if (mode == DiscMode::full_disc && m(1, 0) - m(0, 1) < 0.0 && theta > 0.0 &&
            theta < kPi) {
            theta = -theta;
        }
    }
    return make_orbit_point(rho, theta, mode);
}

std::vector<GroupElement> drift_reduce(const AlgebraElement& a, double t,
                                       std::span<const GroupElement> reachable) {
    if (std::hypot(a.a(), a.b()) > kNumTol) {
        throw std::invalid_argument("drift must lie in the K span");
    }
    const GroupElement shift = exp(a, t);
    std::vector<GroupElement> out;
    out.reserve(reachable.size());
    for (const GroupElement& u : reachable) out.push_back(shift * u);
    return out;
}

}  // namespace kpso3
