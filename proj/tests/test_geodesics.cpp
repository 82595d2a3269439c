#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kpso3/geodesics.hpp"
#include "support.hpp"

#include <numbers>

using namespace kpso3;
using kpso3::testing::make_rng;
using kpso3::testing::random_symmetry;
using kpso3::testing::random_unit_spec;
using kpso3::testing::rk4_integrate;
using kpso3::testing::uniform;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

TEST_CASE("geodesic spec validation") {
    CHECK_THROWS_AS(make_geodesic_spec(AlgebraElement::p1(), AlgebraElement::p1(), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_geodesic_spec(AlgebraElement::k(), AlgebraElement::k(), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_geodesic_spec(AlgebraElement::k(), AlgebraElement::p1() * 2.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_geodesic_spec(AlgebraElement::k(), AlgebraElement::p1(), -1.0),
                    std::invalid_argument);
    CHECK_NOTHROW(make_geodesic_spec(AlgebraElement::k() * 0.5, AlgebraElement::p1() * 2.0, 2.0));
}

TEST_CASE("geodesic starts at the identity and runs along H when A_k = 0") {
    auto rng = make_rng(301);
    const GeodesicSpec g = random_unit_spec(rng);
    CHECK(distance(geodesic_at(g, 0.0), GroupElement::identity()) == 0.0);

    const GeodesicSpec straight = make_geodesic_spec(AlgebraElement{}, AlgebraElement::p1(), 1.0);
    for (double s : {0.4, 1.1, 2.7}) {
        CHECK(distance(geodesic_at(straight, s), rotation_h(s)) < 1e-14);
    }
}

TEST_CASE("vertical entry of the reduced geodesic") {
    for (double alpha : {0.0, 0.3, 1.0, 2.5}) {
        for (double t : {0.2, 1.0, 2.0, 4.0}) {
            const GeodesicSpec g =
                make_geodesic_spec(AlgebraElement::k() * alpha, AlgebraElement::p1(), 1.0);
            const double w = std::sqrt(1.0 + alpha * alpha);
            const double expected =
                (std::cos(w * t) + alpha * alpha) / (1.0 + alpha * alpha);
            CHECK(geodesic_at(g, t).matrix()(2, 2) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("closed-form transcription matches the exponential route entrywise") {
    for (int i = 0; i <= 60; ++i) {
        const double alpha = 3.0 * i / 60.0;
        const GeodesicSpec g =
            make_geodesic_spec(AlgebraElement::k() * alpha, AlgebraElement::p1(), 1.0);
        for (int j = 1; j <= 60; ++j) {
            const double t = kSqrt3 * kPi * j / 60.0;
            const Eigen::Matrix3d diff = reduced_matrix(alpha, t) - geodesic_at(g, t).matrix();
            CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("reduced projections hit the distinguished points") {
    const OrbitPoint center = reduced_projection(ReducedGeodesic{0.0}, kPi);
    CHECK(center.rho == doctest::Approx(0.0).epsilon(1e-9));

    const OrbitPoint a = reduced_projection(ReducedGeodesic{1.0 / kSqrt3}, kSqrt3 * kPi);
    CHECK(a.rho == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(a.theta == doctest::Approx(kPi).epsilon(1e-6));

    for (double alpha : {0.58, 1.0, 3.0, 10.0}) {
        const double t = 2.0 * kPi / std::sqrt(1.0 + alpha * alpha);
        CHECK(reduced_projection(ReducedGeodesic{alpha}, t).rho ==
              doctest::Approx(kPi).epsilon(1e-9));
    }
}

TEST_CASE("reduced projection equals the projected exponential route") {
    auto rng = make_rng(307);
    for (int i = 0; i < 100; ++i) {
        const double alpha = uniform(rng, 0.0, 4.0);
        const double t = uniform(rng, 0.0, kSqrt3 * kPi);
        const GeodesicSpec g =
            make_geodesic_spec(AlgebraElement::k() * alpha, AlgebraElement::p1(), 1.0);
        const OrbitPoint p = reduced_projection(ReducedGeodesic{alpha}, t);
        const OrbitPoint q = project(geodesic_at(g, t));
        CHECK(orbit_distance(p, q) < kNumTol);
    }
}

TEST_CASE("projections are even in alpha") {
    for (double alpha : {0.2, 0.9, 2.1}) {
        for (double t : {0.5, 1.7, 3.9}) {
            const Eigen::Matrix3d plus = reduced_matrix(alpha, t);
            const Eigen::Matrix3d minus = reduced_matrix(-alpha, t);
            CHECK(plus(2, 2) == doctest::Approx(minus(2, 2)).epsilon(1e-13));
            CHECK(plus.trace() == doctest::Approx(minus.trace()).epsilon(1e-13));
        }
    }
}

TEST_CASE("conjugated parameters project to the same curve") {
    auto rng = make_rng(311);
    for (int i = 0; i < 50; ++i) {
        const double alpha = uniform(rng, 0.0, 2.0);
        const SymmetryElement k = random_symmetry(rng);
        const GeodesicSpec conjugated = make_geodesic_spec(
            conjugate(k, AlgebraElement::k() * alpha), conjugate(k, AlgebraElement::p1()), 1.0);
        const double t = uniform(rng, 0.1, 4.0);
        CHECK(orbit_distance(project(geodesic_at(conjugated, t)),
                             reduced_projection(ReducedGeodesic{alpha}, t)) < kNumTol);
    }
}

TEST_CASE("optimal control is constant for A_k = 0 and has constant norm throughout") {
    const GeodesicSpec straight = make_geodesic_spec(AlgebraElement{}, AlgebraElement::p1(), 1.0);
    for (double t : {0.0, 0.5, 2.0}) {
        const auto [u1, u2] = optimal_control(straight, t);
        CHECK(u1 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(u2 == doctest::Approx(0.0).epsilon(1e-14));
    }

    auto rng = make_rng(313);
    for (int i = 0; i < 50; ++i) {
        const GeodesicSpec g = random_unit_spec(rng);
        const double t = uniform(rng, 0.0, 5.0);
        const auto [u1, u2] = optimal_control(g, t);
        CHECK(std::hypot(u1, u2) == doctest::Approx(g.speed).epsilon(1e-12));
    }
}

TEST_CASE("controls reproduce the geodesic through an independent integrator") {
    auto rng = make_rng(317);
    for (int i = 0; i < 3; ++i) {
        const GeodesicSpec g = random_unit_spec(rng);
        const double t_end = uniform(rng, 0.5, 2.5);
        auto field = [&](double t) {
            const auto [u1, u2] = optimal_control(g, t);
            return (AlgebraElement::p1() * u1 + AlgebraElement::p2() * u2).matrix();
        };
        const Eigen::Matrix3d x = rk4_integrate(field, t_end, 1e-4);
        CHECK((x - geodesic_at(g, t_end).matrix()).norm() < 1e-9);
    }
}

TEST_CASE("finite-difference residual of the geodesic equation") {
    auto rng = make_rng(331);
    const double h = 1e-5;
    for (int i = 0; i < 20; ++i) {
        const GeodesicSpec g = random_unit_spec(rng);
        for (double t : {0.3, 1.0, 2.2, 4.1}) {
            const Eigen::Matrix3d fd =
                (geodesic_at(g, t + h).matrix() - geodesic_at(g, t - h).matrix()) / (2.0 * h);
            const auto [u1, u2] = optimal_control(g, t);
            const Eigen::Matrix3d u =
                (AlgebraElement::p1() * u1 + AlgebraElement::p2() * u2).matrix();
            CHECK((fd - u * geodesic_at(g, t).matrix()).norm() < 1e-6);
        }
    }
}

TEST_CASE("drift transform") {
    const std::vector<GroupElement> set = {GroupElement::identity(), rotation_h(1.0)};

    const auto same = drift_reduce(AlgebraElement{}, 2.0, set);
    CHECK(distance(same[0], set[0]) == 0.0);
    CHECK(distance(same[1], set[1]) == 0.0);

    const std::vector<GroupElement> just_identity = {GroupElement::identity()};
    const auto shifted = drift_reduce(AlgebraElement::k(), 1.3, just_identity);
    CHECK(distance(shifted[0], SymmetryElement::plus(1.3).matrix()) < 1e-14);

    CHECK_THROWS_AS(drift_reduce(AlgebraElement::p1(), 1.0, set), std::invalid_argument);
}

TEST_CASE("drifted trajectories factor through the driftless system") {
    // Integrate the drifted equation X' = A X + Σ uⱼ Bⱼ X for a chosen
    // control, integrate the driftless equation with the rotated control,
    // and confirm the endpoints differ exactly by the drift factor.
    const double a = 0.8;
    const AlgebraElement drift = AlgebraElement::k() * a;
    auto u = [](double t) { return std::pair{std::cos(0.7 * t), std::sin(0.7 * t)}; };

    auto drifted_field = [&](double t) {
        const auto [u1, u2] = u(t);
        return drift.matrix() + (AlgebraElement::p1() * u1 + AlgebraElement::p2() * u2).matrix();
    };
    // Rotated control v(t): coefficients of e^{-At} Bj e^{At} against the basis.
    auto driftless_field = [&](double t) {
        const auto [u1, u2] = u(t);
        const Eigen::Matrix3d r = exp(drift, -t).matrix();
        const AlgebraElement b1 = AlgebraElement::from_matrix(r * AlgebraElement::p1().matrix() * r.transpose());
        const AlgebraElement b2 = AlgebraElement::from_matrix(r * AlgebraElement::p2().matrix() * r.transpose());
        return (b1 * u1 + b2 * u2).matrix();
    };

    const double t_end = 1.7;
    const Eigen::Matrix3d x = rk4_integrate(drifted_field, t_end, 1e-4);
    const Eigen::Matrix3d u_end = rk4_integrate(driftless_field, t_end, 1e-4);
    const std::vector<GroupElement> endpoint = {GroupElement::trusted(u_end)};
    const GroupElement mapped = drift_reduce(drift, t_end, endpoint)[0];
    CHECK((x - mapped.matrix()).norm() < 1e-8);
}
