#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kpso3/orbitspace.hpp"
#include "support.hpp"

#include <numbers>

using namespace kpso3;
using kpso3::testing::make_rng;
using kpso3::testing::random_rotation;
using kpso3::testing::random_symmetry;
using kpso3::testing::uniform;

namespace {

constexpr double kPi = std::numbers::pi;

GroupElement center_matrix(double r) {
    Eigen::Matrix3d m;
    m << std::cos(r), std::sin(r), 0,
        std::sin(r), -std::cos(r), 0,
        0, 0, -1;
    return GroupElement::from_matrix(m);
}

}  // namespace

TEST_CASE("projection of the distinguished points") {
    const OrbitPoint b = project(GroupElement::identity());
    CHECK(b.rho == doctest::Approx(kPi));
    CHECK(b.theta == doctest::Approx(0.0));

    const OrbitPoint a = project(SymmetryElement::plus(kPi).matrix());
    CHECK(a.rho == doctest::Approx(kPi));
    CHECK(a.theta == doctest::Approx(kPi));

    for (double r : {0.0, 0.7, 2.0, 5.5}) {
        const OrbitPoint o = project(center_matrix(r));
        CHECK(o.rho == doctest::Approx(0.0));
        CHECK(o.theta == 0.0);
    }
}

TEST_CASE("projection rejects matrices off the group") {
    Eigen::Matrix3d bad = Eigen::Matrix3d::Identity();
    bad(2, 2) = 1.5;
    CHECK_THROWS_AS(project(GroupElement::trusted(bad)), std::invalid_argument);
}

TEST_CASE("representatives of the distinguished points") {
    CHECK(distance(representative(make_orbit_point(kPi, 0.0)), GroupElement::identity()) <
          1e-14);
    for (double s : {0.3, 1.2, 2.9}) {
        CHECK(distance(representative(make_orbit_point(kPi - s, 0.0)), rotation_h(s)) < 1e-14);
    }
    CHECK(distance(representative(make_orbit_point(0.0, 0.0)), center_matrix(0.0)) < 1e-14);
}

TEST_CASE("project is a left inverse of representative over the half disc") {
    auto rng = make_rng(101);
    for (int i = 0; i < 300; ++i) {
        const OrbitPoint p = make_orbit_point(uniform(rng, 0.0, kPi), uniform(rng, 0.0, kPi));
        const OrbitPoint q = project(representative(p));
        CHECK(orbit_distance(p, q) < kNumTol);
    }
}

TEST_CASE("projection is invariant under the symmetry action") {
    auto rng = make_rng(103);
    for (int i = 0; i < 200; ++i) {
        const GroupElement x = random_rotation(rng);
        const SymmetryElement k = random_symmetry(rng);
        const OrbitPoint p = project(x), q = project(conjugate(k, x));
        CHECK(orbit_distance(p, q) < kNumTol);
        CHECK(classify(p) == classify(q));
    }
}

TEST_CASE("projection reads only the vertical entry and the trace") {
    auto rng = make_rng(107);
    for (int i = 0; i < 100; ++i) {
        const GroupElement x = random_rotation(rng);
        const OrbitPoint p = project(x);
        const double s = std::acos(std::clamp(x.matrix()(2, 2), -1.0, 1.0));
        CHECK(p.rho == doctest::Approx(kPi - s).epsilon(1e-12));
    }
}

TEST_CASE("classification of the strata") {
    CHECK(classify(GroupElement::identity()) == StratumLabel::FullG);
    CHECK(classify(SymmetryElement::plus(kPi).matrix()) == StratumLabel::FullG);
    CHECK(classify(SymmetryElement::plus(kPi / 2).matrix()) == StratumLabel::Kplus);
    CHECK(classify(rotation_h(kPi / 2)) == StratumLabel::V);
    CHECK(classify(center_matrix(1.0)) == StratumLabel::W);
    // upper-segment point: a symmetric matrix away from center and boundary
    CHECK(classify(representative(make_orbit_point(1.5, kPi))) == StratumLabel::V);
    // generic interior point
    CHECK(classify(representative(make_orbit_point(1.5, 1.0))) == StratumLabel::Trivial);
}

TEST_CASE("classification tolerates boundary noise") {
    CHECK(classify(make_orbit_point(kPi - 1e-8, 0.5)) == StratumLabel::Kplus);
    CHECK(classify(make_orbit_point(1e-8, 0.0)) == StratumLabel::W);
    CHECK(classify(make_orbit_point(1.0, 1e-8)) == StratumLabel::V);
    CHECK(classify(make_orbit_point(1.0, kPi - 1e-8)) == StratumLabel::V);
    CHECK(classify(make_orbit_point(kPi - 1e-8, 1e-8)) == StratumLabel::FullG);
}

TEST_CASE("stratum partial order") {
    using S = StratumLabel;
    CHECK(stratum_leq(S::Trivial, S::V));
    CHECK(stratum_leq(S::V, S::W));
    CHECK(stratum_leq(S::Trivial, S::Kplus));
    CHECK(stratum_leq(S::Kplus, S::FullG));
    CHECK(stratum_leq(S::W, S::FullG));
    CHECK_FALSE(stratum_leq(S::V, S::Kplus));
    CHECK_FALSE(stratum_leq(S::Kplus, S::V));
    CHECK_FALSE(stratum_leq(S::W, S::V));
}

TEST_CASE("frontier condition: every stratum touches the closure of the interior") {
    // Sampled form: each singular point has interior points arbitrarily close.
    for (const OrbitPoint p :
         {make_orbit_point(kPi, 0.7), make_orbit_point(0.0, 0.0), make_orbit_point(1.2, 0.0),
          make_orbit_point(1.2, kPi), make_orbit_point(kPi, kPi)}) {
        const double eps = 1e-4;
        const double rho = std::clamp(p.rho, eps, kPi - eps);
        const double theta = std::clamp(p.theta, eps, kPi - eps);
        const OrbitPoint nearby = make_orbit_point(rho, theta);
        CHECK(classify(nearby) == StratumLabel::Trivial);
        CHECK(orbit_distance(p, nearby) < 3.0 * eps * kPi);
    }
}

TEST_CASE("full-disc mode resolves the mirror sign") {
    for (double r : {0.4, 1.5, 3.0}) {
        const OrbitPoint plus = project(SymmetryElement::plus(r).matrix(), DiscMode::full_disc);
        CHECK(plus.rho == doctest::Approx(kPi));
        CHECK(plus.theta == doctest::Approx(r));
        const OrbitPoint minus =
            project(SymmetryElement::plus(-r).matrix(), DiscMode::full_disc);
        CHECK(minus.theta == doctest::Approx(-r));
    }

    // Reflections flip the sign of theta in the full disc.
    auto rng = make_rng(211);
    for (int i = 0; i < 100; ++i) {
        const GroupElement x = random_rotation(rng);
        const OrbitPoint p = project(x, DiscMode::full_disc);
        const OrbitPoint q = project(conjugate(SymmetryElement::minus(1.0), x), DiscMode::full_disc);
        CHECK(q.theta == doctest::Approx(-p.theta).epsilon(1e-9));
        // Vertical rotations preserve it.
        const OrbitPoint w = project(conjugate(SymmetryElement::plus(2.0), x), DiscMode::full_disc);
        CHECK(w.theta == doctest::Approx(p.theta).epsilon(1e-9));
    }
}

TEST_CASE("full-disc projection is a left inverse of representative") {
    auto rng = make_rng(229);
    for (int i = 0; i < 200; ++i) {
        const OrbitPoint p = make_orbit_point(uniform(rng, 0.05, kPi - 0.05),
                                              uniform(rng, -kPi + 0.05, kPi - 0.05),
                                              DiscMode::full_disc);
        const OrbitPoint q = project(representative(p), DiscMode::full_disc);
        CHECK(q.rho == doctest::Approx(p.rho).epsilon(1e-9));
        CHECK(q.theta == doctest::Approx(p.theta).epsilon(1e-9));
    }
}

TEST_CASE("two-level unit-disc projection is invariant under diagonal conjugation") {
    auto rng = make_rng(233);
    using namespace std::complex_literals;
    for (int i = 0; i < 50; ++i) {
        // Random special unitary from a unit 4-vector.
        Eigen::Vector4d q(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1),
                          uniform(rng, -1, 1));
        q.normalize();
        Eigen::Matrix2cd u;
        u << q[0] + 1i * q[1], q[2] + 1i * q[3], -q[2] + 1i * q[3], q[0] - 1i * q[1];
        const Eigen::Vector2d x = su2_disc_projection(u);
        CHECK(x.norm() <= 1.0 + 1e-12);

        const double phi = uniform(rng, 0.0, 2 * kPi);
        Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
        d(0, 0) = std::exp(1i * phi);
        d(1, 1) = std::exp(-1i * phi);
        const Eigen::Vector2d y = su2_disc_projection(d * u * d.adjoint());
        CHECK((x - y).norm() < 1e-12);
    }
    CHECK_THROWS_AS(su2_disc_projection(2.0 * Eigen::Matrix2cd::Identity()),
                    std::invalid_argument);
}

TEST_CASE("orbit point validation and canonicalization") {
    CHECK_THROWS_AS(make_orbit_point(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_orbit_point(kPi + 0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_orbit_point(1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_orbit_point(1.0, -3.2, DiscMode::full_disc), std::invalid_argument);
    CHECK_NOTHROW(make_orbit_point(1.0, -3.0, DiscMode::full_disc));
    CHECK(make_orbit_point(0.0, 2.2).theta == 0.0);
}

TEST_CASE("lift_conjugator reconstructs the conjugation") {
    // Identity lifts trivially.
    const SymmetryElement k0 =
        lift_conjugator(project(GroupElement::identity()), GroupElement::identity());
    CHECK(distance(k0.matrix(), GroupElement::identity()) < 1e-12);

    // Vertical rotations with negative angle are reached from the canonical
    // representative by a reflection.
    for (double r : {0.5, 1.2, 2.4}) {
        const GroupElement target = SymmetryElement::plus(-r).matrix();
        const SymmetryElement k = lift_conjugator(project(target), target);
        CHECK(k.component() == Component::minus);
        CHECK(distance(conjugate(k, representative(project(target))), target) < 1e-12);
    }

    auto rng = make_rng(223);
    for (int i = 0; i < 200; ++i) {
        const GroupElement x = random_rotation(rng);
        const GroupElement target = conjugate(random_symmetry(rng), x);
        const OrbitPoint p = project(target);
        const SymmetryElement k = lift_conjugator(p, target);
        CHECK(distance(conjugate(k, representative(p)), target) < 1e-7);
    }
}

TEST_CASE("lift_conjugator rejects inconsistent input") {
    CHECK_THROWS_AS(
        lift_conjugator(make_orbit_point(1.0, 1.0), SymmetryElement::plus(0.3).matrix()),
        LiftError);
}

TEST_CASE("isotropy element sets per stratum") {
    auto rng = make_rng(227);

    // Center points: four isotropy elements, all fixing the point.
    const GroupElement w = conjugate(random_symmetry(rng), center_matrix(0.8));
    const auto iso_w = isotropy_elements(w);
    CHECK(iso_w.size() == 4);
    for (const auto& h : iso_w) CHECK(distance(conjugate(h, w), w) < 1e-9);

    // Segment points: two elements.
    const GroupElement v = conjugate(random_symmetry(rng), rotation_h(1.1));
    const auto iso_v = isotropy_elements(v);
    CHECK(iso_v.size() == 2);
    for (const auto& h : iso_v) CHECK(distance(conjugate(h, v), v) < 1e-9);

    // Upper-segment points: also two.
    const GroupElement v2 = representative(make_orbit_point(1.7, kPi));
    const auto iso_v2 = isotropy_elements(v2);
    CHECK(iso_v2.size() == 2);
    for (const auto& h : iso_v2) CHECK(distance(conjugate(h, v2), v2) < 1e-9);

    // Boundary-arc points: the sampled vertical rotations.
    const auto iso_k = isotropy_elements(SymmetryElement::plus(1.0).matrix(), 16);
    CHECK(iso_k.size() == 16);
    for (const auto& h : iso_k) {
        CHECK(distance(conjugate(h, SymmetryElement::plus(1.0).matrix()),
                       SymmetryElement::plus(1.0).matrix()) < 1e-9);
    }

    // Interior points: trivial.
    const GroupElement interior = representative(make_orbit_point(1.5, 1.0));
    CHECK(isotropy_elements(interior).size() == 1);
}
