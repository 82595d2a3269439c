#include "kpso3/orbitspace.hpp"

#include <cmath>
#include <numbers>

namespace kpso3 {

namespace {

constexpr double kPi = std::numbers::pi;

// Clamp an arccos argument. Arguments produced from valid rotations can
// stray outside [-1, 1] by roundoff that grows like eps/denominator near the
// singular point of the chart, so the admissible overshoot scales with
// `noise_floor`.
double safe_acos(double arg, double noise_floor) {
    const double slack = std::max(kOrthTol, noise_floor);
    if (arg > 1.0 + slack || arg < -1.0 - slack) {
        throw std::invalid_argument("arccos argument outside [-1, 1] beyond tolerance");
    }
    return std::acos(std::clamp(arg, -1.0, 1.0));
}

}  // namespace

OrbitPoint make_orbit_point(double rho, double theta, DiscMode mode) {
    const double tol = 1e-12;
    if (rho < -tol || rho > kPi + tol) {
        throw std::invalid_argument("rho outside [0, pi]");
    }
    if (mode == DiscMode::half_disc) {
        if (theta < -tol || theta > kPi + tol) {
            throw std::invalid_argument("theta outside [0, pi]");
        }
    } else {
        if (theta <= -kPi - tol || theta > kPi + tol) {
            throw std::invalid_argument("theta outside (-pi, pi]");
        }
    }
    rho = std::clamp(rho, 0.0, kPi);
    if (rho == 0.0) theta = 0.0;  // all center matrices are equivalent
    return OrbitPoint{rho, theta, mode};
}

Eigen::Vector2d embed(const OrbitPoint& p) {
    return {p.rho * std::cos(p.theta), p.rho * std::sin(p.theta)};
}

double orbit_distance(const OrbitPoint& p, const OrbitPoint& q) {
    return (embed(p) - embed(q)).norm();
}

bool stratum_leq(StratumLabel a, StratumLabel b) {
    if (a == b) return true;
    if (a == StratumLabel::Trivial) return true;
    if (b == StratumLabel::FullG) return true;
    if (a == StratumLabel::V && b == StratumLabel::W) return true;
    return false;
}

std::string to_string(StratumLabel s) {
    switch (s) {
        case StratumLabel::Trivial: return "Trivial";
        case StratumLabel::V: return "V";
        case StratumLabel::W: return "W";
        case StratumLabel::Kplus: return "Kplus";
        case StratumLabel::FullG: return "FullG";
    }
    return "?";
}

OrbitPoint project(const GroupElement& x, DiscMode mode) {
    const Eigen::Matrix3d& m = x.matrix();
    const double x33 = m(2, 2);
    if (x33 > 1.0 + kOrthTol || x33 < -1.0 - kOrthTol) {
        throw std::invalid_argument("entry (3,3) outside [-1, 1] beyond tolerance");
    }
    const double s = std::acos(std::clamp(x33, -1.0, 1.0));
    const double rho = kPi - s;

    double theta = 0.0;
    const double denom = 1.0 + x33;
    if (denom > 1e-15) {
        // Entry noise of order eps is amplified by 1/denom in the ratio.
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() / denom;
        theta = safe_acos((m(0, 0) + m(1, 1)) / denom, floor);
    }
    if (mode == DiscMode::full_disc) {
        // Sign functional invariant under K⁺ conjugation, odd under K⁻:
        // the vertical component of the skew part of x.
        const double sgn = m(1, 0) - m(0, 1);
        if (sgn < 0.0 && theta > 0.0 && theta < kPi) theta = -theta;
    }
    return make_orbit_point(rho, theta, mode);
}

GroupElement representative(const OrbitPoint& p) {
    make_orbit_point(p.rho, p.theta, p.mode);  // validate
    return rotation_h(kPi - p.rho) * SymmetryElement::plus(p.theta).matrix();
}

StratumLabel classify(const OrbitPoint& p) {
    const double theta = std::abs(p.theta);
    if (p.rho <= kStratTol) return StratumLabel::W;
    if (p.rho >= kPi - kStratTol) {
        if (theta <= kStratTol || theta >= kPi - kStratTol) return StratumLabel::FullG;
        return StratumLabel::Kplus;
    }
    if (theta <= kStratTol || theta >= kPi - kStratTol) return StratumLabel::V;
    return StratumLabel::Trivial;
}

StratumLabel classify(const GroupElement& x) {
    return classify(project(x));
}

namespace {

// Angle phi such that R(phi) rotates the 2-vector `from` onto `to`; the pair
// is assumed to have (nearly) equal magnitudes.
double rotation_angle_between(const Eigen::Vector2d& from, const Eigen::Vector2d& to) {
    return std::atan2(to.y(), to.x()) - std::atan2(from.y(), from.x());
}

// Reflection angle psi of a 2x2 orthogonal block [cos psi, sin psi; sin psi, -cos psi].
double reflection_angle(const Eigen::Matrix2d& f) {
    return std::atan2(f(0, 1), f(0, 0));
}

// Refine a candidate rotation angle by minimizing the conjugation residual;
// the feature-based angle leaves all of its error in one block of the
// matrix, which matters near the singular strata of the chart.
double polish_angle(const Eigen::Matrix3d& z, const Eigen::Matrix3d& y, double phi) {
    auto residual = [&](double f) {
        const Eigen::Matrix3d q = SymmetryElement::plus(f).matrix().matrix();
        return (q * z * q.transpose() - y).squaredNorm();
    };
    double lo = phi - 2e-2, hi = phi + 2e-2;
    constexpr double inv_gold = 0.6180339887498949;
    double x1 = hi - inv_gold * (hi - lo), x2 = lo + inv_gold * (hi - lo);
    double f1 = residual(x1), f2 = residual(x2);
    for (int i = 0; i < 70; ++i) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_gold * (hi - lo);
            f1 = residual(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_gold * (hi - lo);
            f2 = residual(x2);
        }
    }
    return 0.5 * (lo + hi);
}

// Candidate conjugators K⁺(phi)·(component factor) sending `from` to `to`,
// solved from the features of the matrices that transform equivariantly
// under vertical rotations: the last-row 2-vector when it is nonzero, the
// 2x2 block otherwise.
void component_candidates(const GroupElement& from, const GroupElement& to,
                          Component comp, std::vector<SymmetryElement>& out) {
    const SymmetryElement flip = SymmetryElement::minus(0.0);
    const Eigen::Matrix3d z =
        comp == Component::minus ? conjugate(flip, from).matrix() : from.matrix();
    const Eigen::Matrix3d y = to.matrix();

    auto push = [&](double phi) {
        phi = polish_angle(z, y, phi);
        SymmetryElement k = SymmetryElement::plus(phi);
        if (comp == Component::minus) k = k * flip;
        out.push_back(k);
    };

    const Eigen::Vector2d wz(z(2, 0), z(2, 1)), wy(y(2, 0), y(2, 1));
    const Eigen::Vector2d vz(z(0, 2), z(1, 2)), vy(y(0, 2), y(1, 2));
    if (wz.norm() > 1e-8 && wy.norm() > 1e-8) {
        push(rotation_angle_between(wz, wy));
        return;
    }
    if (vz.norm() > 1e-8 && vy.norm() > 1e-8) {
        push(rotation_angle_between(vz, vy));
        return;
    }
    // Block-diagonal case: the 2x2 blocks are both rotations (entry (3,3)
    // = +1; vertical rotations act trivially) or both reflections (entry
    // (3,3) = -1; conjugation shifts the reflection angle by 2 phi).
    const Eigen::Matrix2d az = z.topLeftCorner<2, 2>(), ay = y.topLeftCorner<2, 2>();
    if (z(2, 2) > 0.0) {
        push(0.0);
    } else {
        const double half = 0.5 * (reflection_angle(ay) - reflection_angle(az));
        push(half);
        push(half + kPi);
    }
}

}  // namespace

double lift_tolerance(const GroupElement& x) {
    const Eigen::Matrix3d& m = x.matrix();
    const double eps = std::numeric_limits<double>::epsilon();
    const double x33 = std::clamp(m(2, 2), -1.0, 1.0);
    const double rho = kPi - std::acos(x33);
    const double denom = std::max(1.0 + x33, eps);
    const double ct = std::clamp((m(0, 0) + m(1, 1)) / denom, -1.0, 1.0);
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - ct * ct));

    // Noise of cos θ read from the entries, and the induced angular
    // uncertainty: the quotient rule away from the segments, the square-root
    // envelope next to them where sin θ itself is below noise.
    const double dcos = 256.0 * eps / denom;
    const double dtheta = std::min(dcos / std::max(sin_theta, 1e-12), std::sqrt(2.0 * dcos));
    // Angular mismatches are suppressed by the conjugation freedom near the
    // disc center. Capped: beyond this the coordinates identify nothing.
    double tol = 4.0 * std::min(rho, 1.0) * dtheta;
    // Within the double-degenerate neighborhood of the slowest corner the
    // crossing-parameter inversion is the limiting factor, not the chart.
    if (1.0 + ct <= 4.0 * dcos && rho >= kPi - 1e-3) tol = std::max(tol, 3e-5);
    return std::min(tol, 1e-3);
}

SymmetryElement find_conjugator(const GroupElement& from, const GroupElement& to) {
    const double tol = std::max(1e-7, lift_tolerance(to));
    std::vector<SymmetryElement> candidates;
    candidates.push_back(SymmetryElement::identity());
    component_candidates(from, to, Component::plus, candidates);
    component_candidates(from, to, Component::minus, candidates);

    const SymmetryElement* best = nullptr;
    double best_residual = std::numeric_limits<double>::infinity();
    for (const SymmetryElement& k : candidates) {
        const double r = distance(conjugate(k, from), to);
        if (r < best_residual) {
            best_residual = r;
            best = &k;
        }
    }
    if (best == nullptr || best_residual > tol) {
        throw LiftError("no symmetry element conjugates the given pair");
    }
    return *best;
}

SymmetryElement lift_conjugator(const OrbitPoint& p, const GroupElement& x_f) {
    if (orbit_distance(project(x_f, p.mode), p) > 1e-6) {
        throw LiftError("point does not project to the given orbit coordinates");
    }
    return find_conjugator(representative(p), x_f);
}

Eigen::Vector2d su2_disc_projection(const Eigen::Matrix2cd& u) {
    const double unitary_defect =
        (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (unitary_defect > kOrthTol || std::abs(u.determinant() - 1.0) > kOrthTol) {
        throw std::invalid_argument("matrix is not special unitary within tolerance");
    }
    return {u(0, 0).real(), u(0, 0).imag()};
}

std::vector<SymmetryElement> isotropy_elements(const GroupElement& x, int kplus_samples) {
    const OrbitPoint p = project(x);
    const StratumLabel stratum = classify(p);

    // Isotropy of the canonical representative, conjugated into position.
    std::vector<SymmetryElement> base;
    switch (stratum) {
        case StratumLabel::FullG:
            for (int i = 0; i < kplus_samples; ++i) {
                const double r = 2.0 * kPi * i / kplus_samples;
                base.push_back(SymmetryElement::plus(r));
                base.push_back(SymmetryElement::minus(r));
            }
            break;
        case StratumLabel::Kplus:
            for (int i = 0; i < kplus_samples; ++i) {
                base.push_back(SymmetryElement::plus(2.0 * kPi * i / kplus_samples));
            }
            break;
        case StratumLabel::W:
            base.push_back(SymmetryElement::identity());
            base.push_back(SymmetryElement::plus(kPi));
            base.push_back(SymmetryElement::minus(0.0));
            base.push_back(SymmetryElement::minus(kPi));
            break;
        case StratumLabel::V:
            base.push_back(SymmetryElement::identity());
            base.push_back(SymmetryElement::minus(0.0));
            break;
        case StratumLabel::Trivial:
            base.push_back(SymmetryElement::identity());
            break;
    }

    const SymmetryElement k = lift_conjugator(p, x);
    const SymmetryElement k_inv = k.inverse();
    std::vector<SymmetryElement> out;
    out.reserve(base.size());
    for (const SymmetryElement& h : base) out.push_back(k * h * k_inv);
    return out;
}

}  // namespace kpso3
