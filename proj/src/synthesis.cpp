#include "kpso3/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace kpso3 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt3 = 0.57735026918962576451;

// Vertical component of the skew part of the reduced geodesic matrix.
// Proportional to sin θ · (1 - cos ρ), so it vanishes exactly on the two
// diameter segments and changes sign when the curve crosses the upper one.
double skew_vertical(double alpha, double t) {
    const Eigen::Matrix3d m = reduced_matrix(alpha, t);
    return m(1, 0) - m(0, 1);
}

double theta_of_matrix(const Eigen::Matrix3d& m) {
    const double x33 = m(2, 2);
    const double denom = 1.0 + x33;
    if (denom <= 1e-15) return 0.0;
    return std::acos(std::clamp((m.trace() - x33) / denom, -1.0, 1.0));
}

double theta_at(double alpha, double t) {
    return theta_of_matrix(reduced_matrix(alpha, t));
}

double rho_at(double alpha, double t) {
    const double x33 = reduced_matrix(alpha, t)(2, 2);
    return kPi - std::acos(std::clamp(x33, -1.0, 1.0));
}

// Times within the first period at which the reduced geodesic with parameter
// alpha has radial coordinate rho, solved in closed form from the (3,3)
// entry: descending-branch time t1 in (0, π/ω] and ascending-branch time
// t2 = 2π/ω - t1. Returns nothing when the curve never dips to rho.
struct PassageTimes {
    double t1 = 0.0;
    double t2 = 0.0;
};

std::optional<PassageTimes> passage_times(double alpha, double rho) {
    const double a2 = alpha * alpha;
    const double omega = std::sqrt(1.0 + a2);
    double c = (1.0 + a2) * std::cos(kPi - rho) - a2;
    if (c < -1.0) {
        if (c < -1.0 - 1e-12) return std::nullopt;
        c = -1.0;
    }
    c = std::min(c, 1.0);
    const double u = std::acos(c);
    return PassageTimes{u / omega, (2.0 * kPi - u) / omega};
}

}  // namespace

BoundaryTime min_time_boundary(double theta) {
    if (!(theta > 0.0) || theta > kPi + 1e-12) {
        throw std::invalid_argument("boundary angle must lie in (0, pi]");
    }
    theta = std::min(theta, kPi);
    const double time = std::sqrt(theta * (4.0 * kPi - theta));
    return {time, (2.0 * kPi - theta) / time};
}

BoundaryTime min_time_segment_ob(double s) {
    if (!(s > 0.0) || !(s < kPi)) {
        throw std::invalid_argument("segment parameter must lie in (0, pi)");
    }
    return {s, 0.0};
}

BoundaryTime min_time_origin() {
    return {kPi, 0.0};
}

double loss_of_optimality_time(double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
    // The crossing functional scales like alpha^2 near the center, so below
    // this threshold its sign is lost to roundoff; the limit value is π with
    // an O(alpha) error.
    if (alpha < 1e-7) return kPi;
    if (alpha >= kInvSqrt3 - 1e-12) return 2.0 * kPi / std::sqrt(1.0 + alpha * alpha);

    // First crossing of the upper diameter segment. The sign functional is
    // positive for small t > 0 and changes sign transversally at the
    // crossing; scan for the sign change, bisect, then reject roots that are
    // returns to the lower segment (θ near 0) rather than crossings.
    const double t_end = std::sqrt(3.0) * kPi + 0.1;
    const double step = 0.005;
    double t_prev = step;
    double h_prev = skew_vertical(alpha, t_prev);
    for (double t = 2.0 * step; t <= t_end; t += step) {
        const double h = skew_vertical(alpha, t);
        if (h_prev > 0.0 && h <= 0.0) {
            double lo = t_prev, hi = t;
            for (int i = 0; i < 100; ++i) {
                const double mid = 0.5 * (lo + hi);
                (skew_vertical(alpha, mid) > 0.0 ? lo : hi) = mid;
            }
            const double root = 0.5 * (lo + hi);
            if (theta_at(alpha, root) > 0.5 * kPi) return root;
        }
        t_prev = t;
        h_prev = h;
    }
    throw SolveError("loss-of-optimality crossing not found");
}

namespace {

// ---------------------------------------------------------------------------
// Interior inversion: find the minimizing (alpha, t) with
// reduced_projection(alpha, t) = (rho, theta).

std::vector<double> build_alpha_grid(double alpha_max) {
    std::vector<double> grid;
    grid.push_back(0.0);
    const double lo = std::min(1e-4, alpha_max / 1000.0);
    int n = 2000;
    if (alpha_max > 50.0) {
        n += static_cast<int>(300.0 * std::log10(alpha_max / 50.0));
        n = std::min(n, 5000);
    }
    const double llo = std::log(lo), lhi = std::log(alpha_max);
    for (int i = 0; i + 1 < n; ++i) {
        // exp/log roundoff must not overshoot alpha_max, so the endpoint is
        // appended exactly.
        grid.push_back(std::min(std::exp(llo + (lhi - llo) * i / (n - 1.0)), alpha_max));
    }
    grid.push_back(alpha_max);
    // Linear refinement around the regime change at 1/√3.
    for (int i = 0; i <= 40; ++i) {
        const double a = kInvSqrt3 - 0.05 + 0.1 * i / 40.0;
        if (a > 0.0 && a < alpha_max) grid.push_back(a);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

struct Candidate {
    double alpha;
    double t;
};

// One polish step set on the residual (cos s mismatch, angular mismatch).
void newton_polish(double rho, double theta, Candidate& c) {
    const double cs = std::cos(kPi - rho);
    auto residual = [&](double a, double t) -> Eigen::Vector2d {
        const Eigen::Matrix3d m = reduced_matrix(a, t);
        return {m(2, 2) - cs, theta_of_matrix(m) - theta};
    };
    Eigen::Vector2d r = residual(c.alpha, c.t);
    for (int it = 0; it < 6; ++it) {
        const double ha = 1e-7 * std::max(1.0, std::abs(c.alpha));
        const double ht = 1e-7 * std::max(1.0, c.t);
        Eigen::Matrix2d j;
        j.col(0) = (residual(c.alpha + ha, c.t) - residual(c.alpha - ha, c.t)) / (2.0 * ha);
        j.col(1) = (residual(c.alpha, c.t + ht) - residual(c.alpha, c.t - ht)) / (2.0 * ht);
        if (std::abs(j.determinant()) < 1e-18) break;
        const Eigen::Vector2d delta = j.partialPivLu().solve(r);
        // Trust region: near fold points of the sweep the Jacobian is close
        // to singular and an unrestricted step can land on a different
        // (larger-t) solution of the same system.
        if (std::abs(delta.x()) > 1e-4 * (1.0 + c.alpha) ||
            std::abs(delta.y()) > 1e-4 * (1.0 + c.t)) {
            break;
        }
        const double na = std::max(0.0, c.alpha - delta.x());
        const double nt = std::max(1e-12, c.t - delta.y());
        const Eigen::Vector2d nr = residual(na, nt);
        if (nr.norm() >= r.norm()) break;
        c.alpha = na;
        c.t = nt;
        r = nr;
        if (r.norm() < 1e-14) break;
    }
}

// Angular mismatch on one passage branch as a function of alpha, expressed
// through cos θ so it stays smooth and well conditioned at both chart ends.
double branch_mismatch(double alpha, double rho, double theta, int branch) {
    const auto pt = passage_times(alpha, rho);
    if (!pt) return std::numeric_limits<double>::quiet_NaN();
    const double t = branch == 1 ? pt->t1 : pt->t2;
    return std::cos(theta_at(alpha, t)) - std::cos(theta);
}

// Parameter whose upper-segment crossing happens at radius rho; the crossing
// radius is increasing in alpha on (0, 1/√3).
double segment_crossing_alpha(double rho) {
    auto crossing_rho = [](double alpha) {
        return rho_at(alpha, loss_of_optimality_time(alpha));
    };
    double lo = 1e-8, hi = kInvSqrt3 - 1e-12;
    if (crossing_rho(hi) < rho) return hi;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (crossing_rho(mid) < rho ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::pair<double, double> solve_upper_segment(double rho);

std::pair<double, double> solve_interior(double rho, double theta) {
    // Angular resolution of the chart at this radius: cos θ is read through a
    // ratio with denominator 1 - cos ρ, so below this bound the target is
    // indistinguishable from the adjacent diameter segment and the sweep
    // mismatches are pure roundoff.
    const double eps = std::numeric_limits<double>::epsilon();
    const double resolution = 256.0 * eps / std::max(1.0 - std::cos(rho), eps);
    if (1.0 + std::cos(theta) <= resolution) return solve_upper_segment(rho);
    if (1.0 - std::cos(theta) <= resolution) return {kPi - rho, 0.0};

    // Largest alpha whose radial dip still reaches rho.
    const double alpha_bar = std::tan(0.5 * rho);
    const std::vector<double> grid = build_alpha_grid(alpha_bar);

    std::vector<Candidate> candidates;
    for (int branch : {1, 2}) {
        double prev_alpha = 0.0;
        double prev = std::numeric_limits<double>::quiet_NaN();
        for (double a : grid) {
            if (a > alpha_bar) break;
            const double cur = branch_mismatch(a, rho, theta, branch);
            if (std::isfinite(prev) && std::isfinite(cur) &&
                ((prev <= 0.0 && cur > 0.0) || (prev > 0.0 && cur <= 0.0))) {
                double lo = prev_alpha, hi = a;
                double flo = prev;
                for (int i = 0; i < 90; ++i) {
                    const double mid = 0.5 * (lo + hi);
                    const double fmid = branch_mismatch(mid, rho, theta, branch);
                    if (!std::isfinite(fmid)) break;
                    if ((flo <= 0.0) == (fmid <= 0.0)) {
                        lo = mid;
                        flo = fmid;
                    } else {
                        hi = mid;
                    }
                }
                const double root = 0.5 * (lo + hi);
                if (const auto pt = passage_times(root, rho)) {
                    candidates.push_back({root, branch == 1 ? pt->t1 : pt->t2});
                }
            }
            prev_alpha = a;
            prev = cur;
        }
    }

    // The grid scan can miss roots sitting in thin windows where the branch
    // angle spikes toward π: around the segment-crossing parameter on branch
    // 2, and around the branch-merge parameter alpha_bar on both branches.
    // At those centers the mismatch is known negative, which gives exact
    // brackets independent of grid resolution.
    auto bracket_outward = [&](double center, int branch, int side) {
        double w = std::max(1e-6 * center, 1e-14);
        double outer = std::numeric_limits<double>::quiet_NaN();
        for (int k = 0; k < 200; ++k) {
            double a = center + side * w;
            bool at_edge = false;
            if (side > 0 && a >= alpha_bar) {
                a = alpha_bar;
                at_edge = true;
            } else if (side < 0 && a <= 1e-14) {
                a = 1e-14;
                at_edge = true;
            }
            const double g = branch_mismatch(a, rho, theta, branch);
            if (std::isfinite(g) && g > 0.0) {
                outer = a;
                break;
            }
            if (at_edge || !std::isfinite(g)) break;
            w *= 4.0;
        }
        if (!std::isfinite(outer)) return;
        double lo = center, hi = outer;
        for (int i = 0; i < 90; ++i) {
            const double mid = 0.5 * (lo + hi);
            (branch_mismatch(mid, rho, theta, branch) < 0.0 ? lo : hi) = mid;
        }
        const double root = 0.5 * (lo + hi);
        if (const auto pt = passage_times(root, rho)) {
            candidates.push_back({root, branch == 1 ? pt->t1 : pt->t2});
        }
    };

    if (theta > kPi - 0.1) {
        const double alpha_star = segment_crossing_alpha(rho);
        if (branch_mismatch(alpha_star, rho, theta, 2) < 0.0) {
            bracket_outward(alpha_star, 2, -1);
            bracket_outward(alpha_star, 2, +1);
        }
    }
    if (branch_mismatch(alpha_bar, rho, theta, 1) < 0.0) {
        bracket_outward(alpha_bar, 1, -1);
        bracket_outward(alpha_bar, 2, -1);
    }

    const OrbitPoint target = make_orbit_point(rho, theta);
    Candidate best{0.0, std::numeric_limits<double>::infinity()};
    for (Candidate c : candidates) {
        newton_polish(rho, theta, c);
        const ReducedGeodesic rg{c.alpha, 1.0};
        if (orbit_distance(reduced_projection(rg, c.t), target) > 1e-8) continue;
        if (c.t < best.t - kSolTol || (c.t < best.t + kSolTol && c.alpha < best.alpha)) {
            best = c;
        }
    }
    if (!std::isfinite(best.t)) {
        throw SolveError("interior target not reached by the alpha sweep");
    }
    return {best.t, best.alpha};
}

// Targets on the upper diameter segment are hit exactly where a reduced
// geodesic with alpha in (0, 1/√3) crosses it; the crossing radius grows
// with alpha, so the parameter is found by bisection.
std::pair<double, double> solve_upper_segment(double rho) {
    const double alpha_star = segment_crossing_alpha(rho);
    Candidate c{alpha_star, loss_of_optimality_time(alpha_star)};

    // Polish on (radial match, segment crossing).
    const double cs = std::cos(kPi - rho);
    auto residual = [&](double a, double t) -> Eigen::Vector2d {
        const Eigen::Matrix3d m = reduced_matrix(a, t);
        return {m(2, 2) - cs, m(1, 0) - m(0, 1)};
    };
    Eigen::Vector2d r = residual(c.alpha, c.t);
    for (int it = 0; it < 6; ++it) {
        const double ha = 1e-8, ht = 1e-8;
        Eigen::Matrix2d j;
        j.col(0) = (residual(c.alpha + ha, c.t) - residual(c.alpha - ha, c.t)) / (2.0 * ha);
        j.col(1) = (residual(c.alpha, c.t + ht) - residual(c.alpha, c.t - ht)) / (2.0 * ht);
        if (std::abs(j.determinant()) < 1e-18) break;
        const Eigen::Vector2d delta = j.partialPivLu().solve(r);
        const Eigen::Vector2d nr = residual(c.alpha - delta.x(), c.t - delta.y());
        if (nr.norm() >= r.norm()) break;
        c.alpha -= delta.x();
        c.t -= delta.y();
        r = nr;
        if (r.norm() < 1e-14) break;
    }
    return {c.t, c.alpha};
}

}  // namespace

BoundaryTime min_time(const OrbitPoint& p) {
    const double theta = std::abs(p.theta);
    switch (classify(p)) {
        case StratumLabel::FullG:
            if (theta < 0.5 * kPi) return {0.0, 0.0};  // identity orbit
            return min_time_boundary(kPi);
        case StratumLabel::Kplus:
            return min_time_boundary(theta);
        case StratumLabel::W:
            return min_time_origin();
        case StratumLabel::V:
            if (theta < 0.5 * kPi) return min_time_segment_ob(kPi - p.rho);
            else {
                const auto [t, alpha] = solve_upper_segment(p.rho);
                return {t, alpha};
            }
        case StratumLabel::Trivial:
        default: {
            const auto [t, alpha] = solve_interior(p.rho, theta);
            return {t, alpha};
        }
    }
}

SynthesisResult solve(const GroupElement& x_f) {
    const OrbitPoint p = project(x_f);
    const BoundaryTime bt = min_time(p);
    const double t_min = bt.time;
    const double alpha = bt.alpha;
    if (t_min == 0.0) {
        // Identity target.
        return SynthesisResult{0.0, 0.0, AlgebraElement{}, AlgebraElement::p1(),
                               SymmetryElement::identity(), x_f};
    }

    const GeodesicSpec reduced{AlgebraElement::k() * alpha, AlgebraElement::p1(), 1.0};
    const GroupElement endpoint = geodesic_at(reduced, t_min);
    const SymmetryElement k = find_conjugator(endpoint, x_f);
    SynthesisResult result{t_min,
                           alpha,
                           conjugate(k, reduced.a_k),
                           conjugate(k, reduced.a_p),
                           k,
                           x_f};
    if (distance(geodesic_at(result.spec(), t_min), x_f) >
        10.0 * std::max(kSolTol, lift_tolerance(x_f))) {
        throw SolveError("synthesis postcondition failed: geodesic does not reach target");
    }
    return result;
}

CutLocusReport cut_report(const GroupElement& x_f) {
    const OrbitPoint p = project(x_f);
    const StratumLabel stratum = classify(p);

    bool cut = false;
    switch (stratum) {
        case StratumLabel::Kplus:
        case StratumLabel::W:
            cut = true;
            break;
        case StratumLabel::FullG:
        case StratumLabel::V:
            cut = p.theta > 0.5 * kPi;
            break;
        case StratumLabel::Trivial:
            cut = false;
            break;
    }

    CutLocusReport report;
    report.on_cut = cut;
    report.on_critical = cut;  // cut points lose optimality here as well
    if (!cut) return report;

    const SynthesisResult sol = solve(x_f);
    report.witnesses.push_back(sol.spec());
    for (const SymmetryElement& h : isotropy_elements(x_f)) {
        const AlgebraElement a_k2 = conjugate(h, sol.a_k);
        const AlgebraElement a_p2 = conjugate(h, sol.a_p);
        const double diff = (a_k2.coords() - sol.a_k.coords()).norm() +
                            (a_p2.coords() - sol.a_p.coords()).norm();
        if (diff < 1e-6) continue;
        const GeodesicSpec candidate{a_k2, a_p2, 1.0};
        if (distance(geodesic_at(candidate, sol.t_min), x_f) <= 10.0 * kSolTol) {
            report.witnesses.push_back(candidate);
            break;
        }
    }
    if (report.witnesses.size() < 2) {
        throw SolveError("cut point without a second minimizing geodesic witness");
    }
    return report;
}

bool isotropy_invariance_check(const GroupElement& x_f, const GeodesicSpec& g, int n_max) {
    const std::vector<SymmetryElement> iso = isotropy_elements(x_f);
    AlgebraElement l = g.a_p;
    for (int n = 0; n <= n_max; ++n) {
        const double scale = std::max(1.0, l.norm());
        for (const SymmetryElement& h : iso) {
            if ((conjugate(h, l).coords() - l.coords()).norm() > 1e-6 * scale) return false;
        }
        l = bracket(g.a_k, l);
    }
    return true;
}

}  // namespace kpso3
