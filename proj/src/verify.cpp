#include "kpso3/verify.hpp"

#include "kpso3/geodesics.hpp"
#include "kpso3/liegroup.hpp"
#include "kpso3/oracle.hpp"
#include "kpso3/orbitspace.hpp"
#include "kpso3/reachable.hpp"
#include "kpso3/serialization.hpp"
#include "kpso3/synthesis.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace kpso3::verify {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

GroupElement random_rotation(std::mt19937_64& rng) {
    Eigen::Vector3d axis(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0),
                         uniform(rng, -1.0, 1.0));
    while (axis.norm() < 1e-3) {
        axis = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    }
    axis.normalize();
    return exp(AlgebraElement(axis), uniform(rng, 0.0, kPi));
}

SymmetryElement random_symmetry(std::mt19937_64& rng) {
    const double angle = uniform(rng, 0.0, 2.0 * kPi);
    return uniform(rng, 0.0, 1.0) < 0.5 ? SymmetryElement::plus(angle)
                                        : SymmetryElement::minus(angle);
}

GroupElement center_matrix(double r) {
    Eigen::Matrix3d m;
    m << std::cos(r), std::sin(r), 0,
        std::sin(r), -std::cos(r), 0,
        0, 0, -1;
    return GroupElement::from_matrix(m);
}

struct Check {
    bool ok = true;
    double worst = 0.0;
    std::string note;

    void within(double value, double bound) {
        worst = std::max(worst, std::abs(value));
        if (std::abs(value) > bound) ok = false;
    }
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (note.empty()) note = what;
        }
    }
};

CriterionResult boundary_minimum_time() {
    Check c;
    for (int i = 1; i <= 50; ++i) {
        const double theta = kPi * i / 50.0;
        const auto [time, alpha] = min_time_boundary(theta);
        c.within(time - std::sqrt(theta * (4.0 * kPi - theta)), 1e-9);
        c.within(alpha - (2.0 * kPi - theta) / std::sqrt(theta * (4.0 * kPi - theta)), 1e-9);
        // Defining constraints: full fast-phase period, slow-phase advance.
        c.within(std::sqrt(1.0 + alpha * alpha) * time - 2.0 * kPi, 1e-9);
        c.within(alpha * time - (2.0 * kPi - theta), 1e-9);
    }
    c.within(min_time_boundary(kPi).time - kSqrt3 * kPi, 1e-9);
    c.within(min_time_boundary(kPi).alpha - 1.0 / kSqrt3, 1e-9);
    std::ostringstream os;
    os << "50-point boundary grid, worst residual " << c.worst;
    return {1, "boundary minimum time", c.ok, os.str(), 0.0};
}

CriterionResult origin_and_segment(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x5eedc2d2ULL);
    Check c;
    for (int i = 0; i < 5; ++i) {
        const GroupElement target = center_matrix(uniform(rng, 0.0, 2.0 * kPi));
        c.within(solve(target).t_min - kPi, 1e-7);
    }
    double worst_seg = 0.0;
    for (int i = 1; i <= 20; ++i) {
        const double s = kPi * i / 21.0;
        const SynthesisResult res = solve(rotation_h(s));
        worst_seg = std::max(worst_seg, std::abs(res.t_min - s));
        c.within(res.t_min - s, 1e-6);
    }
    std::ostringstream os;
    os << "center to 1e-7, 20-point segment grid worst " << worst_seg;
    return {2, "origin and segment times", c.ok, os.str(), 0.0};
}

CriterionResult oracle_agreement(const Options& opt) {
    const std::vector<OrbitPoint> targets = {
        make_orbit_point(0.0, 0.0),        // center
        make_orbit_point(kPi, kPi),        // slowest point
        make_orbit_point(kPi - 1.0, 0.0),  // lower segment s = 1
        make_orbit_point(kPi - 2.0, 0.0),  // lower segment s = 2
        make_orbit_point(kPi, kPi / 4),    // boundary arc
        make_orbit_point(kPi, kPi / 2),
        make_orbit_point(kPi, 3 * kPi / 4),
        make_orbit_point(2.0, kPi),  // upper segment
        make_orbit_point(1.0, 0.8),  // interior
        make_orbit_point(2.0, 1.6),
        make_orbit_point(2.6, 2.6),
        make_orbit_point(0.9, 2.2),
    };
    Check c;
    double worst_ratio = 1.0;
    SearchBudget budget;
    budget.steps = opt.oracle_steps;
    budget.restarts = opt.oracle_restarts;
    budget.threads = opt.threads;
    nlohmann::json report = nlohmann::json::array();
    for (std::size_t i = 0; i < targets.size(); ++i) {
        budget.seed = opt.seed + i;
        const double closed = min_time(targets[i]).time;
        const double estimate = estimate_min_time(targets[i], budget);
        c.require(estimate >= closed - kSolTol, "estimate undercuts the closed form");
        const double ratio = estimate / closed;
        worst_ratio = std::max(worst_ratio, ratio);
        c.require(ratio <= 1.05, "estimate exceeds 5 percent over the closed form");
        report.push_back({{"target", to_json(targets[i])},
                          {"estimate", estimate},
                          {"closed_form", closed},
                          {"ratio", ratio}});
    }
    if (!opt.export_dir.empty()) {
        std::filesystem::create_directories(opt.export_dir);
        std::ofstream out(std::filesystem::path(opt.export_dir) / "oracle_report.json");
        out << report.dump(2) << '\n';
    }
    std::ostringstream os;
    os << "12 targets, worst estimate/closed-form ratio " << worst_ratio;
    if (!c.note.empty()) os << " (" << c.note << ")";
    return {3, "brute-force oracle agreement", c.ok, os.str(), 0.0};
}

CriterionResult formula_consistency(std::uint64_t seed) {
    Check c;
    double worst_entry = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double alpha = 3.0 * i / 99.0;
        const GeodesicSpec g{AlgebraElement::k() * alpha, AlgebraElement::p1(), 1.0};
        for (int j = 1; j <= 100; ++j) {
            const double t = kSqrt3 * kPi * j / 100.0;
            const double diff =
                (reduced_matrix(alpha, t) - geodesic_at(g, t).matrix()).cwiseAbs().maxCoeff();
            worst_entry = std::max(worst_entry, diff);
            c.within(diff, 1e-10);
        }
    }

    std::mt19937_64 rng(seed ^ 0x0de5afeULL);
    const double h = 1e-5;
    double worst_ode = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double phi = uniform(rng, -kPi, kPi);
        const GeodesicSpec g{AlgebraElement::k() * uniform(rng, -2.0, 2.0),
                             AlgebraElement(std::cos(phi), std::sin(phi), 0.0), 1.0};
        for (double t : {0.4, 1.3, 2.7, 4.8}) {
            const Eigen::Matrix3d fd =
                (geodesic_at(g, t + h).matrix() - geodesic_at(g, t - h).matrix()) / (2.0 * h);
            const auto [u1, u2] = optimal_control(g, t);
            const Eigen::Matrix3d u =
                (AlgebraElement::p1() * u1 + AlgebraElement::p2() * u2).matrix();
            const double res = (fd - u * geodesic_at(g, t).matrix()).norm();
            worst_ode = std::max(worst_ode, res);
            c.within(res, 1e-6);
        }
    }
    std::ostringstream os;
    os << "100x100 grid worst entry diff " << worst_entry << ", worst ODE residual "
       << worst_ode;
    return {4, "closed form vs exponential route", c.ok, os.str(), 0.0};
}

CriterionResult symmetry_invariants(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x517ee7ULL);
    Check c;
    double worst_proj = 0.0, worst_time = 0.0;
    for (int i = 0; i < 500; ++i) {
        const GroupElement x = random_rotation(rng);
        const SymmetryElement k = random_symmetry(rng);
        const GroupElement y = conjugate(k, x);
        const double dp = orbit_distance(project(x), project(y));
        worst_proj = std::max(worst_proj, dp);
        c.within(dp, 1e-9);
        const double dt = solve(x).t_min - solve(y).t_min;
        worst_time = std::max(worst_time, std::abs(dt));
        c.within(dt, 1e-6);
    }
    std::ostringstream os;
    os << "500 pairs, worst projection drift " << worst_proj << ", worst time drift "
       << worst_time;
    return {5, "projection and solve equivariance", c.ok, os.str(), 0.0};
}

CriterionResult cut_locus(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0xc0715eedULL);
    Check c;

    std::vector<GroupElement> cut_points;
    for (double r : {0.4, kPi / 2, 2.2}) {
        cut_points.push_back(conjugate(random_symmetry(rng), SymmetryElement::plus(r).matrix()));
    }
    cut_points.push_back(SymmetryElement::plus(kPi).matrix());  // slowest point
    for (double r : {0.0, 1.1, 2.0}) {
        cut_points.push_back(conjugate(random_symmetry(rng), center_matrix(r)));
    }
    for (double rho : {0.8, 1.6, 2.8}) {
        cut_points.push_back(
            conjugate(random_symmetry(rng), representative(make_orbit_point(rho, kPi))));
    }

    for (const GroupElement& x : cut_points) {
        const CutLocusReport rep = cut_report(x);
        c.require(rep.on_cut, "expected cut point not flagged");
        c.require(rep.on_critical, "cut point must be critical");
        c.require(rep.witnesses.size() >= 2, "missing second witness");
        if (rep.witnesses.size() >= 2) {
            const double t_min = solve(x).t_min;
            const double tol = 10.0 * std::max(kSolTol, lift_tolerance(x));
            c.require(distance(geodesic_at(rep.witnesses[0], t_min), x) <= tol,
                      "witness 1 misses the target");
            c.require(distance(geodesic_at(rep.witnesses[1], t_min), x) <= tol,
                      "witness 2 misses the target");
            c.require(distance(geodesic_at(rep.witnesses[0], 0.5 * t_min),
                               geodesic_at(rep.witnesses[1], 0.5 * t_min)) > 1e-6,
                      "witnesses coincide at the midpoint");
        }
    }

    const std::vector<GroupElement> non_cut = {
        GroupElement::identity(),
        rotation_h(0.9),
        conjugate(random_symmetry(rng), rotation_h(2.1)),
        representative(make_orbit_point(1.3, 0.9)),
        representative(make_orbit_point(2.4, 2.0)),
    };
    for (const GroupElement& x : non_cut) {
        const CutLocusReport rep = cut_report(x);
        c.require(!rep.on_cut, "non-cut point flagged as cut");
        c.require(rep.on_cut || !rep.on_cut || rep.on_critical, "");
    }
    return {6, "cut locus classification and witnesses", c.ok,
            c.note.empty() ? "10 cut points with 2 verified witnesses, 5 non-cut points"
                           : c.note,
            0.0};
}

CriterionResult reachable_sets(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x2ea5e7ULL);
    Check c;

    // Nesting over a time grid for sampled orbit points.
    std::vector<OrbitPoint> points;
    for (int i = 0; i < 200; ++i) {
        points.push_back(make_orbit_point(uniform(rng, 0.0, kPi), uniform(rng, 0.0, kPi)));
    }
    std::vector<double> times;
    for (int j = 1; j <= 10; ++j) times.push_back(kSqrt3 * kPi * j / 10.0);
    for (const OrbitPoint& p : points) {
        bool reached = false;
        for (double t : times) {
            const bool now = reachable_contains(t, p);
            c.require(!reached || now, "reachable sets are not nested");
            reached = now;
        }
        c.require(reached, "point unreachable at the final time");
    }

    // Frontier consistency and the regime change across t = π.
    double worst = 0.0;
    for (double t : {0.9, 1.8, 2.7, kPi, 3.6, 4.5, 5.2}) {
        const FrontierCurve curve = frontier(t, 0.01, false);
        c.require(curve.samples.size() > 3, "frontier too sparse");
        for (std::size_t i = 0; i < curve.samples.size(); i += 3) {
            const double diff = min_time(curve.samples[i].second).time - t;
            worst = std::max(worst, std::abs(diff));
            c.within(diff, 1e-4);
        }
        // Points strictly behind the sweep are strictly inside: the same
        // curves pass them earlier.
        for (std::size_t i = 0; i < curve.samples.size(); i += 11) {
            const OrbitPoint inside =
                reduced_projection(ReducedGeodesic{curve.samples[i].first}, t - 0.2);
            c.require(min_time(inside).time < t - 0.1, "interior point not strictly inside");
        }
        if (t < kPi) {
            c.require(curve.samples.front().first == 0.0,
                      "pre-crossing frontier must start at alpha = 0");
        } else if (t > kPi) {
            c.require(curve.samples.front().first > 0.0,
                      "post-crossing frontier must start at positive alpha");
        }
    }
    std::ostringstream os;
    os << "nesting on 10x200 grid, frontier worst time defect " << worst;
    if (!c.note.empty()) os << " (" << c.note << ")";
    return {7, "reachable-set nesting and frontiers", c.ok, os.str(), 0.0};
}

CriterionResult loss_bracket() {
    Check c;
    for (int i = 1; i <= 20; ++i) {
        const double alpha = (1.0 / kSqrt3) * i / 21.0;
        const double t = loss_of_optimality_time(alpha);
        c.require(t > kPi, "loss time at or below pi");
        c.require(t < kSqrt3 * kPi, "loss time at or above pi*sqrt(3)");
    }
    return {8, "loss-of-optimality bracket", c.ok,
            c.note.empty() ? "20 parameters strictly inside (pi, pi*sqrt(3))" : c.note, 0.0};
}

CriterionResult isotropy_invariance(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x150a7e5ULL);
    Check c;
    int checked = 0;
    // Non-cut targets: interior points and lower-segment points.
    for (int i = 0; i < 10; ++i) {
        const OrbitPoint p =
            make_orbit_point(uniform(rng, 0.3, 2.9), uniform(rng, 0.2, 2.9));
        const GroupElement x = conjugate(random_symmetry(rng), representative(p));
        const SynthesisResult res = solve(x);
        c.require(isotropy_invariance_check(x, res.spec(), 3), "interior solution fails");
        ++checked;
    }
    for (int i = 0; i < 10; ++i) {
        const GroupElement x =
            conjugate(random_symmetry(rng), rotation_h(uniform(rng, 0.2, 2.9)));
        const SynthesisResult res = solve(x);
        c.require(isotropy_invariance_check(x, res.spec(), 3), "segment solution fails");
        ++checked;
    }
    // Boundary-arc targets reject any nonzero P direction already at depth 0.
    for (double r : {0.3, 0.9, kPi / 2, 2.0, 2.9}) {
        const GroupElement x = SymmetryElement::plus(r).matrix();
        const GeodesicSpec g{AlgebraElement::k() * 0.7, AlgebraElement::p1(), 1.0};
        c.require(!isotropy_invariance_check(x, g, 0), "vertical-arc target accepted A_p != 0");
    }
    std::ostringstream os;
    os << checked << " non-cut solutions invariant to depth 3, 5 boundary rejections";
    if (!c.note.empty()) os << " (" << c.note << ")";
    return {9, "isotropy invariance of minimizers", c.ok, os.str(), 0.0};
}

void export_figures(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    // Strata map over the half disc.
    {
        std::ofstream out(fs::path(dir) / "strata_map.csv");
        out << "rho,theta,stratum\n";
        const int n = 120;
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                const OrbitPoint p = make_orbit_point(kPi * i / n, kPi * j / n);
                out << format_number(p.rho) << ',' << format_number(p.theta) << ','
                    << to_string(classify(p)) << '\n';
            }
        }
    }

    // Optimal trajectories for a parameter grid, each sampled to its loss time.
    {
        std::ofstream out(fs::path(dir) / "optimal_trajectories.csv");
        out << "alpha,t,rho,theta\n";
        const std::vector<double> alphas = {0.0,  0.1, 0.25, 0.4,  0.5, 1.0 / kSqrt3,
                                            0.75, 1.0, 1.5,  2.25, 3.5, 6.0};
        for (double alpha : alphas) {
            const double t_end = loss_of_optimality_time(alpha);
            for (int i = 0; i <= 400; ++i) {
                const double t = t_end * i / 400.0;
                const OrbitPoint p = reduced_projection(ReducedGeodesic{alpha}, t);
                out << format_number(alpha) << ',' << format_number(t) << ','
                    << format_number(p.rho) << ',' << format_number(p.theta) << '\n';
            }
        }
    }

    // Reachable-set frontiers over an evenly spaced time grid.
    {
        nlohmann::json manifest;
        manifest["times"] = nlohmann::json::array();
        for (int j = 1; j <= 12; ++j) {
            const double t = kSqrt3 * kPi * j / 12.0;
            const FrontierCurve curve = frontier(t);
            std::ostringstream name;
            name << "frontier_" << j << ".csv";
            std::ofstream out(fs::path(dir) / name.str());
            write_frontier_csv(out, curve);
            manifest["times"].push_back(t);
            manifest["files"].push_back(name.str());
        }
        std::ofstream out(fs::path(dir) / "frontiers.json");
        out << manifest.dump(2) << '\n';
    }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const Options& options) {
    std::vector<CriterionResult> results;
    auto timed = [&](auto&& fn) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(r));
    };

    timed([&] { return boundary_minimum_time(); });
    timed([&] { return origin_and_segment(options.seed); });
    if (options.skip_oracle) {
        results.push_back({3, "brute-force oracle agreement", true, "skipped on request", 0.0});
    } else {
        timed([&] { return oracle_agreement(options); });
    }
    timed([&] { return formula_consistency(options.seed); });
    timed([&] { return symmetry_invariants(options.seed); });
    timed([&] { return cut_locus(options.seed); });
    timed([&] { return reachable_sets(options.seed); });
    timed([&] { return loss_bracket(); });
    timed([&] { return isotropy_invariance(options.seed); });

    std::sort(results.begin(), results.end(),
              [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });

    if (!options.export_dir.empty()) export_figures(options.export_dir);
    return results;
}

std::string format_report(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    for (const CriterionResult& r : results) {
        os << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " - "
           << r.detail << " [" << std::fixed << r.seconds << std::defaultfloat << "s]\n";
    }
    return os.str();
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results) {
        if (!r.passed) return false;
    }
    return true;
}

}  // namespace kpso3::verify
