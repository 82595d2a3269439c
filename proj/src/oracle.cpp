#include "kpso3/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace kpso3 {

namespace {

constexpr double kPi = std::numbers::pi;

// Step exponential exp((cos φ · p1 + sin φ · p2) dt) with precomputed
// sin(dt) and 1 - cos(dt).
Eigen::Matrix3d step_matrix(double phi, double sdt, double omc) {
    const double c = std::cos(phi), s = std::sin(phi);
    Eigen::Matrix3d e;
    e << 1.0 - omc * s * s, omc * c * s, sdt * s,
        omc * c * s, 1.0 - omc * c * c, -sdt * c,
        -sdt * s, sdt * c, 1.0 - omc;
    return e;
}

double disc_distance(const Eigen::Matrix3d& x, const Eigen::Vector2d& target_pos) {
    const double x33 = std::clamp(x(2, 2), -1.0, 1.0);
    const double rho = kPi - std::acos(x33);
    double theta = 0.0;
    if (1.0 + x33 > 1e-15) {
        theta = std::acos(std::clamp((x(0, 0) + x(1, 1)) / (1.0 + x33), -1.0, 1.0));
    }
    const Eigen::Vector2d pos(rho * std::cos(theta), rho * std::sin(theta));
    return (pos - target_pos).norm();
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d4a885397f4b7ULL;
    return x ^ (x >> 31);
}

struct SearchResult {
    double dist = std::numeric_limits<double>::infinity();
    int restart = std::numeric_limits<int>::max();
    std::vector<double> angles;

    bool better_than(const SearchResult& o) const {
        return dist < o.dist || (dist == o.dist && restart < o.restart);
    }
};

// Coordinate descent over the step angles, evaluated incrementally through
// prefix/suffix products so one trial costs two matrix multiplies.
double descend(std::vector<double>& angles, double dt, const Eigen::Vector2d& target_pos,
               double stop_tol) {
    const int n = static_cast<int>(angles.size());
    const double sdt = std::sin(dt), omc = 1.0 - std::cos(dt);

    std::vector<Eigen::Matrix3d> step(n), suffix(n + 1);
    auto evaluate_current = [&]() {
        Eigen::Matrix3d x = Eigen::Matrix3d::Identity();
        for (int i = 0; i < n; ++i) x = step[i] * x;
        return disc_distance(x, target_pos);
    };

    for (int i = 0; i < n; ++i) step[i] = step_matrix(angles[i], sdt, omc);
    double best = evaluate_current();

    double delta = 0.9;
    int passes = 0;
    while (delta >= 0.02 && passes < 40) {
        ++passes;
        suffix[n].setIdentity();
        for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] * step[i];

        bool improved = false;
        Eigen::Matrix3d prefix = Eigen::Matrix3d::Identity();
        for (int i = 0; i < n; ++i) {
            for (double trial : {angles[i] + delta, angles[i] - delta}) {
                const Eigen::Matrix3d e = step_matrix(trial, sdt, omc);
                const double d = disc_distance(suffix[i + 1] * (e * prefix), target_pos);
                if (d < best) {
                    best = d;
                    angles[i] = trial;
                    step[i] = e;
                    improved = true;
                }
            }
            prefix = step[i] * prefix;
        }
        if (best <= stop_tol) break;
        if (!improved) delta *= 0.45;
        // Far-off local minima are abandoned early; with the restart volume
        // used here polishing them never pays off.
        if (passes == 4 && best > 0.6) break;
    }
    return best;
}

SearchResult search_horizon(double horizon, int restarts, const SearchBudget& budget,
                            const std::vector<std::vector<double>>& warm,
                            const Eigen::Vector2d& target_pos, std::uint64_t level_salt) {
    const int n = budget.steps;
    const double dt = horizon / n;

    auto run_restart = [&](int r) {
        SearchResult out;
        out.restart = r;
        std::vector<double> angles(n);
        if (r < static_cast<int>(warm.size())) {
            angles = warm[r];
            angles.resize(n, 0.0);
        } else {
            std::mt19937_64 rng(splitmix64(budget.seed ^ level_salt ^ (0x100000001b3ULL * r)));
            std::uniform_real_distribution<double> uni(-kPi, kPi);
            for (double& a : angles) a = uni(rng);
        }
        out.dist = descend(angles, dt, target_pos, 0.5 * budget.orbit_tol);
        out.angles = std::move(angles);
        return out;
    };

    int n_threads = budget.threads > 0 ? budget.threads
                                       : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min(n_threads, restarts));

    std::vector<SearchResult> per_thread(n_threads);
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int tid = 0; tid < n_threads; ++tid) {
        pool.emplace_back([&, tid]() {
            SearchResult local;
            for (int r = tid; r < restarts; r += n_threads) {
                SearchResult res = run_restart(r);
                if (res.better_than(local)) local = std::move(res);
            }
            per_thread[tid] = std::move(local);
        });
    }
    for (auto& th : pool) th.join();

    SearchResult best;
    for (SearchResult& res : per_thread) {
        if (res.better_than(best)) best = std::move(res);
    }
    return best;
}

}  // namespace

GroupElement integrate(const ControlSchedule& c) {
    const double sdt = std::sin(c.dt), omc = 1.0 - std::cos(c.dt);
    Eigen::Matrix3d x = Eigen::Matrix3d::Identity();
    for (double phi : c.angles) x = step_matrix(phi, sdt, omc) * x;
    return GroupElement::trusted(x);
}

double estimate_min_time(const OrbitPoint& target, const SearchBudget& budget) {
    if (budget.steps < 2 || budget.restarts < 1) {
        throw std::invalid_argument("search budget too small");
    }
    const OrbitPoint half = make_orbit_point(target.rho, std::abs(target.theta));
    const Eigen::Vector2d target_pos = embed(half);

    const int levels =
        static_cast<int>(std::ceil(std::log2(std::sqrt(3.0) * kPi / budget.time_tol))) + 1;
    const int slice = std::max(8, budget.restarts / levels);

    // Establish a feasible horizon first; everything is reachable by π√3,
    // so only a few growth steps are ever needed.
    double t_hi = std::sqrt(3.0) * kPi;
    std::vector<std::vector<double>> warm;
    SearchResult top;
    for (int attempt = 0;; ++attempt) {
        top = search_horizon(t_hi, 2 * slice, budget, warm, target_pos, splitmix64(900 + attempt));
        if (top.dist <= budget.orbit_tol) break;
        if (attempt >= 3) throw NoEstimateError("no schedule reaches the target within budget");
        t_hi *= 1.06;
    }
    warm.push_back(top.angles);

    double t_lo = 0.0;
    int level = 0;
    while (t_hi - t_lo > budget.time_tol) {
        const double t_mid = 0.5 * (t_hi + t_lo);
        const SearchResult res =
            search_horizon(t_mid, slice, budget, warm, target_pos, splitmix64(level++));
        if (res.dist <= budget.orbit_tol) {
            t_hi = t_mid;
            warm.insert(warm.begin(), res.angles);
            if (warm.size() > 3) warm.resize(3);
        } else {
            t_lo = t_mid;
        }
    }

    // Pad by the acceptance radius: the schedule ends within orbit_tol of the
    // target, so the exact target is reachable by t_hi plus that distance.
    return t_hi + budget.orbit_tol;
}

}  // namespace kpso3
