#include "kpso3/cli.hpp"

#include "kpso3/geodesics.hpp"
#include "kpso3/reachable.hpp"
#include "kpso3/serialization.hpp"
#include "kpso3/synthesis.hpp"
#include "kpso3/verify.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace kpso3::cli {

namespace {

constexpr double kPi = std::numbers::pi;

GroupElement load_target(const CommandConfig& cfg) {
    if (cfg.orbit) {
        return representative(make_orbit_point(cfg.orbit->first, cfg.orbit->second, cfg.mode));
    }
    if (cfg.target_file.empty()) {
        throw std::invalid_argument("a --target file or --orbit pair is required");
    }
    return read_group_element_file(cfg.target_file);
}

void emit(const CommandConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.out);
        if (!out) throw std::runtime_error("cannot open output path: " + cfg.out);
        out << text;
    }
}

int run_solve(const CommandConfig& cfg) {
    const SynthesisResult res = solve(load_target(cfg));
    emit(cfg, to_json(res).dump(2) + "\n");
    return 0;
}

int run_project(const CommandConfig& cfg) {
    const OrbitPoint p = project(load_target(cfg), cfg.mode);
    emit(cfg, to_json(p).dump(2) + "\n");
    return 0;
}

int run_geodesic(const CommandConfig& cfg) {
    const GroupElement target = load_target(cfg);
    const SynthesisResult res = solve(target);
    const int n = std::max(cfg.samples, 2);

    std::ostringstream os;
    if (cfg.format == Format::csv) {
        os << "t,rho,theta,x11,x12,x13,x21,x22,x23,x31,x32,x33\n";
    }
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
        const double t = res.t_min * i / (n - 1.0);
        const GroupElement x = geodesic_at(res.spec(), t);
        const OrbitPoint p = project(x, cfg.mode);
        if (cfg.format == Format::csv) {
            os << format_number(t) << ',' << format_number(p.rho) << ','
               << format_number(p.theta);
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) os << ',' << format_number(x.matrix()(r, c));
            }
            os << '\n';
        } else {
            nlohmann::json row = {{"t", t}, {"rho", p.rho}, {"theta", p.theta}};
            nlohmann::json m = nlohmann::json::array();
            for (int r = 0; r < 3; ++r) {
                m.push_back({x.matrix()(r, 0), x.matrix()(r, 1), x.matrix()(r, 2)});
            }
            row["X"] = m;
            rows.push_back(row);
        }
    }
    if (cfg.format == Format::csv) {
        emit(cfg, os.str());
    } else {
        emit(cfg, nlohmann::json{{"T_min", res.t_min}, {"samples", rows}}.dump(2) + "\n");
    }
    return 0;
}

int run_reachset(const CommandConfig& cfg) {
    std::vector<double> times = cfg.times;
    if (times.empty()) {
        for (int j = 1; j <= 12; ++j) times.push_back(std::sqrt(3.0) * kPi * j / 12.0);
    }
    const std::filesystem::path dir = cfg.out.empty() ? "." : cfg.out;
    std::filesystem::create_directories(dir);

    nlohmann::json manifest;
    manifest["times"] = times;
    manifest["files"] = nlohmann::json::array();
    for (std::size_t i = 0; i < times.size(); ++i) {
        const FrontierCurve curve = frontier(times[i]);
        std::ostringstream name;
        name << "frontier_" << (i + 1) << ".csv";
        std::ofstream out(dir / name.str());
        if (!out) throw std::runtime_error("cannot write frontier file");
        write_frontier_csv(out, curve);
        manifest["files"].push_back(name.str());
    }
    std::ofstream out(dir / "frontiers.json");
    out << manifest.dump(2) << '\n';
    return 0;
}

int run_strata(const CommandConfig& cfg) {
    const int n = std::max(cfg.grid, 2);
    std::ostringstream os;
    os << "rho,theta,stratum\n";
    const double theta_lo = cfg.mode == DiscMode::full_disc ? -kPi : 0.0;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const double rho = kPi * i / n;
            double theta = theta_lo + (kPi - theta_lo) * j / n;
            if (rho == 0.0) theta = 0.0;
            const OrbitPoint p = make_orbit_point(rho, theta, cfg.mode);
            os << format_number(p.rho) << ',' << format_number(p.theta) << ','
               << to_string(classify(p)) << '\n';
        }
    }
    emit(cfg, os.str());
    return 0;
}

int run_verify(const CommandConfig& cfg) {
    verify::Options options;
    options.seed = cfg.seed;
    options.oracle_restarts = cfg.oracle_restarts;
    options.skip_oracle = cfg.skip_oracle;
    options.export_dir = cfg.out;
    const auto results = verify::run_acceptance(options);
    std::cout << verify::format_report(results);
    return verify::all_passed(results) ? 0 : 1;
}

}  // namespace

int run(const CommandConfig& cfg) {
    try {
        switch (cfg.subcommand) {
            case Subcommand::solve: return run_solve(cfg);
            case Subcommand::project: return run_project(cfg);
            case Subcommand::geodesic: return run_geodesic(cfg);
            case Subcommand::reachset: return run_reachset(cfg);
            case Subcommand::strata: return run_strata(cfg);
            case Subcommand::verify: return run_verify(cfg);
        }
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace kpso3::cli
