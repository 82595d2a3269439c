// kpso3: minimum-time synthesis for the two-control rotation steering
// problem, reduced to the orbit-space disc.

#include "kpso3/cli.hpp"

#include <CLI11.hpp>

#include <utility>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"Minimum-time synthesis on SO(3) via orbit-space reduction"};
    app.require_subcommand(1);

    kpso3::cli::CommandConfig cfg;
    std::vector<double> orbit;
    std::string format = "json";
    std::string mode = "half";

    auto add_target = [&](CLI::App* sub) {
        sub->add_option("--target", cfg.target_file, "3x3 rotation matrix file (text or JSON)");
        sub->add_option("--orbit", orbit, "orbit coordinates RHO THETA")->expected(2);
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "output path (directory for reachset)");
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--mode", mode, "orbit-space mode")
            ->check(CLI::IsMember({"half", "full"}));
        sub->add_option("--seed", cfg.seed, "random seed");
    };

    CLI::App* solve = app.add_subcommand("solve", "minimum time and optimal parameters");
    add_target(solve);
    add_common(solve);

    CLI::App* project = app.add_subcommand("project", "orbit coordinates of a rotation");
    add_target(project);
    add_common(project);

    CLI::App* geodesic = app.add_subcommand("geodesic", "sample the optimal trajectory");
    add_target(geodesic);
    add_common(geodesic);
    geodesic->add_option("--samples", cfg.samples, "number of table rows");

    CLI::App* reachset = app.add_subcommand("reachset", "export reachable-set frontiers");
    add_common(reachset);
    reachset->add_option("--times", cfg.times, "frontier times")->delimiter(',');

    CLI::App* strata = app.add_subcommand("strata", "classification map of the disc");
    add_common(strata);
    strata->add_option("--grid", cfg.grid, "grid resolution per axis");

    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
    add_common(verify);
    verify->add_option("--restarts", cfg.oracle_restarts, "oracle restart budget");
    verify->add_flag("--skip-oracle", cfg.skip_oracle, "skip the brute-force criterion");

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) cfg.subcommand = kpso3::cli::Subcommand::solve;
    if (project->parsed()) cfg.subcommand = kpso3::cli::Subcommand::project;
    if (geodesic->parsed()) cfg.subcommand = kpso3::cli::Subcommand::geodesic;
    if (reachset->parsed()) cfg.subcommand = kpso3::cli::Subcommand::reachset;
    if (strata->parsed()) cfg.subcommand = kpso3::cli::Subcommand::strata;
    if (verify->parsed()) cfg.subcommand = kpso3::cli::Subcommand::verify;

    if (orbit.size() == 2) cfg.orbit = std::make_pair(orbit[0], orbit[1]);
    cfg.format = format == "csv" ? kpso3::cli::Format::csv : kpso3::cli::Format::json;
    cfg.mode = mode == "full" ? kpso3::DiscMode::full_disc : kpso3::DiscMode::half_disc;

    return kpso3::cli::run(cfg);
}
