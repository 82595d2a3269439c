#pragma once

#include "kpso3/orbitspace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

/// Command surface of the kpso3 tool. Parsing lives in the executable; the
/// subcommands themselves are implemented here so they can be driven from
/// tests.
namespace kpso3::cli {

enum class Subcommand { solve, project, geodesic, reachset, strata, verify };

enum class Format { json, csv };

struct CommandConfig {
    Subcommand subcommand = Subcommand::solve;
    std::string target_file;                          ///< matrix file, or
    std::optional<std::pair<double, double>> orbit;   ///< (rho, theta)
    std::string out;                                  ///< output path (or directory)
    Format format = Format::json;
    DiscMode mode = DiscMode::half_disc;
    std::vector<double> times;                        ///< reachset time grid
    std::uint64_t seed = 0;
    int samples = 200;                                ///< geodesic table rows
    int grid = 120;                                   ///< strata grid resolution
    int oracle_restarts = 10000;
    bool skip_oracle = false;
};

/// Executes the configured subcommand. Returns 0 on success, 2 for malformed
/// target input, 3 for solver or search failures, 1 for acceptance failures
/// under `verify`.
int run(const CommandConfig& config);

}  // namespace kpso3::cli
