#pragma once

#include <cstdint>
#include <string>
#include <vector>

/// The acceptance checks for the synthesis: quantitative reproductions of
/// the closed-form minimum times, the loss-of-optimality bracket, the
/// symmetry and cut-locus structure, the reachable-set properties and the
/// independent brute-force agreement, each with a pinned tolerance. Run by
/// the acceptance test binary and by the `verify` CLI subcommand.
namespace kpso3::verify {

struct Options {
    std::uint64_t seed = 0;
    int oracle_restarts = 10000;  ///< total restart budget per oracle target
    int oracle_steps = 40;
    int threads = 0;              ///< 0 = hardware concurrency
    bool skip_oracle = false;     ///< drop the slow brute-force criterion
    std::string export_dir;       ///< when set, also write figure data files
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs every acceptance criterion in order; never throws on criterion
/// failure (failures are reported in the results).
std::vector<CriterionResult> run_acceptance(const Options& options);

/// One "PASS criterion N: ..." line per result.
std::string format_report(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace kpso3::verify
