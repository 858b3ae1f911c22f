#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sdea/harness.hpp"

namespace sdea::cli {

/// "40", "40,60,80" or the inclusive range "40:160:20". Throws std::invalid_argument.
std::vector<std::size_t> parse_dimensions(std::string_view text);

/// Strength from a rate flag: "8n" and "8" mean r = 8, "mn" means r = gap.
/// Throws std::invalid_argument (also for "mn" without a gap).
double parse_strength(std::string_view text, std::optional<std::size_t> gap);

/// Evaluation budget; accepts integers and exact scientific forms such as "1e9".
std::uint64_t parse_count(std::string_view text);

/// One named experiment of `repro`: its configs and the file stem of its CSVs.
struct ReproPlan {
    std::string stem;
    std::vector<ExperimentConfig> configs;
};

/// Throws std::invalid_argument for an unknown experiment or a non-positive scale.
ReproPlan repro_plan(const std::string& experiment, double scale, std::uint64_t seed, unsigned jobs);

/// Runs every config of the plan and writes <stem>_records.csv and <stem>_summary.csv into `dir`.
std::vector<CellSummary> execute_plan(const ReproPlan& plan, const std::filesystem::path& dir);

/// Entry point of the `sdea` tool. Exit codes: 0 success, 1 failed check or I/O error,
/// 2 usage error (CLI11 parse errors keep their own nonzero codes).
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sdea::cli
