#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdea/engines.hpp"
#include "sdea/problems.hpp"

namespace sdea {

/// One algorithm on one problem over a list of dimensions. Fully determines the records.
struct ExperimentConfig {
    AlgorithmSpec algorithm;
    ProblemSpec problem;
    std::vector<std::size_t> dimensions;
    std::uint32_t runs = 1;
    std::optional<std::uint64_t> budget; // unset: default_budget per cell
    std::uint64_t base_seed = 1;
    unsigned jobs = 0;                   // worker threads; 0 = hardware concurrency
};

struct RunRecord {
    std::string algorithm;
    std::string problem;
    std::size_t n = 0;
    std::string params;
    std::uint32_t run_index = 0;
    std::uint64_t seed = 0;
    std::uint64_t evaluations = 0;
    bool success = false;
    Terminal terminal = Terminal::budget;
    Fitness final_fitness = 0;
    double max_strength = 0.0;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Statistics of one (problem, algorithm, n, params) cell. Evaluation statistics cover the
/// successful runs only and are NaN when there are none.
struct CellSummary {
    std::string problem;
    std::string algorithm;
    std::size_t n = 0;
    std::string params;
    std::size_t count = 0;
    double success_ratio = 0.0;
    double mean_evals = 0.0;
    double median_evals = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// NeedHighMut stops at its trap state; everything else only at the optimum or the budget.
StoppingPolicy stopping_policy(const Problem& problem);

/// 10^4 n^2 evaluations for NeedHighMut, 10^9 otherwise.
std::uint64_t default_budget(const ProblemSpec& problem, std::size_t n);

/// Key of a cell; hashed into the per-run seed.
std::string cell_key(const std::string& algorithm, const std::string& params, const std::string& problem, std::size_t n);

/// Executes every (dimension, run) pair. Run i of a cell uses seed
/// mix_seed(base_seed, stable_hash(cell key), i), so the result does not depend on the worker
/// count. Records come back sorted (see sort_records).
/// Throws std::invalid_argument for an invalid configuration.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

/// Orders by (problem, algorithm, n, params, run_index).
void sort_records(std::vector<RunRecord>& records);

/// Per-cell aggregation. Throws std::invalid_argument on empty input.
std::vector<CellSummary> summarize(std::span<const RunRecord> records);

/// Inclusive linear-interpolation quantile of sorted data (h = (N - 1) q).
double quantile_sorted(std::span<const double> sorted, double q);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

/// Percentile bootstrap confidence interval of the mean.
Interval bootstrap_mean_ci(std::span<const double> values, double level, std::size_t resamples, std::uint64_t seed);

inline constexpr const char* records_header =
    "algorithm,problem,n,params,run_index,seed,evaluations,success,terminal,final_fitness,max_strength";
inline constexpr const char* summaries_header =
    "problem,algorithm,n,params,count,success_ratio,mean_evals,median_evals,q1,q3,min,max";

std::string to_csv_row(const RunRecord& record);
std::string to_csv_row(const CellSummary& summary);

/// Header plus one row per record, sorted. Throws std::runtime_error naming the path on I/O failure.
void write_csv(const std::filesystem::path& path, std::vector<RunRecord> records);
void write_csv(const std::filesystem::path& path, std::span<const CellSummary> summaries);

} // namespace sdea
