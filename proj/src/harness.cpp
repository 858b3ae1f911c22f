#include "sdea/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "sdea/format.hpp"

namespace sdea {

StoppingPolicy stopping_policy(const Problem& problem)
{
    return StoppingPolicy{.stop_on_trap = problem.trap_fitness().has_value()};
}

std::uint64_t default_budget(const ProblemSpec& problem, std::size_t n)
{
    if (problem.id == "needhighmut") {
        return std::uint64_t{10000} * n * n;
    }
    return 1000000000ULL;
}

std::string cell_key(const std::string& algorithm, const std::string& params, const std::string& problem, std::size_t n)
{
    return algorithm + "|" + params + "|" + problem + "|" + std::to_string(n);
}

namespace {

struct Cell {
    std::unique_ptr<Problem> problem;
    std::string params;
    std::uint64_t cell_id = 0;
    std::uint64_t budget = 0;
    StoppingPolicy policy;
};

std::string join_params(const std::string& a, const std::string& b)
{
    if (a.empty()) {
        return b;
    }
    if (b.empty()) {
        return a;
    }
    return a + ";" + b;
}

auto record_order(const RunRecord& r)
{
    return std::tie(r.problem, r.algorithm, r.n, r.params, r.run_index);
}

} // namespace

void sort_records(std::vector<RunRecord>& records)
{
    std::sort(records.begin(), records.end(),
              [](const RunRecord& a, const RunRecord& b) { return record_order(a) < record_order(b); });
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config)
{
    validate(config.algorithm);
    validate(config.problem);
    if (config.runs < 1) {
        throw std::invalid_argument("experiment: runs must be at least 1");
    }
    if (config.budget && *config.budget == 0) {
        throw std::invalid_argument("experiment: budget must be at least 1");
    }
    if (config.dimensions.empty()) {
        throw std::invalid_argument("experiment: no dimensions given");
    }

    std::vector<Cell> cells;
    for (std::size_t n : config.dimensions) {
        Cell cell;
        cell.problem = make_problem(config.problem, n);
        const auto probe = make_engine(config.algorithm, *cell.problem);
        cell.params = join_params(probe->params(), cell.problem->params());
        cell.cell_id = stable_hash(cell_key(config.algorithm.id, cell.params, config.problem.id, n));
        cell.budget = config.budget.value_or(default_budget(config.problem, n));
        cell.policy = stopping_policy(*cell.problem);
        cells.push_back(std::move(cell));
    }

    const std::size_t total = cells.size() * config.runs;
    std::vector<RunRecord> records(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&] {
        while (true) {
            const std::size_t item = next.fetch_add(1);
            if (item >= total) {
                return;
            }
            try {
                const Cell& cell = cells[item / config.runs];
                const auto run_index = static_cast<std::uint32_t>(item % config.runs);
                const std::uint64_t seed = mix_seed(config.base_seed, cell.cell_id, run_index);
                RandomStream rng(seed);
                auto engine = make_engine(config.algorithm, *cell.problem);
                const RunOutcome outcome = run_to_termination(*engine, cell.budget, rng, cell.policy);

                RunRecord& record = records[item];
                record.algorithm = config.algorithm.id;
                record.problem = config.problem.id;
                record.n = cell.problem->dimension();
                record.params = cell.params;
                record.run_index = run_index;
                record.seed = seed;
                record.evaluations = outcome.evaluations;
                record.success = outcome.terminal == Terminal::optimum;
                record.terminal = outcome.terminal;
                record.final_fitness = outcome.final_fitness;
                record.max_strength = outcome.max_strength;
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(total);
                return;
            }
        }
    };

    unsigned jobs = config.jobs == 0 ? std::max(1U, std::thread::hardware_concurrency()) : config.jobs;
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, total));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    sort_records(records);
    return records;
}

double quantile_sorted(std::span<const double> sorted, double q)
{
    if (sorted.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double h = static_cast<double>(sorted.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<CellSummary> summarize(std::span<const RunRecord> records)
{
    if (records.empty()) {
        throw std::invalid_argument("summarize: no records");
    }
    using Key = std::tuple<std::string, std::string, std::size_t, std::string>;
    std::map<Key, std::vector<const RunRecord*>> groups;
    for (const auto& r : records) {
        groups[Key{r.problem, r.algorithm, r.n, r.params}].push_back(&r);
    }

    std::vector<CellSummary> result;
    result.reserve(groups.size());
    for (const auto& [key, members] : groups) {
        CellSummary s;
        std::tie(s.problem, s.algorithm, s.n, s.params) = key;
        s.count = members.size();
        std::vector<double> evals;
        for (const RunRecord* r : members) {
            if (r->success) {
                evals.push_back(static_cast<double>(r->evaluations));
            }
        }
        s.success_ratio = static_cast<double>(evals.size()) / static_cast<double>(s.count);
        std::sort(evals.begin(), evals.end());
        const double nan = std::numeric_limits<double>::quiet_NaN();
        s.mean_evals = evals.empty() ? nan : std::accumulate(evals.begin(), evals.end(), 0.0) / static_cast<double>(evals.size());
        s.median_evals = quantile_sorted(evals, 0.5);
        s.q1 = quantile_sorted(evals, 0.25);
        s.q3 = quantile_sorted(evals, 0.75);
        s.min = evals.empty() ? nan : evals.front();
        s.max = evals.empty() ? nan : evals.back();
        result.push_back(std::move(s));
    }
    return result;
}

Interval bootstrap_mean_ci(std::span<const double> values, double level, std::size_t resamples, std::uint64_t seed)
{
    if (values.empty() || resamples == 0 || !(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("bootstrap_mean_ci: need values, resamples > 0 and 0 < level < 1");
    }
    RandomStream rng(seed);
    std::vector<double> means(resamples);
    for (auto& mean : means) {
        double sum = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            sum += values[rng.below(values.size())];
        }
        mean = sum / static_cast<double>(values.size());
    }
    std::sort(means.begin(), means.end());
    const double tail = (1.0 - level) / 2.0;
    return {quantile_sorted(means, tail), quantile_sorted(means, 1.0 - tail)};
}

namespace {

std::string format_optional(double value) { return std::isnan(value) ? std::string{} : format_number(value); }

std::ofstream open_for_writing(const std::filesystem::path& path)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path)
{
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

} // namespace

std::string to_csv_row(const RunRecord& r)
{
    return r.algorithm + "," + r.problem + "," + std::to_string(r.n) + "," + r.params + "," +
           std::to_string(r.run_index) + "," + std::to_string(r.seed) + "," + std::to_string(r.evaluations) + "," +
           (r.success ? "true" : "false") + "," + to_string(r.terminal) + "," + std::to_string(r.final_fitness) + "," +
           format_number(r.max_strength);
}

std::string to_csv_row(const CellSummary& s)
{
    return s.problem + "," + s.algorithm + "," + std::to_string(s.n) + "," + s.params + "," + std::to_string(s.count) +
           "," + format_number(s.success_ratio) + "," + format_optional(s.mean_evals) + "," +
           format_optional(s.median_evals) + "," + format_optional(s.q1) + "," + format_optional(s.q3) + "," +
           format_optional(s.min) + "," + format_optional(s.max);
}

void write_csv(const std::filesystem::path& path, std::vector<RunRecord> records)
{
    sort_records(records);
    auto out = open_for_writing(path);
    out << records_header << '\n';
    for (const auto& r : records) {
        out << to_csv_row(r) << '\n';
    }
    finish(out, path);
}

void write_csv(const std::filesystem::path& path, std::span<const CellSummary> summaries)
{
    auto out = open_for_writing(path);
    out << summaries_header << '\n';
    for (const auto& s : summaries) {
        out << to_csv_row(s) << '\n';
    }
    finish(out, path);
}

} // namespace sdea
