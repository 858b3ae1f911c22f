#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sdea/harness.hpp"

namespace sdea {
namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentConfig small_config()
{
    ExperimentConfig c;
    c.algorithm.id = "sd";
    c.problem = ProblemSpec{.id = "jump", .gap = 2};
    c.dimensions = {12, 16};
    c.runs = 20;
    c.base_seed = 42;
    return c;
}

TEST(Quantiles, LinearInclusive)
{
    const std::vector<double> v{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.5), 2.5);
    EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.25), 1.75);
    EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.75), 3.25);
    EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(quantile_sorted(v, 1.0), 4.0);
    const std::vector<double> one{7};
    EXPECT_DOUBLE_EQ(quantile_sorted(one, 0.3), 7.0);
    EXPECT_TRUE(std::isnan(quantile_sorted(std::vector<double>{}, 0.5)));
}

TEST(RunExperiment, RecordCountAndOrder)
{
    const auto records = run_experiment(small_config());
    ASSERT_EQ(records.size(), 40U);
    for (std::size_t i = 0; i < records.size(); ++i) {
        EXPECT_EQ(records[i].n, i < 20 ? 12U : 16U);
        EXPECT_EQ(records[i].run_index, i % 20);
        EXPECT_EQ(records[i].params, "R=" + std::to_string(records[i].n) + ";m=2");
        EXPECT_TRUE(records[i].success);
        EXPECT_EQ(records[i].terminal, Terminal::optimum);
        EXPECT_EQ(records[i].final_fitness, static_cast<Fitness>(records[i].n + 2));
    }
}

TEST(RunExperiment, IndependentOfWorkerCount)
{
    auto config = small_config();
    config.jobs = 1;
    const auto serial = run_experiment(config);
    config.jobs = 8;
    const auto parallel = run_experiment(config);
    EXPECT_EQ(serial, parallel);
}

TEST(RunExperiment, SeedsFollowCellKey)
{
    const auto records = run_experiment(small_config());
    const auto& r = records[3];
    const auto cell = stable_hash(cell_key("sd", r.params, "jump", r.n));
    EXPECT_EQ(r.seed, mix_seed(42, cell, 3));
}

TEST(RunExperiment, SuccessMonotoneInBudget)
{
    auto config = small_config();
    config.dimensions = {30};
    config.problem.gap = 3;
    config.runs = 30;
    double previous = -1.0;
    for (std::uint64_t budget : {500U, 5000U, 50000U, 500000U}) {
        config.budget = budget;
        const auto s = summarize(run_experiment(config));
        ASSERT_EQ(s.size(), 1U);
        EXPECT_GE(s[0].success_ratio, previous);
        previous = s[0].success_ratio;
    }
}

TEST(RunExperiment, RejectsInvalidConfig)
{
    auto c = small_config();
    c.runs = 0;
    EXPECT_THROW(run_experiment(c), std::invalid_argument);
    c = small_config();
    c.budget = 0;
    EXPECT_THROW(run_experiment(c), std::invalid_argument);
    c = small_config();
    c.dimensions.clear();
    EXPECT_THROW(run_experiment(c), std::invalid_argument);
    c = small_config();
    c.algorithm.beta = 2.0;
    EXPECT_THROW(run_experiment(c), std::invalid_argument);
}

TEST(Budgets, Defaults)
{
    EXPECT_EQ(default_budget(ProblemSpec{.id = "needhighmut"}, 400), 1600000000U);
    EXPECT_EQ(default_budget(ProblemSpec{.id = "jump", .gap = 4}, 160), 1000000000U);
    const NeedHighMut nhm(100, 1.0);
    EXPECT_TRUE(stopping_policy(nhm).stop_on_trap);
    const OneMax om(10);
    EXPECT_FALSE(stopping_policy(om).stop_on_trap);
}

TEST(Summaries, StatisticsOverSuccessfulRuns)
{
    std::vector<RunRecord> records;
    const std::uint64_t evals[] = {10, 20, 30, 40, 999};
    for (std::uint32_t i = 0; i < 5; ++i) {
        RunRecord r;
        r.algorithm = "sd";
        r.problem = "onemax";
        r.n = 10;
        r.params = "R=10";
        r.run_index = i;
        r.evaluations = evals[i];
        r.success = i < 4;
        r.terminal = r.success ? Terminal::optimum : Terminal::budget;
        records.push_back(r);
    }
    const auto s = summarize(records);
    ASSERT_EQ(s.size(), 1U);
    EXPECT_EQ(s[0].count, 5U);
    EXPECT_DOUBLE_EQ(s[0].success_ratio, 0.8);
    EXPECT_DOUBLE_EQ(s[0].mean_evals, 25.0);
    EXPECT_DOUBLE_EQ(s[0].median_evals, 25.0);
    EXPECT_DOUBLE_EQ(s[0].q1, 17.5);
    EXPECT_DOUBLE_EQ(s[0].q3, 32.5);
    EXPECT_DOUBLE_EQ(s[0].min, 10.0);
    EXPECT_DOUBLE_EQ(s[0].max, 40.0);
    EXPECT_EQ(to_csv_row(s[0]), "onemax,sd,10,R=10,5,0.8,25,25,17.5,32.5,10,40");

    for (auto& r : records) {
        r.success = false;
    }
    const auto none = summarize(records);
    EXPECT_EQ(none[0].success_ratio, 0.0);
    EXPECT_TRUE(std::isnan(none[0].mean_evals));
    EXPECT_EQ(to_csv_row(none[0]), "onemax,sd,10,R=10,5,0,,,,,,");
    EXPECT_THROW(summarize({}), std::invalid_argument);
}

TEST(Csv, RecordRowsAndFiles)
{
    RunRecord r;
    r.algorithm = "static";
    r.problem = "jump";
    r.n = 80;
    r.params = "r=4;m=4";
    r.run_index = 7;
    r.seed = 123;
    r.evaluations = 456;
    r.success = true;
    r.terminal = Terminal::optimum;
    r.final_fitness = 84;
    r.max_strength = 4.0;
    EXPECT_EQ(to_csv_row(r), "static,jump,80,r=4;m=4,7,123,456,true,optimum,84,4");

    const auto dir = std::filesystem::temp_directory_path() / "sdea_harness_test";
    std::filesystem::remove_all(dir);
    const auto path = dir / "nested" / "records.csv";
    auto second = r;
    second.run_index = 2;
    write_csv(path, std::vector<RunRecord>{r, second});
    const auto text = slurp(path);
    EXPECT_EQ(text, std::string(records_header) + "\n" + to_csv_row(second) + "\n" + to_csv_row(r) + "\n");

    const std::vector<CellSummary> summaries = summarize(std::vector<RunRecord>{r});
    write_csv(dir / "summary.csv", summaries);
    EXPECT_EQ(slurp(dir / "summary.csv").substr(0, std::string(summaries_header).size()), summaries_header);

    EXPECT_THROW(write_csv(dir, std::vector<RunRecord>{r}), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST(Bootstrap, CoversTheMean)
{
    RandomStream rng(5);
    std::vector<double> values(400);
    for (auto& v : values) {
        v = rng.uniform01();
    }
    const auto ci = bootstrap_mean_ci(values, 0.95, 2000, 1);
    double mean = 0.0;
    for (double v : values) {
        mean += v / values.size();
    }
    EXPECT_LT(ci.lower, mean);
    EXPECT_GT(ci.upper, mean);
    // Width close to 2 * 1.96 * sd / sqrt(N) with sd = sqrt(1/12).
    EXPECT_NEAR(ci.upper - ci.lower, 2 * 1.96 * std::sqrt(1.0 / 12 / 400), 0.01);
    EXPECT_EQ(bootstrap_mean_ci(values, 0.95, 500, 9).lower, bootstrap_mean_ci(values, 0.95, 500, 9).lower);
    EXPECT_THROW(bootstrap_mean_ci({}, 0.95, 10, 1), std::invalid_argument);
}

} // namespace
} // namespace sdea
