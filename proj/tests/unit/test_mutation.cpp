#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sdea/mutation.hpp"

namespace sdea {
namespace {

double binomial_pmf(int n, int k, double p)
{
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(p) +
                    (n - k) * std::log1p(-p));
}

TEST(StandardBitMutation, FullStrengthComplements)
{
    RandomStream rng(1);
    const auto x = BitString::from_string("1100101");
    const auto y = standard_bit_mutation(x, 7.0, rng);
    EXPECT_EQ(y.to_string(), "0011010");
    EXPECT_EQ(x.to_string(), "1100101");
}

TEST(StandardBitMutation, RejectsBadStrength)
{
    RandomStream rng(1);
    const BitString x(10);
    EXPECT_THROW(standard_bit_mutation(x, 0.0, rng), std::invalid_argument);
    EXPECT_THROW(standard_bit_mutation(x, -1.0, rng), std::invalid_argument);
    EXPECT_THROW(standard_bit_mutation(x, 10.5, rng), std::invalid_argument);
    EXPECT_THROW(BitFlipSampler(0, 1.0), std::invalid_argument);
}

TEST(StandardBitMutation, MeanFlipsAtUnitStrength)
{
    RandomStream rng(2);
    const BitString zero(100);
    double sum = 0.0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
        sum += static_cast<double>(standard_bit_mutation(zero, 1.0, rng).popcount());
    }
    EXPECT_NEAR(sum / trials, 1.0, 0.05);
}

TEST(StandardBitMutation, ExactlyTwoSpecificBits)
{
    // Pr[only bits 3 and 71 flip] = p^2 (1-p)^98 at p = 2/100.
    const double p = 0.02;
    const double expected = p * p * std::pow(1.0 - p, 98);
    EXPECT_NEAR(expected, 5.52e-5, 0.01e-5);

    RandomStream rng(3);
    const BitFlipSampler sampler(100, 2.0);
    std::vector<std::uint32_t> flips;
    const long trials = 10000000;
    long hits = 0;
    for (long i = 0; i < trials; ++i) {
        sampler.sample(rng, flips);
        hits += (flips.size() == 2 && flips[0] == 3 && flips[1] == 71) ? 1 : 0;
    }
    const double observed = static_cast<double>(hits) / trials;
    EXPECT_NEAR(observed, expected, 4.0 * std::sqrt(expected * (1 - expected) / trials));
}

TEST(BitFlipSampler, SortedDistinctPositions)
{
    RandomStream rng(4);
    const BitFlipSampler sampler(50, 10.0);
    std::vector<std::uint32_t> flips;
    for (int i = 0; i < 10000; ++i) {
        sampler.sample(rng, flips);
        ASSERT_TRUE(std::is_sorted(flips.begin(), flips.end()));
        ASSERT_EQ(std::adjacent_find(flips.begin(), flips.end()), flips.end());
        ASSERT_TRUE(flips.empty() || flips.back() < 50U);
    }
}

TEST(BitFlipSampler, FlipCountIsBinomial)
{
    const int n = 20;
    const double p = 0.25;
    RandomStream rng(5);
    const BitFlipSampler sampler(n, n * p);
    std::vector<std::uint32_t> flips;
    std::vector<double> counts(n + 1, 0.0);
    const int trials = 200000;
    for (int i = 0; i < trials; ++i) {
        sampler.sample(rng, flips);
        counts[flips.size()] += 1.0;
    }
    // Chi-square over cells with expectation >= 5, remainder pooled.
    double chi2 = 0.0;
    int cells = 0;
    double pooled_obs = 0.0;
    double pooled_exp = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double e = trials * binomial_pmf(n, k, p);
        if (e >= 5.0) {
            chi2 += (counts[k] - e) * (counts[k] - e) / e;
            ++cells;
        } else {
            pooled_obs += counts[k];
            pooled_exp += e;
        }
    }
    if (pooled_exp > 0.0) {
        chi2 += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
        ++cells;
    }
    ASSERT_GE(cells, 12);
    EXPECT_LT(chi2, 45.0); // well beyond the 0.999 quantile for <= 20 d.o.f.
}

TEST(BitFlipSampler, EachPositionAtRate)
{
    const int n = 50;
    const double r = 3.0;
    RandomStream rng(6);
    const BitFlipSampler sampler(n, r);
    std::vector<std::uint32_t> flips;
    std::vector<int> per_position(n, 0);
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
        sampler.sample(rng, flips);
        for (auto f : flips) {
            ++per_position[f];
        }
    }
    const double p = r / n;
    const double tol = 5.0 * std::sqrt(p * (1 - p) / trials);
    for (int c : per_position) {
        EXPECT_NEAR(c / static_cast<double>(trials), p, tol);
    }
}

TEST(BitFlipSampler, SameSeedSameOutcome)
{
    RandomStream a(8);
    RandomStream b(8);
    const BitString x(300);
    for (int i = 0; i < 100; ++i) {
        ASSERT_EQ(standard_bit_mutation(x, 4.0, a), standard_bit_mutation(x, 4.0, b));
    }
}

TEST(AliasTable, MatchesWeights)
{
    const std::vector<double> weights{1.0, 2.0, 3.0, 4.0, 0.0};
    const AliasTable table(weights);
    RandomStream rng(9);
    std::vector<double> counts(weights.size(), 0.0);
    const int trials = 1000000;
    for (int i = 0; i < trials; ++i) {
        counts[table(rng)] += 1.0;
    }
    EXPECT_EQ(counts[4], 0.0);
    for (std::size_t k = 0; k < 4; ++k) {
        const double p = weights[k] / 10.0;
        EXPECT_NEAR(counts[k] / trials, p, 5.0 * std::sqrt(p * (1 - p) / trials));
    }
}

TEST(PowerLaw, Singleton)
{
    RandomStream rng(10);
    const PowerLawDistribution law(3.0, 1);
    for (int i = 0; i < 100; ++i) {
        ASSERT_EQ(law(rng), 1U);
    }
    EXPECT_EQ(power_law_strength(1.5, 1, rng), 1U);
}

TEST(PowerLaw, TwoPointProbabilities)
{
    const PowerLawDistribution law(2.0, 2);
    EXPECT_NEAR(law.probability(1), 0.8, 1e-12);
    EXPECT_NEAR(law.probability(2), 0.2, 1e-12);
    EXPECT_EQ(law.probability(3), 0.0);
    RandomStream rng(11);
    int ones = 0;
    for (int i = 0; i < 100000; ++i) {
        ones += law(rng) == 1 ? 1 : 0;
    }
    EXPECT_NEAR(ones / 100000.0, 0.8, 0.005);
}

TEST(PowerLaw, EmpiricalMatchesNormalization)
{
    double norm = 0.0;
    for (int k = 1; k <= 10; ++k) {
        norm += std::pow(k, -1.5);
    }
    const PowerLawDistribution law(1.5, 10);
    EXPECT_NEAR(law.probability(1), 1.0 / norm, 1e-12);

    RandomStream rng(12);
    std::vector<double> counts(11, 0.0);
    const int draws = 1000000;
    for (int i = 0; i < draws; ++i) {
        const auto k = law(rng);
        ASSERT_GE(k, 1U);
        ASSERT_LE(k, 10U);
        counts[k] += 1.0;
    }
    EXPECT_NEAR(counts[1] / draws, 1.0 / norm, 0.005);

    // Kolmogorov-Smirnov distance against the analytic CDF.
    double cdf = 0.0;
    double empirical = 0.0;
    double ks = 0.0;
    for (int k = 1; k <= 10; ++k) {
        cdf += std::pow(k, -1.5) / norm;
        empirical += counts[k] / draws;
        ks = std::max(ks, std::abs(cdf - empirical));
    }
    EXPECT_LT(ks, 1.63 / std::sqrt(draws));
}

TEST(PowerLaw, RejectsBadParameters)
{
    EXPECT_THROW(PowerLawDistribution(1.0, 5), std::invalid_argument);
    EXPECT_THROW(PowerLawDistribution(0.5, 5), std::invalid_argument);
    EXPECT_THROW(PowerLawDistribution(2.0, 0), std::invalid_argument);
}

} // namespace
} // namespace sdea
