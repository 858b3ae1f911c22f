#include "sdea/mutation.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sdea {

namespace {

std::uint64_t to_threshold(double probability)
{
    if (probability >= 1.0) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    if (probability <= 0.0) {
        return 0;
    }
    return static_cast<std::uint64_t>(std::ldexp(probability, 64));
}

} // namespace

AliasTable::AliasTable(std::span<const double> weights)
{
    const std::size_t k = weights.size();
    if (k == 0) {
        throw std::invalid_argument("AliasTable: empty weight vector");
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw std::invalid_argument("AliasTable: weights must have a positive finite sum");
    }

    std::vector<double> scaled(k);
    std::vector<std::uint32_t> small;
    std::vector<std::uint32_t> large;
    for (std::size_t i = 0; i < k; ++i) {
        if (weights[i] < 0.0) {
            throw std::invalid_argument("AliasTable: negative weight");
        }
        scaled[i] = weights[i] / total * static_cast<double>(k);
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }

    threshold_.assign(k, std::numeric_limits<std::uint64_t>::max());
    alias_.resize(k);
    std::iota(alias_.begin(), alias_.end(), std::uint32_t{0});

    while (!small.empty() && !large.empty()) {
        const std::uint32_t s = small.back();
        small.pop_back();
        const std::uint32_t l = large.back();
        threshold_[s] = to_threshold(scaled[s]);
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    // Leftovers are 1 up to rounding; they keep themselves with certainty.
    for (auto i : small) {
        alias_[i] = i;
    }
    for (auto i : large) {
        alias_[i] = i;
    }
}

BitFlipSampler::BitFlipSampler(std::size_t n, double strength)
    : n_(n)
    , strength_(strength)
{
    if (n == 0) {
        throw std::invalid_argument("standard bit mutation: dimension must be at least 1");
    }
    if (!(strength > 0.0) || strength > static_cast<double>(n)) {
        throw std::invalid_argument("standard bit mutation: strength must satisfy 0 < r <= n (r = " +
                                    std::to_string(strength) + ", n = " + std::to_string(n) + ")");
    }
    const double p = strength / static_cast<double>(n);
    // Outcome g < n: g non-flips then a flip. Outcome n: no flip in the remaining window.
    std::vector<double> weights(n + 1, 0.0);
    if (p >= 1.0) {
        weights[0] = 1.0;
    } else {
        const double log_keep = std::log1p(-p);
        for (std::size_t g = 0; g < n; ++g) {
            weights[g] = p * std::exp(static_cast<double>(g) * log_keep);
        }
        weights[n] = std::exp(static_cast<double>(n) * log_keep);
    }
    skip_ = AliasTable(weights);
}

BitString standard_bit_mutation(const BitString& x, double strength, RandomStream& rng)
{
    const BitFlipSampler sampler(x.size(), strength);
    std::vector<std::uint32_t> flips;
    sampler.sample(rng, flips);
    BitString y = x;
    y.flip(flips);
    return y;
}

PowerLawDistribution::PowerLawDistribution(double beta, std::uint32_t upper)
    : beta_(beta)
    , upper_(upper)
{
    if (!(beta > 1.0)) {
        throw std::invalid_argument("power law: beta must exceed 1 (beta = " + std::to_string(beta) + ")");
    }
    if (upper < 1) {
        throw std::invalid_argument("power law: upper bound must be at least 1");
    }
    std::vector<double> weights(upper);
    for (std::uint32_t k = 1; k <= upper; ++k) {
        weights[k - 1] = std::pow(static_cast<double>(k), -beta);
        normalizer_ += weights[k - 1];
    }
    table_ = AliasTable(weights);
}

double PowerLawDistribution::probability(std::uint32_t k) const noexcept
{
    if (k < 1 || k > upper_) {
        return 0.0;
    }
    return std::pow(static_cast<double>(k), -beta_) / normalizer_;
}

std::uint32_t power_law_strength(double beta, std::uint32_t upper, RandomStream& rng)
{
    return PowerLawDistribution(beta, upper)(rng);
}

} // namespace sdea
