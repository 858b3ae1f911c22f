#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sdea/bitstring.hpp"
#include "sdea/random.hpp"

namespace sdea {

/// Walker/Vose alias table over {0, ..., k-1}. One 64-bit draw per sample:
/// the high half of draw * k picks the column, the low half is the acceptance coin.
class AliasTable {
public:
    AliasTable() = default;
    explicit AliasTable(std::span<const double> weights);

    std::size_t size() const noexcept { return threshold_.size(); }

    std::uint32_t operator()(RandomStream& rng) const noexcept
    {
        const unsigned __int128 m = static_cast<unsigned __int128>(rng()) * threshold_.size();
        const auto column = static_cast<std::uint32_t>(m >> 64);
        const auto coin = static_cast<std::uint64_t>(m);
        return coin < threshold_[column] ? column : alias_[column];
    }

private:
    std::vector<std::uint64_t> threshold_;
    std::vector<std::uint32_t> alias_;
};

/// Standard bit mutation at strength r on strings of length n: each position flips
/// independently with probability r/n. Flip positions are produced in increasing
/// order by geometric skipping; the skip length is drawn from a precomputed alias
/// table of the geometric law truncated at n, which is exactly the law of the gap
/// between consecutive Bernoulli(r/n) successes.
class BitFlipSampler {
public:
    /// Throws std::invalid_argument unless n >= 1 and 0 < strength <= n.
    BitFlipSampler(std::size_t n, double strength);

    std::size_t dimension() const noexcept { return n_; }
    double strength() const noexcept { return strength_; }
    double rate() const noexcept { return strength_ / static_cast<double>(n_); }

    /// Replaces `flips` with the sorted positions to flip.
    void sample(RandomStream& rng, std::vector<std::uint32_t>& flips) const
    {
        flips.clear();
        std::size_t pos = skip_(rng);
        while (pos < n_) {
            flips.push_back(static_cast<std::uint32_t>(pos));
            pos += 1 + skip_(rng);
        }
    }

private:
    std::size_t n_;
    double strength_;
    AliasTable skip_;
};

/// Returns a mutated copy of x; x is not modified.
/// Throws std::invalid_argument if strength <= 0 or strength > |x|.
BitString standard_bit_mutation(const BitString& x, double strength, RandomStream& rng);

/// Power law on {1, ..., upper}: Pr[k] proportional to k^(-beta).
class PowerLawDistribution {
public:
    /// Throws std::invalid_argument unless beta > 1 and upper >= 1.
    PowerLawDistribution(double beta, std::uint32_t upper);

    std::uint32_t operator()(RandomStream& rng) const noexcept { return table_(rng) + 1; }

    double beta() const noexcept { return beta_; }
    std::uint32_t upper() const noexcept { return upper_; }
    double probability(std::uint32_t k) const noexcept;

private:
    double beta_;
    std::uint32_t upper_;
    double normalizer_ = 0.0;
    AliasTable table_;
};

/// One draw of the heavy-tailed strength. Builds the table on every call; engines
/// keep a PowerLawDistribution instead.
std::uint32_t power_law_strength(double beta, std::uint32_t upper, RandomStream& rng);

} // namespace sdea
