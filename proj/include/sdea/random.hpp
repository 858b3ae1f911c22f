#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace sdea {

/// SplitMix64 finalizer. Used for seeding and for deriving per-run seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for run `run_index` of cell `cell_id` under `base_seed`.
constexpr std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t cell_id, std::uint64_t run_index) noexcept
{
    return splitmix64(splitmix64(splitmix64(base_seed) ^ cell_id) ^ run_index);
}

/// FNV-1a over a string; stable across platforms and builds.
constexpr std::uint64_t stable_hash(std::string_view text) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// xoshiro256++ (Blackman & Vigna), state expanded from a 64-bit seed with SplitMix64.
/// Models std::uniform_random_bit_generator. One stream is owned by one run.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed = 0) noexcept { reseed(seed); }

    void reseed(std::uint64_t seed) noexcept
    {
        seed_ = seed;
        std::uint64_t s = seed;
        for (auto& word : state_) {
            word = splitmix64(s);
            s += 0x9e3779b97f4a7c15ULL;
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), bound > 0 (Lemire's nearly-divisionless method).
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool coin() noexcept { return ((*this)() >> 63) != 0; }

    std::uint64_t seed() const noexcept { return seed_; }

    friend bool operator==(const RandomStream&, const RandomStream&) = default;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4]{};
    std::uint64_t seed_ = 0;
};

} // namespace sdea
