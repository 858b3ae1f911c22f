#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdea/random.hpp"

namespace sdea {

/// Fixed-length binary genotype. Bit i lives in word i / 64 at position i % 64;
/// bits past the length in the last word are kept zero.
class BitString {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitString() = default;
    explicit BitString(std::size_t length, bool value = false);

    /// Parses a string of '0'/'1' characters; character i becomes bit i.
    static BitString from_string(std::string_view text);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool test(std::size_t i) const noexcept { return (words_[i / word_bits] >> (i % word_bits)) & 1U; }
    void set(std::size_t i, bool value = true) noexcept
    {
        const Word mask = Word{1} << (i % word_bits);
        if (value) {
            words_[i / word_bits] |= mask;
        } else {
            words_[i / word_bits] &= ~mask;
        }
    }
    void flip(std::size_t i) noexcept { words_[i / word_bits] ^= Word{1} << (i % word_bits); }
    void flip(std::span<const std::uint32_t> positions) noexcept
    {
        for (auto p : positions) {
            flip(p);
        }
    }

    std::size_t popcount() const noexcept;

    /// Number of ones in [first, last).
    std::size_t popcount(std::size_t first, std::size_t last) const noexcept;

    /// Length of the all-ones run starting at `first`, not looking past `last`.
    std::size_t leading_ones(std::size_t first, std::size_t last) const noexcept;
    std::size_t leading_ones() const noexcept { return leading_ones(0, size_); }

    /// True iff every bit in [first, last) is zero.
    bool all_zero(std::size_t first, std::size_t last) const noexcept { return popcount(first, last) == 0; }

    std::span<const Word> words() const noexcept { return words_; }

    std::string to_string() const;

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<Word> words_;
    std::size_t size_ = 0;
};

/// Uniform sample from {0,1}^n. Throws std::invalid_argument for n = 0.
BitString random_bitstring(std::size_t n, RandomStream& rng);

/// Number of differing positions. Throws std::invalid_argument on a length mismatch.
std::size_t hamming_distance(const BitString& x, const BitString& y);

} // namespace sdea
