#include "sdea/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace sdea {

namespace {

constexpr std::size_t words_for(std::size_t bits) { return (bits + BitString::word_bits - 1) / BitString::word_bits; }

// Mask selecting bits [lo, hi) of a single word, 0 <= lo <= hi <= 64.
constexpr BitString::Word range_mask(std::size_t lo, std::size_t hi)
{
    const BitString::Word upper = hi == 64 ? ~BitString::Word{0} : (BitString::Word{1} << hi) - 1;
    const BitString::Word lower = (BitString::Word{1} << lo) - 1;
    return upper & ~lower;
}

} // namespace

BitString::BitString(std::size_t length, bool value)
    : words_(words_for(length), value ? ~Word{0} : Word{0})
    , size_(length)
{
    if (value && size_ % word_bits != 0) {
        words_.back() &= range_mask(0, size_ % word_bits);
    }
}

BitString BitString::from_string(std::string_view text)
{
    BitString result(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            result.set(i);
        } else if (text[i] != '0') {
            throw std::invalid_argument("BitString::from_string: unexpected character '" + std::string(1, text[i]) + "'");
        }
    }
    return result;
}

std::size_t BitString::popcount() const noexcept
{
    std::size_t total = 0;
    for (Word w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

std::size_t BitString::popcount(std::size_t first, std::size_t last) const noexcept
{
    if (first >= last) {
        return 0;
    }
    const std::size_t wf = first / word_bits;
    const std::size_t wl = (last - 1) / word_bits;
    if (wf == wl) {
        return static_cast<std::size_t>(std::popcount(words_[wf] & range_mask(first % word_bits, (last - 1) % word_bits + 1)));
    }
    std::size_t total = static_cast<std::size_t>(std::popcount(words_[wf] & range_mask(first % word_bits, word_bits)));
    for (std::size_t w = wf + 1; w < wl; ++w) {
        total += static_cast<std::size_t>(std::popcount(words_[w]));
    }
    total += static_cast<std::size_t>(std::popcount(words_[wl] & range_mask(0, (last - 1) % word_bits + 1)));
    return total;
}

std::size_t BitString::leading_ones(std::size_t first, std::size_t last) const noexcept
{
    std::size_t i = first;
    while (i < last) {
        const std::size_t offset = i % word_bits;
        const Word w = words_[i / word_bits] >> offset;
        const auto run = static_cast<std::size_t>(std::countr_one(w));
        const std::size_t available = word_bits - offset;
        if (run < available) {
            i += run;
            break;
        }
        i += available;
    }
    return (i < last ? i : last) - first;
}

std::string BitString::to_string() const
{
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (test(i)) {
            s[i] = '1';
        }
    }
    return s;
}

BitString random_bitstring(std::size_t n, RandomStream& rng)
{
    if (n == 0) {
        throw std::invalid_argument("random_bitstring: dimension must be at least 1");
    }
    BitString x(n);
    // Fill word by word; draw order is part of the reproducibility contract.
    for (std::size_t i = 0; i < n; i += BitString::word_bits) {
        const BitString::Word w = rng();
        const std::size_t count = std::min(BitString::word_bits, n - i);
        for (std::size_t b = 0; b < count; ++b) {
            if ((w >> b) & 1U) {
                x.set(i + b);
            }
        }
    }
    return x;
}

std::size_t hamming_distance(const BitString& x, const BitString& y)
{
    if (x.size() != y.size()) {
        throw std::invalid_argument("hamming_distance: length mismatch (" + std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
    }
    std::size_t d = 0;
    const auto a = x.words();
    const auto b = y.words();
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += static_cast<std::size_t>(std::popcount(a[i] ^ b[i]));
    }
    return d;
}

} // namespace sdea
