#include "sdea/problems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "sdea/format.hpp"

namespace sdea {

Problem::Problem(std::size_t n)
    : n_(n)
{
    if (n == 0) {
        throw std::invalid_argument("problem dimension must be at least 1");
    }
}

Fitness Problem::evaluate_flipped(const BitString& parent, Fitness /*parent_fitness*/,
                                  std::span<const std::uint32_t> flips) const
{
    BitString y = parent;
    y.flip(flips);
    return evaluate(y);
}

bool Problem::is_trap_state(const BitString& x) const
{
    const auto trap = trap_fitness();
    return trap.has_value() && evaluate(x) == *trap;
}

namespace {

// Change in the number of ones when `flips` are applied to `x`.
std::int64_t ones_delta(const BitString& x, std::span<const std::uint32_t> flips)
{
    std::int64_t delta = 0;
    for (auto p : flips) {
        delta += x.test(p) ? -1 : 1;
    }
    return delta;
}

} // namespace

// --- plain definitions -----------------------------------------------------------------

Fitness one_max(const BitString& x) { return static_cast<Fitness>(x.popcount()); }

Fitness leading_ones(const BitString& x) { return static_cast<Fitness>(x.leading_ones()); }

Fitness jump(const BitString& x, std::size_t m)
{
    const std::size_t n = x.size();
    if (m < 1 || m > n) {
        throw std::invalid_argument("jump: gap size m must satisfy 1 <= m <= n (m = " + std::to_string(m) +
                                    ", n = " + std::to_string(n) + ")");
    }
    const std::size_t ones = x.popcount();
    if (ones <= n - m || ones == n) {
        return static_cast<Fitness>(m + ones);
    }
    return static_cast<Fitness>(n - ones);
}

Fitness trap(const BitString& x)
{
    const std::size_t ones = x.popcount();
    return ones == 0 ? static_cast<Fitness>(x.size() + 1) : static_cast<Fitness>(ones);
}

// --- OneMax / LeadingOnes / Jump / Trap ----------------------------------------------------

OneMax::OneMax(std::size_t n)
    : Problem(n)
{
}

Fitness OneMax::evaluate_flipped(const BitString& parent, Fitness parent_fitness,
                                 std::span<const std::uint32_t> flips) const
{
    return parent_fitness + ones_delta(parent, flips);
}

LeadingOnes::LeadingOnes(std::size_t n)
    : Problem(n)
{
}

Fitness LeadingOnes::evaluate_flipped(const BitString& parent, Fitness parent_fitness,
                                      std::span<const std::uint32_t> flips) const
{
    if (flips.empty()) {
        return parent_fitness;
    }
    const auto lo = static_cast<std::size_t>(parent_fitness);
    if (flips.front() < lo) {
        return static_cast<Fitness>(flips.front());
    }
    if (flips.front() > lo) {
        return parent_fitness;
    }
    // The first zero was flipped: the new run length depends on the bits behind it.
    return Problem::evaluate_flipped(parent, parent_fitness, flips);
}

Jump::Jump(std::size_t n, std::size_t gap)
    : Problem(n)
    , gap_(gap)
{
    if (gap < 1 || gap > n) {
        throw std::invalid_argument("jump: gap size m must satisfy 1 <= m <= n (m = " + std::to_string(gap) +
                                    ", n = " + std::to_string(n) + ")");
    }
}

std::string Jump::params() const { return "m=" + std::to_string(gap_); }

Fitness Jump::from_ones(std::size_t ones) const noexcept
{
    const std::size_t n = dimension();
    if (ones <= n - gap_ || ones == n) {
        return static_cast<Fitness>(gap_ + ones);
    }
    return static_cast<Fitness>(n - ones);
}

Fitness Jump::evaluate_flipped(const BitString& parent, Fitness parent_fitness,
                               std::span<const std::uint32_t> flips) const
{
    // The three fitness bands [1, m-1], [m, n] and {n+m} are disjoint, so the parent's
    // number of ones can be read back from its fitness.
    const auto n = static_cast<Fitness>(dimension());
    const auto m = static_cast<Fitness>(gap_);
    Fitness ones = 0;
    if (parent_fitness == n + m) {
        ones = n;
    } else if (parent_fitness >= m) {
        ones = parent_fitness - m;
    } else {
        ones = n - parent_fitness;
    }
    return from_ones(static_cast<std::size_t>(ones + ones_delta(parent, flips)));
}

Trap::Trap(std::size_t n)
    : Problem(n)
{
}

Fitness Trap::evaluate_flipped(const BitString& parent, Fitness parent_fitness,
                               std::span<const std::uint32_t> flips) const
{
    const auto n = static_cast<Fitness>(dimension());
    const Fitness ones = parent_fitness == n + 1 ? 0 : parent_fitness;
    const Fitness after = ones + ones_delta(parent, flips);
    return after == 0 ? n + 1 : after;
}

// --- NeedHighMut -------------------------------------------------------------------------

NeedHighMutLayout NeedHighMutLayout::make(std::size_t n, double xi)
{
    if (!(xi >= 1.0) || !std::isfinite(xi)) {
        throw std::invalid_argument("needhighmut: xi must be at least 1 (xi = " + format_number(xi) + ")");
    }
    NeedHighMutLayout layout;
    layout.n = n;
    layout.xi = xi;

    // B = ceil(2 xi sqrt(n) / 3). For integral xi this is the least B with 9 B^2 >= 4 xi^2 n,
    // which avoids rounding trouble when 2 xi sqrt(n) / 3 is an integer.
    if (xi == std::floor(xi) && xi < 1e6) {
        const auto x = static_cast<unsigned __int128>(xi);
        const unsigned __int128 rhs = 4 * x * x * n;
        std::size_t b = static_cast<std::size_t>(std::floor(2.0 * xi * std::sqrt(static_cast<double>(n)) / 3.0));
        b = b > 2 ? b - 2 : 0;
        while (static_cast<unsigned __int128>(9) * b * b < rhs) {
            ++b;
        }
        layout.block_count = b;
    } else {
        layout.block_count = static_cast<std::size_t>(std::ceil(2.0 * xi * std::sqrt(static_cast<double>(n)) / 3.0 - 1e-12));
    }

    // l = ceil(n^(1/4)): least l with l^4 >= n.
    std::size_t l = 1;
    while (static_cast<unsigned __int128>(l) * l * l * l < n) {
        ++l;
    }
    layout.block_size = l;

    layout.suffix_len = layout.block_count * layout.block_size;
    if (layout.suffix_len >= n) {
        throw std::invalid_argument("needhighmut: suffix of " + std::to_string(layout.suffix_len) +
                                    " bits does not fit into n = " + std::to_string(n));
    }
    layout.prefix_len = n - layout.suffix_len;
    layout.prefix_threshold = 9 * layout.prefix_len / 10;
    return layout;
}

SegmentValue nhm_prefix_value(const BitString& x, const NeedHighMutLayout& layout)
{
    const std::size_t pre = x.leading_ones(0, layout.prefix_len);
    return {x.all_zero(pre, layout.prefix_len), pre};
}

SegmentValue nhm_suffix_value(const BitString& x, const NeedHighMutLayout& layout)
{
    std::size_t active = 0;
    bool seen_inactive = false;
    for (std::size_t b = 0; b < layout.block_count; ++b) {
        const std::size_t begin = layout.block_begin(b);
        const std::size_t ones = x.popcount(begin, begin + layout.block_size);
        if (ones == 2) {
            if (seen_inactive) {
                return {false, 0};
            }
            ++active;
        } else if (ones == 0) {
            seen_inactive = true;
        } else {
            return {false, 0};
        }
    }
    return {true, active};
}

Fitness need_high_mut(const BitString& x, const NeedHighMutLayout& layout)
{
    const auto prefix = nhm_prefix_value(x, layout);
    const auto suffix = prefix.valid ? nhm_suffix_value(x, layout) : SegmentValue{};
    if (!prefix.valid || !suffix.valid) {
        return -static_cast<Fitness>(x.popcount());
    }
    const auto n = static_cast<Fitness>(layout.n);
    const auto pre = static_cast<Fitness>(prefix.value);
    const auto suff = static_cast<Fitness>(suffix.value);
    if (prefix.value <= layout.prefix_threshold) {
        return n * n * suff + pre;
    }
    return n * n * static_cast<Fitness>(layout.block_count) + pre + suff - n - 1;
}

NeedHighMut::NeedHighMut(NeedHighMutLayout layout)
    : Problem(layout.n)
    , layout_(layout)
    , n_squared_(static_cast<Fitness>(layout.n) * static_cast<Fitness>(layout.n))
{
}

std::string NeedHighMut::params() const { return "xi=" + format_number(layout_.xi); }

std::uint64_t NeedHighMut::image_size_hint() const
{
    return static_cast<std::uint64_t>(n_squared_) * layout_.block_count + layout_.n;
}

Fitness NeedHighMut::optimum_fitness() const
{
    return n_squared_ * static_cast<Fitness>(layout_.block_count) + static_cast<Fitness>(layout_.prefix_threshold);
}

std::optional<Fitness> NeedHighMut::trap_fitness() const
{
    return valid_value(layout_.prefix_len, layout_.block_count);
}

Fitness NeedHighMut::valid_value(std::size_t pre, std::size_t suff) const noexcept
{
    if (pre <= layout_.prefix_threshold) {
        return n_squared_ * static_cast<Fitness>(suff) + static_cast<Fitness>(pre);
    }
    const auto n = static_cast<Fitness>(layout_.n);
    return n_squared_ * static_cast<Fitness>(layout_.block_count) + static_cast<Fitness>(pre) +
           static_cast<Fitness>(suff) - n - 1;
}

Fitness NeedHighMut::evaluate_flipped(const BitString& parent, Fitness parent_fitness,
                                      std::span<const std::uint32_t> flips) const
{
    if (flips.empty()) {
        return parent_fitness;
    }
    if (parent_fitness < 0) {
        // Invalid parent: nothing cached to build on.
        return Problem::evaluate_flipped(parent, parent_fitness, flips);
    }

    // A valid parent is 1^pre 0^* followed by suff active blocks and then inactive ones.
    const std::size_t L = layout_.prefix_len;
    const std::size_t pre = parent.leading_ones(0, L);
    const Fitness n = static_cast<Fitness>(layout_.n);
    const auto suff = static_cast<std::size_t>(
        pre <= layout_.prefix_threshold
            ? (parent_fitness - static_cast<Fitness>(pre)) / n_squared_
            : parent_fitness - n_squared_ * static_cast<Fitness>(layout_.block_count) - static_cast<Fitness>(pre) + n + 1);

    const Fitness parent_ones = static_cast<Fitness>(pre + 2 * suff);
    const Fitness delta = ones_delta(parent, flips);

    // Prefix: the flipped positions must be one contiguous run touching the boundary at `pre`.
    std::size_t k = 0;
    while (k < flips.size() && flips[k] < L) {
        ++k;
    }
    bool valid = true;
    std::size_t new_pre = pre;
    if (k > 0) {
        const std::size_t first = flips[0];
        const std::size_t last = flips[k - 1];
        if (last - first + 1 != k) {
            valid = false;
        } else if (first == pre) {
            new_pre = last + 1;
        } else if (last + 1 == pre) {
            new_pre = first;
        } else {
            valid = false;
        }
    }

    // Suffix: flips are sorted, so each touched block is one contiguous group of flips.
    std::size_t new_suff = suff;
    if (valid && k < flips.size()) {
        const auto for_each_block = [&](auto&& visit) {
            std::size_t i = k;
            while (i < flips.size()) {
                const std::size_t block = (flips[i] - L) / layout_.block_size;
                std::int64_t count = block < suff ? 2 : 0;
                while (i < flips.size() && (flips[i] - L) / layout_.block_size == block) {
                    count += parent.test(flips[i]) ? -1 : 1;
                    ++i;
                }
                if (!visit(block, count)) {
                    return false;
                }
            }
            return true;
        };

        std::size_t activated = 0;
        std::size_t deactivated = 0;
        valid = for_each_block([&](std::size_t block, std::int64_t count) {
            if (count != 0 && count != 2) {
                return false;
            }
            const bool was_active = block < suff;
            activated += (count == 2 && !was_active) ? 1 : 0;
            deactivated += (count == 0 && was_active) ? 1 : 0;
            return true;
        });
        if (valid) {
            new_suff = suff + activated - deactivated;
            const std::size_t lo = std::min(suff, new_suff);
            const std::size_t hi = std::max(suff, new_suff);
            std::size_t touched_in_gap = 0;
            valid = for_each_block([&](std::size_t block, std::int64_t count) {
                touched_in_gap += (block >= lo && block < hi) ? 1 : 0;
                return (count == 2) == (block < new_suff);
            });
            // Untouched blocks keep their old state, which is wrong inside [lo, hi).
            valid = valid && touched_in_gap == hi - lo;
        }
    }

    if (!valid) {
        return -(parent_ones + delta);
    }
    return valid_value(new_pre, new_suff);
}

// --- gap oracle ----------------------------------------------------------------------------

std::optional<std::size_t> gap_bruteforce(const BitString& x, const Problem& problem)
{
    const std::size_t n = x.size();
    if (n > 24) {
        throw std::invalid_argument("gap_bruteforce: n = " + std::to_string(n) + " exceeds the enumeration limit 24");
    }
    if (n != problem.dimension()) {
        throw std::invalid_argument("gap_bruteforce: string length does not match the problem dimension");
    }
    const Fitness fx = problem.evaluate(x);
    std::optional<std::size_t> best;

    // Gray-code walk over all XOR masks: each step flips one bit of y.
    BitString y = x;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        y.flip(static_cast<std::size_t>(std::countr_zero(k)));
        const auto distance = static_cast<std::size_t>(std::popcount(k ^ (k >> 1)));
        if ((!best || distance < *best) && problem.evaluate(y) > fx) {
            best = distance;
        }
    }
    return best;
}

// --- selection by id -----------------------------------------------------------------------

void validate(const ProblemSpec& spec)
{
    const bool is_jump = spec.id == "jump";
    const bool is_nhm = spec.id == "needhighmut";
    if (!is_jump && !is_nhm && spec.id != "onemax" && spec.id != "leadingones" && spec.id != "trap") {
        throw std::invalid_argument("unknown problem id '" + spec.id +
                                    "' (expected onemax, leadingones, jump, trap or needhighmut)");
    }
    if (spec.gap && !is_jump) {
        throw std::invalid_argument("parameter m only applies to problem 'jump'");
    }
    if (spec.xi && !is_nhm) {
        throw std::invalid_argument("parameter xi only applies to problem 'needhighmut'");
    }
    if (is_jump && !spec.gap) {
        throw std::invalid_argument("problem 'jump' requires the gap size m");
    }
}

std::unique_ptr<Problem> make_problem(const ProblemSpec& spec, std::size_t n)
{
    validate(spec);
    if (spec.id == "onemax") {
        return std::make_unique<OneMax>(n);
    }
    if (spec.id == "leadingones") {
        return std::make_unique<LeadingOnes>(n);
    }
    if (spec.id == "jump") {
        return std::make_unique<Jump>(n, *spec.gap);
    }
    if (spec.id == "trap") {
        return std::make_unique<Trap>(n);
    }
    return std::make_unique<NeedHighMut>(n, spec.xi.value_or(1.0));
}

} // namespace sdea
