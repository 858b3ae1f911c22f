#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "sdea/bitstring.hpp"
#include "sdea/problem.hpp"

namespace sdea {

// Plain fitness functions. These are the reference definitions the Problem classes
// must agree with.

Fitness one_max(const BitString& x);
Fitness leading_ones(const BitString& x);
/// Throws std::invalid_argument unless 1 <= m <= |x|.
Fitness jump(const BitString& x, std::size_t m);
Fitness trap(const BitString& x);

class OneMax final : public Problem {
public:
    explicit OneMax(std::size_t n);
    std::string id() const override { return "onemax"; }
    Fitness evaluate(const BitString& x) const override { return one_max(x); }
    Fitness evaluate_flipped(const BitString& parent, Fitness parent_fitness,
                             std::span<const std::uint32_t> flips) const override;
    std::uint64_t image_size_hint() const override { return dimension() + 2; }
    Fitness optimum_fitness() const override { return static_cast<Fitness>(dimension()); }
};

class LeadingOnes final : public Problem {
public:
    explicit LeadingOnes(std::size_t n);
    std::string id() const override { return "leadingones"; }
    Fitness evaluate(const BitString& x) const override { return leading_ones(x); }
    Fitness evaluate_flipped(const BitString& parent, Fitness parent_fitness,
                             std::span<const std::uint32_t> flips) const override;
    std::uint64_t image_size_hint() const override { return dimension() + 1; }
    Fitness optimum_fitness() const override { return static_cast<Fitness>(dimension()); }
};

class Jump final : public Problem {
public:
    Jump(std::size_t n, std::size_t gap);
    std::string id() const override { return "jump"; }
    std::string params() const override;
    std::size_t gap() const noexcept { return gap_; }
    Fitness evaluate(const BitString& x) const override { return jump(x, gap_); }
    Fitness evaluate_flipped(const BitString& parent, Fitness parent_fitness,
                             std::span<const std::uint32_t> flips) const override;
    std::uint64_t image_size_hint() const override { return dimension() + 2; }
    Fitness optimum_fitness() const override { return static_cast<Fitness>(dimension() + gap_); }

private:
    Fitness from_ones(std::size_t ones) const noexcept;
    std::size_t gap_;
};

class Trap final : public Problem {
public:
    explicit Trap(std::size_t n);
    std::string id() const override { return "trap"; }
    Fitness evaluate(const BitString& x) const override { return trap(x); }
    Fitness evaluate_flipped(const BitString& parent, Fitness parent_fitness,
                             std::span<const std::uint32_t> flips) const override;
    std::uint64_t image_size_hint() const override { return dimension() + 2; }
    Fitness optimum_fitness() const override { return static_cast<Fitness>(dimension() + 1); }
};

/// Geometry of NeedHighMut_xi on n bits. The string is a prefix of n - s bits followed by
/// a suffix of B blocks of l bits each (s = B * l).
struct NeedHighMutLayout {
    std::size_t n = 0;
    double xi = 1.0;
    std::size_t block_count = 0;      // B = ceil((2/3) xi sqrt(n))
    std::size_t block_size = 0;       // l = ceil(n^(1/4))
    std::size_t suffix_len = 0;       // s = B * l
    std::size_t prefix_len = 0;       // n - s
    std::size_t prefix_threshold = 0; // P = floor(9 (n - s) / 10)

    /// Throws std::invalid_argument if xi < 1 or the suffix does not fit (s >= n).
    static NeedHighMutLayout make(std::size_t n, double xi);

    std::size_t block_begin(std::size_t b) const noexcept { return prefix_len + b * block_size; }
};

struct SegmentValue {
    bool valid = false;
    std::size_t value = 0; // meaningful only when valid
};

/// Prefix valid iff it reads 1^i 0^(n-s-i); value is i.
SegmentValue nhm_prefix_value(const BitString& x, const NeedHighMutLayout& layout);
/// Suffix valid iff every block has 0 or 2 ones and active blocks (2 ones) form a leading run;
/// value is the number of leading active blocks.
SegmentValue nhm_suffix_value(const BitString& x, const NeedHighMutLayout& layout);
Fitness need_high_mut(const BitString& x, const NeedHighMutLayout& layout);

class NeedHighMut final : public Problem {
public:
    explicit NeedHighMut(NeedHighMutLayout layout);
    NeedHighMut(std::size_t n, double xi) : NeedHighMut(NeedHighMutLayout::make(n, xi)) {}

    std::string id() const override { return "needhighmut"; }
    std::string params() const override;
    const NeedHighMutLayout& layout() const noexcept { return layout_; }

    Fitness evaluate(const BitString& x) const override { return need_high_mut(x, layout_); }
    Fitness evaluate_flipped(const BitString& parent, Fitness parent_fitness,
                             std::span<const std::uint32_t> flips) const override;
    std::uint64_t image_size_hint() const override;
    Fitness optimum_fitness() const override;
    /// Valid, full prefix, all blocks active: the second-best local optimum.
    std::optional<Fitness> trap_fitness() const override;

private:
    Fitness valid_value(std::size_t pre, std::size_t suff) const noexcept;

    NeedHighMutLayout layout_;
    Fitness n_squared_;
};

/// min { H(x, y) : f(y) > f(x) } by enumerating all of {0,1}^n.
/// Returns std::nullopt when no strictly fitter point exists.
/// Throws std::invalid_argument for n > 24.
std::optional<std::size_t> gap_bruteforce(const BitString& x, const Problem& problem);

/// Problem selection by string id.
struct ProblemSpec {
    std::string id = "onemax";
    std::optional<std::size_t> gap; // jump
    std::optional<double> xi;       // needhighmut
};

/// Throws std::invalid_argument for an unknown id or a parameter the problem does not take.
void validate(const ProblemSpec& spec);
std::unique_ptr<Problem> make_problem(const ProblemSpec& spec, std::size_t n);

} // namespace sdea
