#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "sdea/bitstring.hpp"

namespace sdea {

/// Fitness values are exact integers; every benchmark here has an integral image.
using Fitness = std::int64_t;

/// Pseudo-boolean fitness function f: {0,1}^n -> Z to be maximized.
/// Implementations are immutable after construction and safe to share across threads.
class Problem {
public:
    explicit Problem(std::size_t n);
    virtual ~Problem() = default;

    Problem(const Problem&) = delete;
    Problem& operator=(const Problem&) = delete;

    std::size_t dimension() const noexcept { return n_; }

    virtual std::string id() const = 0;
    /// Parameter string such as "m=4"; empty when the problem has none.
    virtual std::string params() const { return {}; }

    virtual Fitness evaluate(const BitString& x) const = 0;

    /// Fitness of `parent` with the bits at `flips` inverted. `parent_fitness` must equal
    /// evaluate(parent) and `flips` must be strictly increasing. The default copies the parent;
    /// problems on the hot path compute the value from the flips directly.
    virtual Fitness evaluate_flipped(const BitString& parent, Fitness parent_fitness,
                                     std::span<const std::uint32_t> flips) const;

    /// Upper bound on |Im(f)|.
    virtual std::uint64_t image_size_hint() const = 0;

    /// max f over {0,1}^n.
    virtual Fitness optimum_fitness() const = 0;

    bool is_global_optimum(const BitString& x) const { return evaluate(x) == optimum_fitness(); }

    /// Fitness value held exactly by the problem's trap states, if it has any.
    virtual std::optional<Fitness> trap_fitness() const { return std::nullopt; }

    virtual bool is_trap_state(const BitString& x) const;

private:
    std::size_t n_;
};

} // namespace sdea
