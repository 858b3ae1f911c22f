#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sdea/random.hpp"
#include "sdea/threshold.hpp"

namespace sdea::theory {

// All closed forms below are evaluated through their natural logarithms; the plain values
// overflow to +inf (or underflow to 0) where a double cannot hold them.

/// Both sides of  sum_{i=1}^{m} (en/i)^i  <  n/(n-m) (en/m)^m.
struct PartialSum {
    double log_lhs = 0.0;
    double log_rhs = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Throws std::invalid_argument unless 1 <= m < n.
PartialSum partial_sum_check(std::size_t n, std::size_t m);

/// Probability that a whole phase at strength r misses a planted improvement at Hamming
/// distance m: (1 - (1-r/n)^(n-m) (r/n)^m)^T with T = 2 (en/r)^r ln(nR).
struct PhaseFailure {
    double log_bound = 0.0;
    double bound = 0.0;
    double target = 0.0; // 1 / (nR)^2
};

/// Throws std::invalid_argument unless 1 <= m <= r < n/2 and R >= 1.
PhaseFailure phase_failure_bound(double strength, std::size_t m, std::size_t n, double image_size);

/// Monte Carlo estimate of the same probability: each phase runs counter_limit + 1 standard
/// bit mutations at strength r and fails if none of them flips exactly the m planted positions.
double phase_failure_monte_carlo(double strength, std::size_t m, std::size_t n, double image_size,
                                 std::size_t phases, RandomStream& rng);

/// Bracket for the expected time to leave a point of gap m:
/// (en/m)^m (1 - m^2/(n-m))  <  L  <=  2 (en/m)^m (1 + (5m/n) ln(nR)).
/// The lower end is clamped to 0 when m^2 >= n - m.
struct EscapeBracket {
    double log_lower = 0.0; // -inf when clamped
    double log_upper = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

/// Throws std::invalid_argument unless 1 <= m <= n/2 and R >= 1.
EscapeBracket escape_bracket(std::size_t n, std::size_t m, double image_size);

struct ThresholdRow {
    std::size_t strength = 0;
    double log_threshold = 0.0;
    std::uint64_t counter_limit = 0;
};

/// Thresholds for r = 1, ..., floor(n/2).
std::vector<ThresholdRow> threshold_table(const ThresholdSpec& spec);

/// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b) noexcept;

} // namespace sdea::theory
