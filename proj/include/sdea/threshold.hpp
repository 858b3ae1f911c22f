#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

namespace sdea {

/// Parameters of the stagnation threshold 2 (en/r)^r ln(nR) / lambda.
struct ThresholdSpec {
    std::size_t n = 2;
    double image_size = 1.0; // R
    std::uint32_t lambda = 1;
};

/// Thresholds whose value exceeds this are never reached by a 64-bit counter.
inline constexpr double threshold_cap = 4611686018427387904.0; // 2^62

/// Counter limit meaning "never times out".
inline constexpr std::uint64_t unlimited_counter = std::numeric_limits<std::uint64_t>::max();

/// ln of the threshold: ln 2 + r (1 + ln(n/r)) + ln ln(nR) - ln(lambda).
/// Returns +infinity once the threshold exceeds 2^62.
/// Throws std::invalid_argument unless r >= 1, n >= 2, R >= 1 and lambda >= 1.
double log_threshold(double strength, const ThresholdSpec& spec);

/// Largest counter value that does not yet exceed the threshold, i.e. the counter times out
/// as soon as u > counter_limit(...). Returns unlimited_counter for an infinite threshold.
std::uint64_t counter_limit(double strength, const ThresholdSpec& spec);

} // namespace sdea
