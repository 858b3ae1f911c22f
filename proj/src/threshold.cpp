#include "sdea/threshold.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sdea {

double log_threshold(double strength, const ThresholdSpec& spec)
{
    if (!(strength >= 1.0)) {
        throw std::invalid_argument("threshold: strength must be at least 1");
    }
    if (spec.n < 2) {
        throw std::invalid_argument("threshold: n must be at least 2");
    }
    if (!(spec.image_size >= 1.0)) {
        throw std::invalid_argument("threshold: R must be at least 1");
    }
    if (spec.lambda < 1) {
        throw std::invalid_argument("threshold: lambda must be at least 1");
    }
    const double n = static_cast<double>(spec.n);
    const double value = std::log(2.0) + strength * (1.0 + std::log(n / strength)) +
                         std::log(std::log(n * spec.image_size)) - std::log(static_cast<double>(spec.lambda));
    if (value > std::log(threshold_cap)) {
        return std::numeric_limits<double>::infinity();
    }
    return value;
}

std::uint64_t counter_limit(double strength, const ThresholdSpec& spec)
{
    const double log_value = log_threshold(strength, spec);
    if (std::isinf(log_value)) {
        return unlimited_counter;
    }
    return static_cast<std::uint64_t>(std::floor(std::exp(log_value)));
}

} // namespace sdea
