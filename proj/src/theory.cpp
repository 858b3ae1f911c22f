#include "sdea/theory.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sdea/mutation.hpp"

namespace sdea::theory {

namespace {

// ln((en/k)^k)
double log_power_term(double n, double k) { return k * (1.0 + std::log(n / k)); }

} // namespace

double log_add(double a, double b) noexcept
{
    if (a < b) {
        std::swap(a, b);
    }
    if (std::isinf(b) && b < 0) {
        return a;
    }
    return a + std::log1p(std::exp(b - a));
}

PartialSum partial_sum_check(std::size_t n, std::size_t m)
{
    if (m < 1 || m >= n) {
        throw std::invalid_argument("partial_sum_check: need 1 <= m < n (n = " + std::to_string(n) +
                                    ", m = " + std::to_string(m) + ")");
    }
    const double nd = static_cast<double>(n);
    PartialSum result;
    result.log_lhs = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= m; ++i) {
        result.log_lhs = log_add(result.log_lhs, log_power_term(nd, static_cast<double>(i)));
    }
    result.log_rhs = std::log(nd / static_cast<double>(n - m)) + log_power_term(nd, static_cast<double>(m));
    result.lhs = std::exp(result.log_lhs);
    result.rhs = std::exp(result.log_rhs);
    result.holds = result.log_lhs < result.log_rhs;
    return result;
}

PhaseFailure phase_failure_bound(double strength, std::size_t m, std::size_t n, double image_size)
{
    const double nd = static_cast<double>(n);
    if (m < 1 || strength < static_cast<double>(m)) {
        throw std::invalid_argument("phase_failure_bound: the bound needs r >= m >= 1");
    }
    if (!(strength < nd / 2.0)) {
        throw std::invalid_argument("phase_failure_bound: the bound needs r < n/2");
    }
    if (!(image_size >= 1.0)) {
        throw std::invalid_argument("phase_failure_bound: R must be at least 1");
    }
    const double p = strength / nd;
    const double log_hit = static_cast<double>(n - m) * std::log1p(-p) + static_cast<double>(m) * std::log(p);
    const double log_steps = std::log(2.0) + log_power_term(nd, strength) + std::log(std::log(nd * image_size));
    // T * ln(1 - q) = -exp(ln T + ln(-ln(1 - q)))
    const double log_miss_per_step = std::log1p(-std::exp(log_hit));
    PhaseFailure result;
    result.log_bound = -std::exp(log_steps + std::log(-log_miss_per_step));
    result.bound = std::exp(result.log_bound);
    result.target = 1.0 / ((nd * image_size) * (nd * image_size));
    return result;
}

double phase_failure_monte_carlo(double strength, std::size_t m, std::size_t n, double image_size,
                                 std::size_t phases, RandomStream& rng)
{
    if (m < 1 || m > n || phases == 0) {
        throw std::invalid_argument("phase_failure_monte_carlo: need 1 <= m <= n and phases > 0");
    }
    const BitFlipSampler sampler(n, strength);
    const std::uint64_t limit = counter_limit(strength, ThresholdSpec{.n = n, .image_size = image_size, .lambda = 1});
    if (limit == unlimited_counter) {
        throw std::invalid_argument("phase_failure_monte_carlo: the phase never times out at this strength");
    }
    // The planted improvement is reached by flipping exactly positions 0, ..., m-1.
    const auto planted = [m](const std::vector<std::uint32_t>& flips) {
        if (flips.size() != m) {
            return false;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (flips[i] != i) {
                return false;
            }
        }
        return true;
    };

    std::vector<std::uint32_t> flips;
    std::size_t failures = 0;
    for (std::size_t phase = 0; phase < phases; ++phase) {
        bool hit = false;
        for (std::uint64_t step = 0; step <= limit && !hit; ++step) {
            sampler.sample(rng, flips);
            hit = planted(flips);
        }
        failures += hit ? 0 : 1;
    }
    return static_cast<double>(failures) / static_cast<double>(phases);
}

EscapeBracket escape_bracket(std::size_t n, std::size_t m, double image_size)
{
    if (m < 1 || 2 * m > n) {
        throw std::invalid_argument("escape_bracket: need 1 <= m <= n/2");
    }
    if (!(image_size >= 1.0)) {
        throw std::invalid_argument("escape_bracket: R must be at least 1");
    }
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    const double log_base = log_power_term(nd, md);
    const double factor = 1.0 - md * md / (nd - md);

    EscapeBracket result;
    result.log_lower = factor > 0.0 ? log_base + std::log(factor) : -std::numeric_limits<double>::infinity();
    result.log_upper = std::log(2.0) + log_base + std::log1p(5.0 * md / nd * std::log(nd * image_size));
    result.lower = std::exp(result.log_lower);
    result.upper = std::exp(result.log_upper);
    return result;
}

std::vector<ThresholdRow> threshold_table(const ThresholdSpec& spec)
{
    std::vector<ThresholdRow> rows;
    for (std::size_t r = 1; 2 * r <= spec.n; ++r) {
        const auto s = static_cast<double>(r);
        rows.push_back({r, log_threshold(s, spec), counter_limit(s, spec)});
    }
    return rows;
}

} // namespace sdea::theory
