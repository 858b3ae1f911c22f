#include "sdea/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sdea/engines.hpp"
#include "sdea/problems.hpp"
#include "sdea/theory.hpp"
#include "sdea/threshold.hpp"

namespace sdea {

namespace {

CheckResult lemma_sweep(std::size_t n_max)
{
    std::size_t cases = 0;
    for (std::size_t n = 2; n <= n_max; ++n) {
        for (std::size_t m = 1; m < n; ++m) {
            ++cases;
            if (!theory::partial_sum_check(n, m).holds) {
                return {"partial-sum inequality", false, "violated at n=" + std::to_string(n) + ", m=" + std::to_string(m)};
            }
        }
    }
    return {"partial-sum inequality", true, std::to_string(cases) + " (n, m) pairs with n <= " + std::to_string(n_max)};
}

CheckResult log_space_agreement(std::size_t n_max)
{
    // Direct evaluation stays finite for these sizes; compare to 10 significant digits.
    const std::size_t limit = std::min<std::size_t>(n_max, 60);
    double worst = 0.0;
    for (std::size_t n = 2; n <= limit; ++n) {
        for (std::size_t m = 1; m < n; ++m) {
            double direct = 0.0;
            for (std::size_t i = 1; i <= m; ++i) {
                direct += std::pow(std::exp(1.0) * static_cast<double>(n) / static_cast<double>(i), static_cast<double>(i));
            }
            const auto check = theory::partial_sum_check(n, m);
            worst = std::max(worst, std::abs(check.lhs - direct) / direct);
        }
    }
    std::ostringstream detail;
    detail << "max relative deviation " << worst << " for n <= " << limit;
    return {"log-space vs direct evaluation", worst < 1e-10, detail.str()};
}

CheckResult bracket_sanity(std::size_t n_max)
{
    std::size_t cases = 0;
    for (std::size_t n = 4; n <= n_max; ++n) {
        for (std::size_t m = 1; 2 * m <= n; ++m) {
            if (m * m >= n - m) {
                break;
            }
            ++cases;
            const auto b = theory::escape_bracket(n, m, static_cast<double>(n));
            if (!(b.log_lower < b.log_upper)) {
                return {"escape bracket ordering", false, "lower >= upper at n=" + std::to_string(n) + ", m=" + std::to_string(m)};
            }
        }
    }
    return {"escape bracket ordering", true, std::to_string(cases) + " non-vacuous (n, m) pairs"};
}

CheckResult threshold_values(bool corrupt)
{
    // Direct formula 2 (en/r)^r ln(nR) at n = R = 100 for small r.
    const ThresholdSpec spec{.n = 100, .image_size = 100.0, .lambda = 1};
    for (int r = 1; r <= 3; ++r) {
        const double direct = 2.0 * std::pow(std::exp(1.0) * 100.0 / r, r) * std::log(100.0 * 100.0);
        const auto expected = static_cast<std::uint64_t>(std::floor(direct));
        std::uint64_t limit = counter_limit(r, spec);
        if (corrupt) {
            limit += 1;
        }
        if (limit != expected) {
            return {"stagnation threshold", false,
                    "r=" + std::to_string(r) + ": counter limit " + std::to_string(limit) + ", expected " + std::to_string(expected)};
        }
    }
    return {"stagnation threshold", true, "counter limits at n=R=100 match 2(en/r)^r ln(nR) for r=1..3"};
}

CheckResult engine_accounting()
{
    const OneMax problem(40);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        RandomStream rng(seed);
        SdEa sd(problem);
        sd.initialize(rng);
        SasdEa sasd(problem);
        sasd.initialize(rng);
        for (std::uint64_t g = 1; g <= 500; ++g) {
            sd.step(rng);
            sasd.step(rng);
            const auto& a = sd.state();
            const auto& b = sasd.state();
            if (a.evaluations != 1 + g || b.evaluations != 1 + g * sasd.evaluations_per_step()) {
                return {"engine evaluation accounting", false, "seed " + std::to_string(seed) + ", generation " + std::to_string(g)};
            }
            if (a.strength > 20.0 || a.strength < 1.0 || b.strength > 20.0 || b.strength < 1.0) {
                return {"engine evaluation accounting", false, "strength out of range"};
            }
        }
    }
    return {"engine evaluation accounting", true, "evaluations = 1 + G*lambda over 500 generations"};
}

CheckResult delta_evaluation()
{
    RandomStream rng(2024);
    const NeedHighMut nhm(100, 1.0);
    const Jump jmp(60, 3);
    const LeadingOnes lo(60);
    const Trap trp(30);
    const Problem* problems[] = {&nhm, &jmp, &lo, &trp};
    std::vector<std::uint32_t> flips;
    std::size_t compared = 0;
    for (const Problem* p : problems) {
        const std::size_t n = p->dimension();
        for (int trial = 0; trial < 2000; ++trial) {
            const BitString x = random_bitstring(n, rng);
            const BitFlipSampler sampler(n, 1.0 + static_cast<double>(trial % 4));
            sampler.sample(rng, flips);
            BitString y = x;
            y.flip(flips);
            ++compared;
            if (p->evaluate_flipped(x, p->evaluate(x), flips) != p->evaluate(y)) {
                return {"offspring evaluation from flips", false, p->id() + ": mismatch for parent " + x.to_string()};
            }
        }
    }
    return {"offspring evaluation from flips", true, std::to_string(compared) + " random (parent, flips) pairs"};
}

CheckResult layout_sanity()
{
    for (std::size_t n : {100, 200, 400, 600, 800, 1000}) {
        for (double xi : {1.0, 3.0}) {
            const auto layout = NeedHighMutLayout::make(n, xi);
            const double bound = 2.0 * xi * std::pow(static_cast<double>(n), 0.75);
            if (layout.prefix_len + layout.suffix_len != n || static_cast<double>(layout.suffix_len) > bound) {
                return {"needhighmut layout", false, "n=" + std::to_string(n)};
            }
        }
    }
    return {"needhighmut layout", true, "s <= 2 xi n^(3/4) and prefix + suffix = n"};
}

} // namespace

std::vector<CheckResult> run_self_checks(const CheckOptions& options)
{
    return {
        lemma_sweep(options.n_max),
        log_space_agreement(options.n_max),
        bracket_sanity(options.n_max),
        threshold_values(options.corrupt_threshold),
        engine_accounting(),
        delta_evaluation(),
        layout_sanity(),
    };
}

} // namespace sdea
