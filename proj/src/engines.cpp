#include "sdea/engines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdea/format.hpp"

namespace sdea {

// --- Engine --------------------------------------------------------------------------------

Engine::Engine(const Problem& problem)
    : problem_(problem)
{
}

void Engine::initialize(RandomStream& rng) { initialize_at(random_bitstring(problem_.dimension(), rng)); }

void Engine::initialize_at(BitString start)
{
    if (start.size() != problem_.dimension()) {
        throw std::invalid_argument("engine: start point length does not match the problem dimension");
    }
    state_ = EngineState{};
    state_.current = std::move(start);
    state_.current_fitness = problem_.evaluate(state_.current);
    state_.evaluations = 1;
    reset_parameters();
}

const BitFlipSampler& Engine::sampler_for(double strength)
{
    for (const auto& [s, sampler] : samplers_) {
        if (s == strength) {
            return *sampler;
        }
    }
    samplers_.emplace_back(strength, std::make_unique<BitFlipSampler>(problem_.dimension(), strength));
    return *samplers_.back().second;
}

Fitness Engine::make_offspring(double strength, RandomStream& rng, std::vector<std::uint32_t>& flips)
{
    sampler_for(strength).sample(rng, flips);
    ++state_.evaluations;
    return problem_.evaluate_flipped(state_.current, state_.current_fitness, flips);
}

// --- static (1+1) EA -----------------------------------------------------------------------

StaticEa::StaticEa(const Problem& problem, double strength)
    : Engine(problem)
    , fixed_strength_(strength)
    , sampler_(&sampler_for(strength))
{
}

std::string StaticEa::params() const { return "r=" + format_number(fixed_strength_); }

void StaticEa::reset_parameters() { set_strength(fixed_strength_); }

void StaticEa::step(RandomStream& rng)
{
    sampler_->sample(rng, flips_);
    ++state_.evaluations;
    const Fitness fy = problem().evaluate_flipped(state_.current, state_.current_fitness, flips_);
    if (fy >= state_.current_fitness) {
        accept(flips_, fy);
    }
}

// --- SD-(1+1) EA ---------------------------------------------------------------------------

SdEa::SdEa(const Problem& problem, Options options)
    : Engine(problem)
    , detect_(options.stagnation_detection)
{
    const std::size_t n = problem.dimension();
    if (n < 2) {
        throw std::invalid_argument("sd: n must be at least 2");
    }
    spec_.n = n;
    spec_.image_size = options.image_size == 0.0 ? static_cast<double>(n) : options.image_size;
    spec_.lambda = 1;
    if (!(spec_.image_size >= 1.0)) {
        throw std::invalid_argument("sd: R must be at least 1");
    }
    change_strength(1.0);
}

std::string SdEa::params() const { return "R=" + format_number(spec_.image_size); }

void SdEa::reset_parameters()
{
    state_.counter = 0;
    change_strength(1.0);
}

void SdEa::change_strength(double strength)
{
    set_strength(strength);
    sampler_ = &sampler_for(strength);
    limit_ = detect_ ? counter_limit(strength, spec_) : unlimited_counter;
}

void SdEa::step(RandomStream& rng)
{
    sampler_->sample(rng, flips_);
    ++state_.evaluations;
    const Fitness fy = problem().evaluate_flipped(state_.current, state_.current_fitness, flips_);
    ++state_.counter;
    if (fy > state_.current_fitness) {
        accept(flips_, fy);
        state_.counter = 0;
        if (state_.strength != 1.0) {
            change_strength(1.0);
        }
    } else if (fy == state_.current_fitness && state_.strength == 1.0) {
        accept(flips_, fy);
    }
    if (state_.counter > limit_) {
        const double cap = static_cast<double>(spec_.n) / 2.0;
        change_strength(std::min(state_.strength + 1.0, cap));
        state_.counter = 0;
    }
}

// --- SASD-(1+lambda) EA --------------------------------------------------------------------

std::uint32_t default_lambda(std::size_t n)
{
    auto lambda = static_cast<std::uint32_t>(std::ceil(std::log(static_cast<double>(n))));
    if (lambda % 2 != 0) {
        ++lambda;
    }
    return std::max<std::uint32_t>(lambda, 2);
}

double sasd_next_strength(double strength, double winner_strength, bool adopt, bool halve, std::size_t n) noexcept
{
    double next = 0.0;
    if (adopt) {
        next = winner_strength;
    } else {
        next = halve ? strength / 2.0 : 2.0 * strength;
    }
    return std::min(std::max(2.0, next), static_cast<double>(n) / 4.0);
}

SasdEa::SasdEa(const Problem& problem, Options options)
    : Engine(problem)
    , initial_strength_(options.initial_strength)
{
    const std::size_t n = problem.dimension();
    if (n < 8) {
        throw std::invalid_argument("sasd: n must be at least 8 so that [2, n/4] is non-empty");
    }
    spec_.n = n;
    spec_.lambda = options.lambda == 0 ? default_lambda(n) : options.lambda;
    spec_.image_size = options.image_size == 0.0 ? static_cast<double>(n) : options.image_size;
    if (spec_.lambda < 2 || spec_.lambda % 2 != 0) {
        throw std::invalid_argument("sasd: lambda must be even and at least 2 (lambda = " +
                                    std::to_string(spec_.lambda) + ")");
    }
    if (!(spec_.image_size >= 1.0)) {
        throw std::invalid_argument("sasd: R must be at least 1");
    }
    if (!(initial_strength_ >= 2.0) || initial_strength_ > static_cast<double>(n) / 4.0) {
        throw std::invalid_argument("sasd: r_init must lie in [2, n/4] (r_init = " + format_number(initial_strength_) + ")");
    }
}

std::string SasdEa::params() const
{
    return "lambda=" + std::to_string(spec_.lambda) + ";r_init=" + format_number(initial_strength_) +
           ";R=" + format_number(spec_.image_size);
}

void SasdEa::reset_parameters()
{
    state_.counter = 0;
    state_.sd_active = false;
    set_strength(initial_strength_);
}

void SasdEa::step(RandomStream& rng)
{
    ++state_.counter;
    if (state_.sd_active) {
        detection_step(rng);
    } else {
        normal_step(rng);
    }
}

void SasdEa::normal_step(RandomStream& rng)
{
    const double r = state_.strength;
    const double low = r / 2.0;
    const double high = 2.0 * r;
    const std::uint32_t half = spec_.lambda / 2;

    Fitness best = 0;
    double best_strength = low;
    std::uint64_t ties = 0;
    for (std::uint32_t i = 0; i < spec_.lambda; ++i) {
        const double s = i < half ? low : high;
        const Fitness f = make_offspring(s, rng, flips_);
        if (i == 0 || f > best) {
            best = f;
            best_strength = s;
            ties = 1;
            best_flips_.swap(flips_);
        } else if (f == best && rng.below(++ties) == 0) {
            best_strength = s;
            best_flips_.swap(flips_);
        }
    }

    if (best >= state_.current_fitness) {
        if (best > state_.current_fitness) {
            state_.counter = 0;
        }
        accept(best_flips_, best);
    }

    const bool adopt = rng.coin();
    const bool halve = !adopt && rng.coin();
    double next = sasd_next_strength(r, best_strength, adopt, halve, spec_.n);

    // The timeout is judged at the strength this generation was run with.
    if (state_.counter > counter_limit(r, spec_)) {
        next = 2.0;
        state_.sd_active = true;
        state_.counter = 0;
    }
    set_strength(next);
}

void SasdEa::detection_step(RandomStream& rng)
{
    const double r = state_.strength;
    Fitness best = 0;
    std::uint64_t ties = 0;
    for (std::uint32_t i = 0; i < spec_.lambda; ++i) {
        const Fitness f = make_offspring(r, rng, flips_);
        if (i == 0 || f > best) {
            best = f;
            ties = 1;
            best_flips_.swap(flips_);
        } else if (f == best && rng.below(++ties) == 0) {
            best_flips_.swap(flips_);
        }
    }

    if (best > state_.current_fitness) {
        accept(best_flips_, best);
        set_strength(initial_strength_);
        state_.sd_active = false;
        state_.counter = 0;
    } else if (state_.counter > counter_limit(r, spec_)) {
        set_strength(std::min(r + 1.0, static_cast<double>(spec_.n) / 2.0));
        state_.counter = 0;
    }
}

// --- (1+1) FEA_beta ------------------------------------------------------------------------

namespace {

std::uint32_t half_dimension(const Problem& problem)
{
    if (problem.dimension() < 2) {
        throw std::invalid_argument("fea: n must be at least 2");
    }
    return static_cast<std::uint32_t>(problem.dimension() / 2);
}

} // namespace

FastEa::FastEa(const Problem& problem, double beta)
    : Engine(problem)
    , power_law_(beta, half_dimension(problem))
    , by_alpha_(power_law_.upper() + 1)
{
}

std::string FastEa::params() const { return "beta=" + format_number(power_law_.beta()); }

void FastEa::reset_parameters() { state_.max_strength_seen = 0.0; }

void FastEa::step(RandomStream& rng)
{
    const std::uint32_t alpha = power_law_(rng);
    auto& sampler = by_alpha_[alpha];
    if (!sampler) {
        sampler = std::make_unique<BitFlipSampler>(problem().dimension(), static_cast<double>(alpha));
    }
    set_strength(alpha);
    sampler->sample(rng, flips_);
    ++state_.evaluations;
    const Fitness fy = problem().evaluate_flipped(state_.current, state_.current_fitness, flips_);
    if (fy >= state_.current_fitness) {
        accept(flips_, fy);
    }
}

// --- selection by id -----------------------------------------------------------------------

void validate(const AlgorithmSpec& spec)
{
    const auto reject = [&](bool present, const char* name) {
        if (present) {
            throw std::invalid_argument(std::string("parameter ") + name + " does not apply to algorithm '" + spec.id + "'");
        }
    };
    if (spec.id == "static") {
        reject(spec.beta.has_value(), "beta");
        reject(spec.lambda.has_value(), "lambda");
        reject(spec.initial_strength.has_value(), "r-init");
        reject(spec.image_size.has_value(), "R");
    } else if (spec.id == "sd") {
        reject(spec.strength.has_value(), "r");
        reject(spec.beta.has_value(), "beta");
        reject(spec.lambda.has_value(), "lambda");
        reject(spec.initial_strength.has_value(), "r-init");
    } else if (spec.id == "sasd") {
        reject(spec.strength.has_value(), "r");
        reject(spec.beta.has_value(), "beta");
    } else if (spec.id == "fea") {
        reject(spec.strength.has_value(), "r");
        reject(spec.lambda.has_value(), "lambda");
        reject(spec.initial_strength.has_value(), "r-init");
        reject(spec.image_size.has_value(), "R");
    } else {
        throw std::invalid_argument("unknown algorithm id '" + spec.id + "' (expected static, sd, sasd or fea)");
    }
}

std::unique_ptr<Engine> make_engine(const AlgorithmSpec& spec, const Problem& problem)
{
    validate(spec);
    if (spec.id == "static") {
        return std::make_unique<StaticEa>(problem, spec.strength.value_or(1.0));
    }
    if (spec.id == "sd") {
        return std::make_unique<SdEa>(problem, SdEa::Options{.image_size = spec.image_size.value_or(0.0)});
    }
    if (spec.id == "sasd") {
        return std::make_unique<SasdEa>(problem, SasdEa::Options{.lambda = spec.lambda.value_or(0),
                                                                 .initial_strength = spec.initial_strength.value_or(2.0),
                                                                 .image_size = spec.image_size.value_or(0.0)});
    }
    return std::make_unique<FastEa>(problem, spec.beta.value_or(1.5));
}

// --- termination ---------------------------------------------------------------------------

const char* to_string(Terminal terminal) noexcept
{
    switch (terminal) {
    case Terminal::optimum:
        return "optimum";
    case Terminal::trap:
        return "trap";
    case Terminal::budget:
        return "budget";
    }
    return "budget";
}

RunOutcome run_to_termination(Engine& engine, std::uint64_t budget, RandomStream& rng, StoppingPolicy policy)
{
    if (budget == 0) {
        throw std::invalid_argument("run_to_termination: budget must be at least 1");
    }
    const Problem& problem = engine.problem();
    const Fitness optimum = problem.optimum_fitness();
    const auto trap = policy.stop_on_trap ? problem.trap_fitness() : std::nullopt;
    const std::uint64_t per_step = engine.evaluations_per_step();

    engine.initialize(rng);
    RunOutcome outcome;
    const auto& state = engine.state();
    while (true) {
        if (state.current_fitness == optimum) {
            outcome.terminal = Terminal::optimum;
            break;
        }
        if (trap && state.current_fitness == *trap) {
            outcome.terminal = Terminal::trap;
            break;
        }
        if (state.evaluations >= budget || budget - state.evaluations < per_step) {
            outcome.terminal = Terminal::budget;
            break;
        }
        engine.step(rng);
    }
    outcome.evaluations = state.evaluations;
    outcome.final_fitness = state.current_fitness;
    outcome.max_strength = state.max_strength_seen;
    return outcome;
}

} // namespace sdea
