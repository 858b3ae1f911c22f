#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdea/bitstring.hpp"
#include "sdea/mutation.hpp"
#include "sdea/problem.hpp"
#include "sdea/random.hpp"
#include "sdea/threshold.hpp"

namespace sdea {

/// Mutable state of one optimizer run.
struct EngineState {
    BitString current;
    Fitness current_fitness = 0;
    double strength = 1.0;      // r: expected number of flipped bits
    std::uint64_t counter = 0;  // u: unsuccessful steps in the current phase
    bool sd_active = false;     // g: (1+lambda) variant is in its stagnation-detection state
    std::uint64_t evaluations = 0;
    double max_strength_seen = 0.0;
};

/// An elitist optimizer advanced one generation at a time. An engine refers to, but does not
/// own, its problem; the problem must outlive it.
class Engine {
public:
    explicit Engine(const Problem& problem);
    virtual ~Engine() = default;

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    virtual std::string id() const = 0;
    virtual std::string params() const = 0;
    virtual std::uint64_t evaluations_per_step() const { return 1; }

    /// Uniform random start point; counts one evaluation.
    void initialize(RandomStream& rng);
    /// Start from a given point (used to measure escape times); counts one evaluation.
    void initialize_at(BitString start);

    virtual void step(RandomStream& rng) = 0;

    const EngineState& state() const noexcept { return state_; }
    const Problem& problem() const noexcept { return problem_; }

protected:
    /// Restores strength, counter and state flag to their initial values.
    virtual void reset_parameters() = 0;

    void set_strength(double strength) noexcept
    {
        state_.strength = strength;
        if (strength > state_.max_strength_seen) {
            state_.max_strength_seen = strength;
        }
    }

    /// Standard bit mutation sampler for a strength; built once per engine and strength.
    const BitFlipSampler& sampler_for(double strength);

    /// Samples one offspring of the current point at `strength` into `flips` and evaluates it.
    Fitness make_offspring(double strength, RandomStream& rng, std::vector<std::uint32_t>& flips);

    void accept(std::span<const std::uint32_t> flips, Fitness fitness)
    {
        state_.current.flip(flips);
        state_.current_fitness = fitness;
    }

    EngineState state_;
    std::vector<std::uint32_t> flips_;

private:
    const Problem& problem_;
    std::vector<std::pair<double, std::unique_ptr<BitFlipSampler>>> samplers_;
};

/// (1+1) EA with static strength r: accept iff f(y) >= f(x).
class StaticEa final : public Engine {
public:
    /// Throws std::invalid_argument unless 0 < r <= n.
    StaticEa(const Problem& problem, double strength);

    std::string id() const override { return "static"; }
    std::string params() const override;
    void step(RandomStream& rng) override;

private:
    void reset_parameters() override;
    double fixed_strength_;
    const BitFlipSampler* sampler_ = nullptr;
};

/// (1+1) EA with stagnation detection. Strength starts at 1, resets to 1 on a strict
/// improvement and grows by one (up to n/2) once the counter exceeds 2 (en/r)^r ln(nR).
/// Equal-fitness offspring are accepted only at strength 1 and never reset the counter.
class SdEa final : public Engine {
public:
    struct Options {
        double image_size = 0.0;           // R; 0 selects R = n
        bool stagnation_detection = true;  // false: the threshold is never reached
    };

    /// Throws std::invalid_argument if n < 2 or R < 1.
    SdEa(const Problem& problem, Options options);
    explicit SdEa(const Problem& problem) : SdEa(problem, Options{}) {}

    std::string id() const override { return "sd"; }
    std::string params() const override;
    void step(RandomStream& rng) override;

    const ThresholdSpec& threshold_spec() const noexcept { return spec_; }
    /// Counter value beyond which the current phase ends.
    std::uint64_t current_limit() const noexcept { return limit_; }

private:
    void reset_parameters() override;
    void change_strength(double strength);

    ThresholdSpec spec_;
    bool detect_;
    std::uint64_t limit_ = 0;
    const BitFlipSampler* sampler_ = nullptr;
};

/// (1+lambda) EA with two-rate standard bit mutation and stagnation detection.
/// Normal state: half the offspring at strength r/2, half at 2r; the best (ties uniform)
/// replaces x if not worse; r moves towards the winner's strength or randomly, clamped to
/// [2, n/4]. When the counter exceeds 2 (en/r)^r ln(nR) / lambda the engine switches to the
/// stagnation-detection state, which uses strength r for all offspring, accepts only strict
/// improvements and raises r by one per timeout (up to n/2).
class SasdEa final : public Engine {
public:
    struct Options {
        std::uint32_t lambda = 0;  // 0 selects default_lambda(n)
        double initial_strength = 2.0;
        double image_size = 0.0;   // 0 selects R = n
    };

    /// Throws std::invalid_argument if n < 8, lambda is odd or < 2, or the initial strength
    /// is outside [2, n/4].
    SasdEa(const Problem& problem, Options options);
    explicit SasdEa(const Problem& problem) : SasdEa(problem, Options{}) {}

    std::string id() const override { return "sasd"; }
    std::string params() const override;
    std::uint64_t evaluations_per_step() const override { return spec_.lambda; }
    void step(RandomStream& rng) override;

    const ThresholdSpec& threshold_spec() const noexcept { return spec_; }
    double initial_strength() const noexcept { return initial_strength_; }

private:
    void reset_parameters() override;
    void normal_step(RandomStream& rng);
    void detection_step(RandomStream& rng);

    ThresholdSpec spec_;
    double initial_strength_;
    std::vector<std::uint32_t> best_flips_;
};

/// (1+1) FEA_beta: every step draws alpha from the power law on {1, ..., floor(n/2)} and
/// mutates at strength alpha; accept iff f(y) >= f(x).
class FastEa final : public Engine {
public:
    /// Throws std::invalid_argument if beta <= 1 or n < 2.
    FastEa(const Problem& problem, double beta);

    std::string id() const override { return "fea"; }
    std::string params() const override;
    void step(RandomStream& rng) override;

    const PowerLawDistribution& distribution() const noexcept { return power_law_; }

private:
    void reset_parameters() override;

    PowerLawDistribution power_law_;
    std::vector<std::unique_ptr<BitFlipSampler>> by_alpha_;
};

/// Strength after a normal-state generation of the (1+lambda) EA: the winner's strength if
/// `adopt`, else r/2 or 2r; clamped to [2, n/4].
double sasd_next_strength(double strength, double winner_strength, bool adopt, bool halve, std::size_t n) noexcept;

/// ceil(ln n), rounded up to the next even number.
std::uint32_t default_lambda(std::size_t n);

/// Algorithm selection by string id. Unset parameters take their per-dimension defaults.
struct AlgorithmSpec {
    std::string id = "sd";
    std::optional<double> strength;       // static: r
    std::optional<double> beta;           // fea
    std::optional<std::uint32_t> lambda;  // sasd
    std::optional<double> initial_strength; // sasd: r_init
    std::optional<double> image_size;     // sd, sasd: R
};

/// Throws std::invalid_argument for an unknown id or a parameter the algorithm does not take.
void validate(const AlgorithmSpec& spec);
std::unique_ptr<Engine> make_engine(const AlgorithmSpec& spec, const Problem& problem);

enum class Terminal { optimum, trap, budget };
const char* to_string(Terminal terminal) noexcept;

struct StoppingPolicy {
    bool stop_on_trap = false;
};

struct RunOutcome {
    Terminal terminal = Terminal::budget;
    std::uint64_t evaluations = 0;
    Fitness final_fitness = 0;
    double max_strength = 0.0;
};

/// Initializes the engine at a uniform random point and steps until the current point is a
/// global optimum, a trap state (if the policy says so), or another generation would exceed
/// the evaluation budget. Throws std::invalid_argument for budget 0.
RunOutcome run_to_termination(Engine& engine, std::uint64_t budget, RandomStream& rng, StoppingPolicy policy);

} // namespace sdea
