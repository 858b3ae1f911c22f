#include "sdea/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "sdea/checks.hpp"
#include "sdea/format.hpp"

namespace sdea::cli {

namespace {

constexpr int usage_error = 2;

template <typename T>
std::optional<T> parse_number(std::string_view text)
{
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

std::size_t parse_dimension(std::string_view text)
{
    const auto value = parse_number<std::size_t>(text);
    if (!value || *value == 0) {
        throw std::invalid_argument("invalid dimension '" + std::string(text) + "'");
    }
    return *value;
}

} // namespace

std::vector<std::size_t> parse_dimensions(std::string_view text)
{
    std::vector<std::size_t> result;
    if (text.find(':') != std::string_view::npos) {
        std::vector<std::size_t> parts;
        std::size_t begin = 0;
        while (true) {
            const std::size_t colon = text.find(':', begin);
            parts.push_back(parse_dimension(text.substr(begin, colon - begin)));
            if (colon == std::string_view::npos) {
                break;
            }
            begin = colon + 1;
        }
        if (parts.size() != 3 || parts[0] > parts[1]) {
            throw std::invalid_argument("range must be start:stop:step with start <= stop, got '" + std::string(text) + "'");
        }
        for (std::size_t n = parts[0]; n <= parts[1]; n += parts[2]) {
            result.push_back(n);
        }
        return result;
    }
    std::size_t begin = 0;
    while (true) {
        const std::size_t comma = text.find(',', begin);
        result.push_back(parse_dimension(text.substr(begin, comma - begin)));
        if (comma == std::string_view::npos) {
            break;
        }
        begin = comma + 1;
    }
    return result;
}

double parse_strength(std::string_view text, std::optional<std::size_t> gap)
{
    if (text == "mn") {
        if (!gap) {
            throw std::invalid_argument("--r mn needs --m");
        }
        return static_cast<double>(*gap);
    }
    std::string_view number = text;
    if (!number.empty() && number.back() == 'n') {
        number.remove_suffix(1);
    }
    const auto value = parse_number<double>(number);
    if (!value || !(*value > 0.0) || !std::isfinite(*value)) {
        throw std::invalid_argument("invalid rate '" + std::string(text) + "' (expected e.g. 1n, 8n, mn or 2.5)");
    }
    return *value;
}

std::uint64_t parse_count(std::string_view text)
{
    if (const auto value = parse_number<std::uint64_t>(text)) {
        return *value;
    }
    const auto value = parse_number<double>(text);
    if (!value || !(*value >= 0.0) || *value > 1.8e19 || std::floor(*value) != *value) {
        throw std::invalid_argument("invalid count '" + std::string(text) + "'");
    }
    return static_cast<std::uint64_t>(*value);
}

ReproPlan repro_plan(const std::string& experiment, double scale, std::uint64_t seed, unsigned jobs)
{
    if (!(scale > 0.0)) {
        throw std::invalid_argument("--scale must be positive");
    }
    const auto runs = static_cast<std::uint32_t>(std::max(1.0, std::round(1000.0 * scale)));
    ReproPlan plan;
    plan.stem = experiment;

    const auto add = [&](AlgorithmSpec algorithm, ProblemSpec problem, std::vector<std::size_t> dims) {
        ExperimentConfig config;
        config.algorithm = std::move(algorithm);
        config.problem = std::move(problem);
        config.dimensions = std::move(dims);
        config.runs = runs;
        config.base_seed = seed;
        config.jobs = jobs;
        plan.configs.push_back(std::move(config));
    };

    const auto algorithm = [](std::string id) {
        AlgorithmSpec spec;
        spec.id = std::move(id);
        return spec;
    };
    if (experiment == "fig1" || experiment == "fig2") {
        ProblemSpec jump;
        jump.id = "jump";
        jump.gap = 4;
        const std::vector<std::size_t> dims = parse_dimensions("40:160:20");
        add(algorithm("sd"), jump, dims);
        add(algorithm("sasd"), jump, dims);
        for (double r : {1.0, 4.0}) {
            auto spec = algorithm("static");
            spec.strength = r;
            add(spec, jump, dims);
        }
        for (double beta : {1.5, 2.0, 4.0}) {
            auto spec = algorithm("fea");
            spec.beta = beta;
            add(spec, jump, dims);
        }
    } else if (experiment == "table1") {
        ProblemSpec nhm;
        nhm.id = "needhighmut";
        nhm.xi = 3.0;
        const std::vector<std::size_t> dims = parse_dimensions("200:1000:200");
        for (double r : {1.0, 2.0, 6.0, 8.0}) {
            auto spec = algorithm("static");
            spec.strength = r;
            add(spec, nhm, dims);
        }
        add(algorithm("sd"), nhm, dims);
        add(algorithm("sasd"), nhm, dims);
    } else {
        throw std::invalid_argument("unknown experiment '" + experiment + "' (expected fig1, fig2 or table1)");
    }
    return plan;
}

namespace {

void print_summaries(std::ostream& out, std::span<const CellSummary> summaries)
{
    out << std::left << std::setw(12) << "problem" << std::setw(8) << "algo" << std::setw(6) << "n" << std::setw(18)
        << "params" << std::right << std::setw(7) << "runs" << std::setw(10) << "success" << std::setw(14) << "mean"
        << std::setw(14) << "median" << '\n';
    for (const auto& s : summaries) {
        const auto opt = [](double v) { return std::isnan(v) ? std::string("-") : format_number(std::round(v * 10) / 10); };
        out << std::left << std::setw(12) << s.problem << std::setw(8) << s.algorithm << std::setw(6) << s.n
            << std::setw(18) << s.params << std::right << std::setw(7) << s.count << std::setw(10)
            << format_number(s.success_ratio) << std::setw(14) << opt(s.mean_evals) << std::setw(14) << opt(s.median_evals)
            << '\n';
    }
}

std::filesystem::path summary_path_for(const std::filesystem::path& records)
{
    std::filesystem::path result = records;
    result.replace_filename(records.stem().string() + "_summary" + records.extension().string());
    return result;
}

struct RunFlags {
    std::string algo;
    std::string function;
    std::string n;
    std::uint32_t runs = 1;
    std::string budget;
    std::uint64_t seed = 1;
    std::string out = "records.csv";
    std::string summary_out;
    std::string r;
    std::optional<double> beta;
    std::optional<std::uint32_t> lambda;
    std::optional<double> r_init;
    std::string big_r;
    std::optional<std::size_t> m;
    std::optional<double> xi;
    unsigned jobs = 0;
};

ExperimentConfig to_config(const RunFlags& flags)
{
    ExperimentConfig config;
    config.problem = ProblemSpec{.id = flags.function, .gap = flags.m, .xi = flags.xi};
    config.algorithm.id = flags.algo;
    if (!flags.r.empty()) {
        config.algorithm.strength = parse_strength(flags.r, flags.m);
    }
    config.algorithm.beta = flags.beta;
    config.algorithm.lambda = flags.lambda;
    config.algorithm.initial_strength = flags.r_init;
    if (!flags.big_r.empty() && flags.big_r != "n") {
        const auto value = parse_number<double>(flags.big_r);
        if (!value) {
            throw std::invalid_argument("invalid --R '" + flags.big_r + "' (expected a number or n)");
        }
        config.algorithm.image_size = *value;
    }
    config.dimensions = parse_dimensions(flags.n);
    config.runs = flags.runs;
    if (!flags.budget.empty()) {
        config.budget = parse_count(flags.budget);
    }
    config.base_seed = flags.seed;
    config.jobs = flags.jobs;
    validate(config.algorithm);
    validate(config.problem);
    for (std::size_t n : config.dimensions) {
        // Surfaces dimension-dependent parameter errors before any run starts.
        const auto problem = make_problem(config.problem, n);
        make_engine(config.algorithm, *problem);
    }
    return config;
}

std::vector<CellSummary> execute(std::span<const ExperimentConfig> configs, const std::filesystem::path& records_path,
                                 const std::filesystem::path& summary_path)
{
    std::vector<RunRecord> records;
    for (const auto& config : configs) {
        auto part = run_experiment(config);
        records.insert(records.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    sort_records(records);
    const auto summaries = summarize(records);
    write_csv(records_path, std::move(records));
    write_csv(summary_path, summaries);
    return summaries;
}

std::string trim(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r");
    return std::string(text.substr(first, last - first + 1));
}

// key=value lines become "--key value" pairs; '#' starts a comment.
std::vector<std::string> read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read config file '" + path + "'");
    }
    std::vector<std::string> args;
    std::string line;
    for (int number = 1; std::getline(in, line); ++number) {
        const std::string content = trim(line.substr(0, line.find('#')));
        if (content.empty()) {
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(number) + ": expected key=value");
        }
        args.push_back("--" + trim(std::string_view(content).substr(0, eq)));
        args.push_back(trim(std::string_view(content).substr(eq + 1)));
    }
    return args;
}

// Replaces `--config FILE` after the `run` subcommand by the file's flags, placed right after
// `run` so that flags given on the command line come later and take precedence.
std::vector<std::string> expand_config(std::vector<std::string> args)
{
    const auto run = std::find(args.begin() + 1, args.end(), "run");
    if (run == args.end()) {
        return args;
    }
    const auto run_pos = static_cast<std::size_t>(run - args.begin());
    std::vector<std::string> from_files;
    for (std::size_t i = run_pos + 1; i < args.size();) {
        std::string path;
        std::size_t width = 0;
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            width = 2;
        } else if (args[i].starts_with("--config=")) {
            path = args[i].substr(9);
            width = 1;
        }
        if (width == 0) {
            ++i;
            continue;
        }
        const auto parsed = read_config(path);
        from_files.insert(from_files.end(), parsed.begin(), parsed.end());
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + width));
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(run_pos + 1), from_files.begin(), from_files.end());
    return args;
}

} // namespace

std::vector<CellSummary> execute_plan(const ReproPlan& plan, const std::filesystem::path& dir)
{
    return execute(plan.configs, dir / (plan.stem + "_records.csv"), dir / (plan.stem + "_summary.csv"));
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Stagnation-detection evolutionary algorithms: experiments and checks", "sdea"};
    app.require_subcommand(1);

    RunFlags flags;
    auto* run = app.add_subcommand("run", "Run one algorithm on one benchmark over a list of dimensions");
    run->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string config_file; // consumed by expand_config; declared for --help
    run->add_option("--config", config_file, "File of key=value lines (keys are flag names); flags take precedence");
    run->add_option("--algo", flags.algo, "static | sd | sasd | fea")->required();
    run->add_option("--function", flags.function, "onemax | leadingones | jump | trap | needhighmut")->required();
    run->add_option("--n", flags.n, "Dimensions: 40, 40,60 or start:stop:step")->required();
    run->add_option("--runs", flags.runs, "Runs per dimension")->capture_default_str()->check(CLI::PositiveNumber);
    run->add_option("--budget", flags.budget, "Evaluation budget per run (default 1e9; 1e4*n^2 for needhighmut)");
    run->add_option("--seed", flags.seed, "Base seed")->capture_default_str();
    run->add_option("--out", flags.out, "Records CSV")->capture_default_str();
    run->add_option("--summary-out", flags.summary_out, "Summary CSV (default: <out stem>_summary.csv)");
    run->add_option("--r", flags.r, "static: strength, e.g. 1n, 8n, mn");
    run->add_option("--beta", flags.beta, "fea: power-law exponent (default 1.5)");
    run->add_option("--lambda", flags.lambda, "sasd: offspring per generation (default ceil(ln n), even)");
    run->add_option("--r-init", flags.r_init, "sasd: initial strength (default 2)");
    run->add_option("--R", flags.big_r, "sd, sasd: image-size bound R (default n)");
    run->add_option("--m", flags.m, "jump: gap size");
    run->add_option("--xi", flags.xi, "needhighmut: block parameter (default 1)");
    run->add_option("--jobs", flags.jobs, "Worker threads (default: available cores)")->envname("SDEA_JOBS");

    CheckOptions check_options;
    auto* check = app.add_subcommand("check", "Closed-form sweeps and engine invariant smoke tests");
    check->add_option("--n-max", check_options.n_max, "Largest n of the sweeps")->capture_default_str()->check(CLI::Range(2, 100000));
    check->add_flag("--corrupt-threshold", check_options.corrupt_threshold, "Test hook: perturb the engine threshold")
        ->group("");

    std::string experiment;
    double scale = 1.0;
    std::string out_dir = ".";
    std::uint64_t repro_seed = 1;
    unsigned repro_jobs = 0;
    auto* repro = app.add_subcommand("repro", "Run the canonical configurations of an experiment");
    repro->add_option("--experiment", experiment, "fig1 | fig2 | table1")->required();
    repro->add_option("--scale", scale, "Fraction of the 1000 runs per cell")->capture_default_str();
    repro->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    repro->add_option("--seed", repro_seed, "Base seed")->capture_default_str();
    repro->add_option("--jobs", repro_jobs, "Worker threads (default: available cores)")->envname("SDEA_JOBS");

    std::vector<std::string> args;
    try {
        args = expand_config(std::vector<std::string>(argv, argv + argc));
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return usage_error;
    }
    std::vector<const char*> pointers;
    for (const auto& a : args) {
        pointers.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(pointers.size()), pointers.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (run->parsed()) {
            ExperimentConfig config;
            try {
                config = to_config(flags);
            } catch (const std::invalid_argument& e) {
                err << "usage error: " << e.what() << "\nRun with --help for more information.\n";
                return usage_error;
            }
            const std::filesystem::path records_path = flags.out;
            const std::filesystem::path summary_path = flags.summary_out.empty() ? summary_path_for(records_path)
                                                                                 : std::filesystem::path(flags.summary_out);
            const auto summaries = execute({&config, 1}, records_path, summary_path);
            print_summaries(out, summaries);
            out << "records: " << records_path.string() << "\nsummary: " << summary_path.string() << '\n';
            return 0;
        }

        if (check->parsed()) {
            bool all = true;
            for (const auto& result : run_self_checks(check_options)) {
                out << (result.passed ? "PASS " : "FAIL ") << result.name << ": " << result.detail << '\n';
                all = all && result.passed;
            }
            out << (all ? "all checks passed" : "some checks FAILED") << '\n';
            return all ? 0 : 1;
        }

        ReproPlan plan;
        try {
            plan = repro_plan(experiment, scale, repro_seed, repro_jobs);
        } catch (const std::invalid_argument& e) {
            err << "usage error: " << e.what() << '\n';
            return usage_error;
        }
        if (plan.stem == "table1") {
            out << "note: needhighmut runs end at the global optimum, at the trap state (full prefix, all blocks "
                   "active) or after 1e4*n^2 evaluations; success_ratio counts optimum terminals.\n";
        }
        const auto summaries = execute_plan(plan, out_dir);
        print_summaries(out, summaries);
        out << "records: " << (std::filesystem::path(out_dir) / (plan.stem + "_records.csv")).string()
            << "\nsummary: " << (std::filesystem::path(out_dir) / (plan.stem + "_summary.csv")).string() << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace sdea::cli
