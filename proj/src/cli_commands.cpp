#include "sfcplace/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sfcplace/report_io.hpp"

namespace sfcplace {

namespace fs = std::filesystem;
using nlohmann::json;

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "gap-gaba") return Algorithm::GapGaba;
    if (name == "gap-raba") return Algorithm::GapRaba;
    if (name == "random") return Algorithm::Random;
    if (name == "exact") return Algorithm::Exact;
    throw std::invalid_argument("unknown algorithm '" + name +
                                "' (expected gap-gaba, gap-raba, random or exact)");
}

std::string algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::GapGaba: return "gap-gaba";
        case Algorithm::GapRaba: return "gap-raba";
        case Algorithm::Random: return "random";
        case Algorithm::Exact: return "exact";
    }
    return "?";
}

SolveResult run_algorithm(Algorithm algorithm, const Dataset& dataset, int strategy_override,
                          const GaConfig& ga, int baseline_attempts,
                          const ExhaustiveLimits& limits) {
    Workload workload = dataset.workload;
    if (strategy_override != 0) {
        const BackupStrategy forced = strategy_from_code(strategy_override);
        for (auto& sfc : workload.sfcs) sfc.strategy = forced;
    }
    switch (algorithm) {
        case Algorithm::GapGaba:
            return run_ga(Encoding::GapGaba, dataset.infrastructure, workload, dataset.objective, ga);
        case Algorithm::GapRaba:
            return run_ga(Encoding::GapRaba, dataset.infrastructure, workload, dataset.objective, ga);
        case Algorithm::Random:
            return random_baseline(dataset.infrastructure, workload, dataset.objective,
                                   baseline_attempts, ga.seed);
        case Algorithm::Exact:
            return exhaustive_solve(dataset.infrastructure, workload, dataset.objective, limits);
    }
    throw std::logic_error("unreachable algorithm");
}

double mean_of(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double stddev_of(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    const double mu = mean_of(values);
    double ss = 0.0;
    for (double v : values) ss += (v - mu) * (v - mu);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

namespace {

MetricSummary summarize(std::vector<double> values) {
    MetricSummary s;
    s.mean = mean_of(values);
    s.stddev = stddev_of(values);
    s.values = std::move(values);
    return s;
}

} // namespace

ComparisonOutcome run_comparison(const Dataset& dataset, const std::vector<CompareConfig>& configs,
                                 const std::vector<std::uint64_t>& seeds, const GaConfig& ga,
                                 int baseline_attempts, const ExhaustiveLimits& limits) {
    if (configs.size() < 2)
        throw std::invalid_argument("compare: at least two configurations required");
    if (seeds.empty()) throw std::invalid_argument("compare: seed list must be non-empty");

    ComparisonOutcome outcome;
    outcome.seeds = seeds;
    for (const auto& config : configs) {
        CompareRow row;
        row.config = config;
        std::vector<double> objective, cost, delay, fitness;
        // One configuration failing must not take the others down with it.
        try {
            for (const std::uint64_t seed : seeds) {
                GaConfig seeded = ga;
                seeded.seed = seed;
                const SolveResult result = run_algorithm(config.algorithm, dataset,
                                                         config.strategy_override, seeded,
                                                         baseline_attempts, limits);
                objective.push_back(result.best_report.objective);
                cost.push_back(result.best_report.normalized_cost);
                delay.push_back(result.best_report.normalized_delay);
                fitness.push_back(result.best_report.fitness);
                if (result.feasible()) ++row.feasible_count;
                row.histories.push_back(result.fitness_history);
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        row.objective = summarize(std::move(objective));
        row.normalized_cost = summarize(std::move(cost));
        row.normalized_delay = summarize(std::move(delay));
        row.fitness = summarize(std::move(fitness));
        outcome.rows.push_back(std::move(row));
    }

    for (const auto& base : outcome.rows) {
        if (!base.error.empty()) continue;
        for (const auto& other : outcome.rows) {
            if (&base == &other || !other.error.empty()) continue;
            Reduction r;
            r.baseline = base.config.name;
            r.candidate = other.config.name;
            r.percent = base.objective.mean == 0.0
                            ? 0.0
                            : (base.objective.mean - other.objective.mean) / base.objective.mean *
                                  100.0;
            outcome.reductions.push_back(r);
        }
    }
    return outcome;
}

namespace {

// ---- shared option plumbing ----------------------------------------------

struct GaOptions {
    GaConfig ga;
    double gamma = 0.0; // 0 = keep the dataset's value
    bool raw_fitness = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--generations", ga.generations, "GA generations");
        cmd->add_option("--population", ga.population, "GA population size");
        cmd->add_option("--crossovers", ga.crossovers_per_generation,
                        "offspring produced per generation");
        cmd->add_option("--elites", ga.elites, "elites carried per generation");
        cmd->add_option("--mutation-rate", ga.mutation_rate, "per-offspring swap probability");
        cmd->add_option("--tournament-size", ga.tournament_size, "tournament size");
        cmd->add_option("--threads", ga.threads, "worker threads (0 = SFC_THREADS/hardware)");
        cmd->add_option("--gamma", gamma, "penalty weight override");
        cmd->add_flag("--raw-fitness", raw_fitness,
                      "weight raw cost/delay totals instead of normalized terms");
    }

    void apply(ObjectiveConfig& cfg) const {
        if (gamma > 0.0) cfg.penalty_weight = gamma;
        if (raw_fitness) cfg.raw_fitness = true;
    }
};

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        seeds.push_back(std::stoull(item));
    }
    if (seeds.empty()) throw std::invalid_argument("empty seed list");
    return seeds;
}

IntRange parse_int_range(const std::string& text, const char* name) {
    IntRange range;
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            range.lo = range.hi = std::stoi(text);
        } else {
            range.lo = std::stoi(text.substr(0, colon));
            range.hi = std::stoi(text.substr(colon + 1));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(name) + ": expected N or LO:HI, got '" + text + "'");
    }
    return range;
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.10g", value);
    return buffer;
}

// ---- generate -------------------------------------------------------------

struct GenerateOptions {
    std::string out_path = "dataset.json";
    std::uint64_t seed = 0;
    bool use_reference = false;
    int scale = 1;
    bool tiny = false;
    std::string categories, sfcs, chain_length, nodes;
    std::vector<int> strategies;
};

int cmd_generate(const GenerateOptions& opt) {
    Dataset dataset;
    if (opt.use_reference) {
        dataset = reference_instance(opt.scale);
    } else {
        GeneratorSpec spec = opt.tiny ? GeneratorSpec::tiny() : GeneratorSpec{};
        if (!opt.categories.empty()) spec.categories = parse_int_range(opt.categories, "--categories");
        if (!opt.sfcs.empty()) spec.sfc_count = parse_int_range(opt.sfcs, "--sfcs");
        if (!opt.chain_length.empty())
            spec.chain_length = parse_int_range(opt.chain_length, "--chain-length");
        if (!opt.nodes.empty()) spec.nodes_per_category = parse_int_range(opt.nodes, "--nodes");
        if (!opt.strategies.empty()) spec.strategies = opt.strategies;

        const GeneratedInstance generated = generate_dataset(spec, opt.seed);
        dataset.infrastructure = generated.infrastructure;
        dataset.workload = generated.workload;
        dataset.objective = ObjectiveConfig{};
    }

    write_file_atomic(opt.out_path, save_dataset(dataset));
    std::printf("wrote %s: M=%d N=%d K=%d total_vnfs=%d\n", opt.out_path.c_str(),
                dataset.infrastructure.category_count(), dataset.infrastructure.total_nodes(),
                dataset.workload.sfc_count(), dataset.workload.total_vnfs());
    return 0;
}

// ---- solve ----------------------------------------------------------------

struct SolveOptions {
    std::string dataset_path;
    std::string algorithm = "gap-gaba";
    std::string seeds_text;
    std::uint64_t seed = 0;
    int strategy_override = 0;
    int attempts = 10000;
    unsigned long long max_evaluations = ExhaustiveLimits{}.max_evaluations;
    std::string out_dir = ".";
    GaOptions ga_options;
};

json solve_manifest(const SolveOptions& opt, Algorithm algorithm, std::uint64_t seed) {
    const GaConfig& ga = opt.ga_options.ga;
    json manifest = {{"command", "solve"},
                     {"dataset", opt.dataset_path},
                     {"algorithm", algorithm_name(algorithm)},
                     {"seed", seed},
                     {"strategy_override", opt.strategy_override},
                     {"generations", ga.generations},
                     {"population", ga.population},
                     {"crossovers", ga.crossovers_per_generation},
                     {"elites", ga.elites},
                     {"mutation_rate", ga.mutation_rate},
                     {"tournament_size", ga.tournament_size},
                     {"gamma", opt.ga_options.gamma},
                     {"raw_fitness", opt.ga_options.raw_fitness},
                     {"attempts", opt.attempts},
                     {"max_evaluations", opt.max_evaluations}};
    return manifest;
}

int cmd_solve(const SolveOptions& opt) {
    Dataset dataset = load_dataset_file(opt.dataset_path);
    opt.ga_options.apply(dataset.objective);
    const Algorithm algorithm = algorithm_from_name(opt.algorithm);
    const std::uint64_t hash = dataset_fingerprint(dataset);

    std::vector<std::uint64_t> seeds = opt.seeds_text.empty()
                                           ? std::vector<std::uint64_t>{opt.seed}
                                           : parse_seed_list(opt.seeds_text);
    fs::create_directories(opt.out_dir);

    const ExhaustiveLimits limits{opt.max_evaluations};
    for (const std::uint64_t seed : seeds) {
        GaConfig ga = opt.ga_options.ga;
        ga.seed = seed;
        const SolveResult result =
            run_algorithm(algorithm, dataset, opt.strategy_override, ga, opt.attempts, limits);

        const std::string file =
            (fs::path(opt.out_dir) /
             (algorithm_name(algorithm) + "_seed" + std::to_string(seed) + ".json"))
                .string();
        const json doc = result_to_json(result, solve_manifest(opt, algorithm, seed), hash);
        write_file_atomic(file, doc.dump(2) + "\n");
        std::printf("%s seed %llu: fitness=%s objective=%s penalty=%d feasible=%s wall=%.3fs -> %s\n",
                    algorithm_name(algorithm).c_str(), static_cast<unsigned long long>(seed),
                    format_double(result.best_report.fitness).c_str(),
                    format_double(result.best_report.objective).c_str(),
                    result.best_report.penalty_count, result.feasible() ? "yes" : "no",
                    result.wall_time_seconds, file.c_str());
    }
    return 0;
}

// ---- evaluate ---------------------------------------------------------------

struct EvaluateOptions {
    std::string dataset_path;
    std::string solution_path;
    std::string out_path; // empty = stdout
    GaOptions ga_options;
};

int cmd_evaluate(const EvaluateOptions& opt) {
    Dataset dataset = load_dataset_file(opt.dataset_path);
    opt.ga_options.apply(dataset.objective);
    const Solution solution =
        load_solution_file(opt.solution_path, dataset.infrastructure, dataset.workload);
    const NormalizationBounds bounds =
        normalization_bounds(dataset.infrastructure, dataset.workload);
    const EvaluationReport report =
        evaluate(solution, dataset.infrastructure, dataset.workload, dataset.objective, bounds);

    const std::string text = report_to_json(report).dump(2) + "\n";
    if (opt.out_path.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        write_file_atomic(opt.out_path, text);
    }
    return 0;
}

// ---- compare ----------------------------------------------------------------

struct CompareOptions {
    std::string dataset_path;
    std::vector<std::string> algorithms;
    std::vector<int> strategy_overrides;
    std::string seeds_text = "0,1,2,3,4,5,6,7,8,9";
    int attempts = 10000;
    unsigned long long max_evaluations = ExhaustiveLimits{}.max_evaluations;
    std::string out_dir = ".";
    GaOptions ga_options;
};

std::vector<CompareConfig> build_configs(const CompareOptions& opt) {
    std::vector<std::string> algorithms = opt.algorithms;
    if (algorithms.empty()) algorithms.push_back("gap-gaba");
    std::vector<int> overrides = opt.strategy_overrides;
    if (overrides.empty()) overrides.push_back(0);

    std::vector<CompareConfig> configs;
    std::vector<std::string> names;
    for (const auto& name : algorithms) {
        for (const int override_code : overrides) {
            CompareConfig config;
            config.algorithm = algorithm_from_name(name);
            config.strategy_override = override_code;
            config.name = name + (override_code ? "-s" + std::to_string(override_code) : "");
            const auto repeats = std::count(names.begin(), names.end(), config.name);
            names.push_back(config.name);
            if (repeats > 0) config.name += "#" + std::to_string(repeats + 1);
            configs.push_back(std::move(config));
        }
    }
    return configs;
}

int cmd_compare(const CompareOptions& opt) {
    Dataset dataset = load_dataset_file(opt.dataset_path);
    opt.ga_options.apply(dataset.objective);
    const std::uint64_t hash = dataset_fingerprint(dataset);
    const std::vector<CompareConfig> configs = build_configs(opt);
    const std::vector<std::uint64_t> seeds = parse_seed_list(opt.seeds_text);

    fs::create_directories(opt.out_dir);
    const ComparisonOutcome outcome = run_comparison(dataset, configs, seeds, opt.ga_options.ga,
                                                     opt.attempts, ExhaustiveLimits{opt.max_evaluations});

    json manifest = {{"command", "compare"},
                     {"dataset", opt.dataset_path},
                     {"seeds", seeds},
                     {"generations", opt.ga_options.ga.generations},
                     {"population", opt.ga_options.ga.population},
                     {"crossovers", opt.ga_options.ga.crossovers_per_generation},
                     {"elites", opt.ga_options.ga.elites},
                     {"mutation_rate", opt.ga_options.ga.mutation_rate},
                     {"gamma", opt.ga_options.gamma},
                     {"raw_fitness", opt.ga_options.raw_fitness},
                     {"attempts", opt.attempts}};

    json rows = json::array();
    std::ostringstream table, reductions_csv, series_csv;
    table << "configuration,metric,mean,stddev\n";
    for (const auto& row : outcome.rows) {
        if (!row.error.empty()) {
            rows.push_back({{"name", row.config.name},
                            {"algorithm", algorithm_name(row.config.algorithm)},
                            {"strategy_override", row.config.strategy_override},
                            {"error", row.error}});
            continue;
        }
        const auto emit = [&](const char* metric, const MetricSummary& s) {
            table << row.config.name << ',' << metric << ',' << format_double(s.mean) << ','
                  << format_double(s.stddev) << '\n';
        };
        emit("objective", row.objective);
        emit("normalized_cost", row.normalized_cost);
        emit("normalized_delay", row.normalized_delay);
        emit("fitness", row.fitness);
        table << row.config.name << ",feasible_rate,"
              << format_double(static_cast<double>(row.feasible_count) /
                               static_cast<double>(seeds.size()))
              << ",0\n";

        for (std::size_t s = 0; s < row.histories.size(); ++s) {
            for (std::size_t g = 0; g < row.histories[s].size(); ++g) {
                series_csv << row.config.name << ',' << seeds[s] << ',' << g << ','
                           << format_double(row.histories[s][g]) << '\n';
            }
        }

        rows.push_back({{"name", row.config.name},
                        {"algorithm", algorithm_name(row.config.algorithm)},
                        {"strategy_override", row.config.strategy_override},
                        {"objective", row.objective.values},
                        {"objective_mean", row.objective.mean},
                        {"objective_stddev", row.objective.stddev},
                        {"normalized_cost_mean", row.normalized_cost.mean},
                        {"normalized_cost_stddev", row.normalized_cost.stddev},
                        {"normalized_delay_mean", row.normalized_delay.mean},
                        {"normalized_delay_stddev", row.normalized_delay.stddev},
                        {"fitness_mean", row.fitness.mean},
                        {"feasible_count", row.feasible_count}});
    }

    reductions_csv << "baseline,candidate,metric,reduction_percent\n";
    json reductions = json::array();
    for (const auto& r : outcome.reductions) {
        reductions_csv << r.baseline << ',' << r.candidate << ",objective,"
                       << format_double(r.percent) << '\n';
        reductions.push_back(
            {{"baseline", r.baseline}, {"candidate", r.candidate}, {"percent", r.percent}});
    }

    const json doc = {{"schema", "sfcplace.comparison.v1"},
                      {"manifest", manifest},
                      {"dataset_hash", fingerprint_string(hash)},
                      {"configurations", rows},
                      {"reductions", reductions}};

    const fs::path out(opt.out_dir);
    write_file_atomic((out / "comparison.json").string(), doc.dump(2) + "\n");
    write_file_atomic((out / "comparison.csv").string(), table.str());
    write_file_atomic((out / "reductions.csv").string(), reductions_csv.str());
    write_file_atomic((out / "series.csv").string(), series_csv.str());

    for (const auto& row : outcome.rows) {
        if (!row.error.empty()) {
            std::printf("%-14s failed: %s\n", row.config.name.c_str(), row.error.c_str());
        } else {
            std::printf("%-14s objective %.6f +- %.6f  feasible %d/%zu\n",
                        row.config.name.c_str(), row.objective.mean, row.objective.stddev,
                        row.feasible_count, seeds.size());
        }
    }
    std::printf("wrote comparison.{json,csv}, reductions.csv, series.csv under %s\n",
                opt.out_dir.c_str());
    return 0;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Service-chain placement with redundancy provisioning over "
                 "heterogeneous fog categories"};
    app.require_subcommand(1);

    GenerateOptions generate_options;
    auto* generate = app.add_subcommand("generate", "emit a dataset document");
    generate->add_option("--out", generate_options.out_path, "output path");
    generate->add_option("--seed", generate_options.seed, "generator seed");
    generate->add_flag("--paper-instance", generate_options.use_reference,
                       "the bundled reference instance");
    generate->add_option("--scale", generate_options.scale,
                         "divide reference node counts by this factor");
    generate->add_flag("--tiny", generate_options.tiny, "oracle-scale preset");
    generate->add_option("--categories", generate_options.categories, "category count (N or LO:HI)");
    generate->add_option("--sfcs", generate_options.sfcs, "SFC count (N or LO:HI)");
    generate->add_option("--chain-length", generate_options.chain_length,
                         "VNFs per SFC (N or LO:HI)");
    generate->add_option("--nodes", generate_options.nodes,
                         "nodes per category (N or LO:HI)");
    generate->add_option("--strategies", generate_options.strategies,
                         "restrict generated strategies (codes 1..4)");

    SolveOptions solve_options;
    auto* solve = app.add_subcommand("solve", "run one solver over a dataset");
    solve->add_option("--dataset", solve_options.dataset_path, "dataset path")->required();
    solve->add_option("--algorithm", solve_options.algorithm,
                      "gap-gaba | gap-raba | random | exact");
    solve->add_option("--seed", solve_options.seed, "single seed");
    solve->add_option("--seeds", solve_options.seeds_text, "comma-separated seed list");
    solve->add_option("--strategy-override", solve_options.strategy_override,
                      "force one backup strategy (1..4) on all SFCs")
        ->check(CLI::Range(1, 4));
    solve->add_option("--attempts", solve_options.attempts, "random baseline draw budget");
    solve->add_option("--max-evals", solve_options.max_evaluations, "exact solver cap");
    solve->add_option("--out", solve_options.out_dir, "output directory");
    solve_options.ga_options.attach(solve);

    EvaluateOptions evaluate_options;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "report on an externally built solution");
    evaluate_cmd->add_option("--dataset", evaluate_options.dataset_path, "dataset path")->required();
    evaluate_cmd->add_option("--solution", evaluate_options.solution_path, "solution path")
        ->required();
    evaluate_cmd->add_option("--out", evaluate_options.out_path, "report path (default stdout)");
    evaluate_options.ga_options.attach(evaluate_cmd);

    CompareOptions compare_options;
    auto* compare = app.add_subcommand("compare", "run several configurations over shared seeds");
    compare->add_option("--dataset", compare_options.dataset_path, "dataset path")->required();
    compare->add_option("--algorithms", compare_options.algorithms, "algorithms to compare")
        ->delimiter(',');
    compare->add_option("--strategy-overrides", compare_options.strategy_overrides,
                        "strategy codes to force (1..4)")
        ->delimiter(',');
    compare->add_option("--seeds", compare_options.seeds_text, "comma-separated seed list");
    compare->add_option("--attempts", compare_options.attempts, "random baseline draw budget");
    compare->add_option("--max-evals", compare_options.max_evaluations, "exact solver cap");
    compare->add_option("--out", compare_options.out_dir, "output directory");
    compare_options.ga_options.attach(compare);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (generate->parsed()) return cmd_generate(generate_options);
        if (solve->parsed()) return cmd_solve(solve_options);
        if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate_options);
        if (compare->parsed()) return cmd_compare(compare_options);
    } catch (const SolverRefusal& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

} // namespace sfcplace
