// Command-line surface (generate / solve / evaluate / compare) plus the
// comparison machinery, reusable from tests.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfcplace/model.hpp"
#include "sfcplace/solvers.hpp"

namespace sfcplace {

enum class Algorithm { GapGaba, GapRaba, Random, Exact };

Algorithm algorithm_from_name(const std::string& name); // throws std::invalid_argument
std::string algorithm_name(Algorithm algorithm);

// One solver invocation: strategy override (0 = keep the dataset's mix)
// applied to every SFC before solving.
SolveResult run_algorithm(Algorithm algorithm, const Dataset& dataset, int strategy_override,
                          const GaConfig& ga, int baseline_attempts,
                          const ExhaustiveLimits& limits);

struct CompareConfig {
    std::string name;
    Algorithm algorithm = Algorithm::GapGaba;
    int strategy_override = 0;
};

struct MetricSummary {
    std::vector<double> values; // one per seed
    double mean = 0.0;
    double stddev = 0.0; // sample stddev, 0 for a single seed
};

struct CompareRow {
    CompareConfig config;
    MetricSummary objective;
    MetricSummary normalized_cost;
    MetricSummary normalized_delay;
    MetricSummary fitness;
    int feasible_count = 0;
    std::vector<std::vector<double>> histories; // per seed
    std::string error; // non-empty when this configuration failed to run
};

struct Reduction {
    std::string baseline;
    std::string candidate;
    double percent = 0.0; // (baseline - candidate) / baseline * 100, over mean objective
};

struct ComparisonOutcome {
    std::vector<CompareRow> rows;
    std::vector<Reduction> reductions;
    std::vector<std::uint64_t> seeds;
};

// Runs every configuration over the shared seed list. Per-configuration
// failures are reported on the row-by-row summary without aborting the
// remaining configurations.
ComparisonOutcome run_comparison(const Dataset& dataset, const std::vector<CompareConfig>& configs,
                                 const std::vector<std::uint64_t>& seeds, const GaConfig& ga,
                                 int baseline_attempts, const ExhaustiveLimits& limits);

double mean_of(const std::vector<double>& values);
double stddev_of(const std::vector<double>& values);

// Exit codes: 0 success, 2 usage error, 3 data error, 4 solver refusal.
int run_cli(int argc, char** argv);

} // namespace sfcplace
