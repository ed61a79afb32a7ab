// Solvers: the GA engine with its two chromosome encodings, the random
// baseline, and the exhaustive oracle for tiny instances.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sfcplace/evaluator.hpp"
#include "sfcplace/model.hpp"
#include "sfcplace/rng.hpp"

namespace sfcplace {

struct GaConfig {
    int generations = 2000;
    int population = 400;
    int crossovers_per_generation = 380; // offspring per generation
    int elites = 100;
    double mutation_rate = 0.10; // expected fraction of genes disturbed per offspring
    int tournament_size = 7;
    std::uint64_t seed = 0;
    int threads = 0; // 0 = SFC_THREADS env, then hardware

    void validate() const;
};

enum class Encoding { GapGaba, GapRaba };

struct SolveResult {
    Solution best_solution;
    EvaluationReport best_report;
    std::vector<double> fitness_history; // initial population + one per generation
    double wall_time_seconds = 0.0;
    std::uint64_t seed = 0;
    bool optimal = false; // set by the exhaustive solver only

    bool feasible() const { return best_report.feasible(); }
};

// --- GA primitives -------------------------------------------------------

// Index of the minimum-fitness member among `tournament_size` draws with
// replacement.
int tournament_select(const std::vector<double>& fitness, int tournament_size, Rng& rng);

// Swap the segment [cut_a, cut_b) between two equal-length gene vectors.
void crossover_segment(std::vector<int>& a, std::vector<int>& b, int cut_a, int cut_b);

// Two distinct cut points drawn uniformly from 0..length.
std::pair<std::vector<int>, std::vector<int>> two_point_crossover(const std::vector<int>& parent_a,
                                                                  const std::vector<int>& parent_b,
                                                                  Rng& rng);

// With probability `rate`, exchange one uniformly chosen pair of genes.
void swap_mutation(std::vector<int>& genes, double rate, Rng& rng);

// --- Encodings -----------------------------------------------------------

// Node-indexed genome: one gene per physical node, grouped by category;
// 0 = idle, v = hosts the VNF with global index v (primary or backup).
struct GabaDecodeResult {
    Solution solution;
    std::vector<int> missing; // global VNF indices absent from the genome
};

enum class DuplicateResolution {
    MajorityCategory, // deterministic: most copies win, ties to the lowest index
    LowestCategory,   // pinned choice for reproducible unit fixtures
};

enum class SurplusPolicy {
    KeepAll,     // every same-category duplicate serves as a backup
    TrimToNeed,  // deactivate backups beyond each SFC's reliability target
};

GabaDecodeResult gaba_decode(const std::vector<int>& genes, const Infrastructure& infra,
                             const Workload& workload, const ObjectiveConfig& cfg,
                             DuplicateResolution duplicates = DuplicateResolution::MajorityCategory,
                             SurplusPolicy surplus = SurplusPolicy::KeepAll);

double gaba_fitness(const std::vector<int>& genes, const Infrastructure& infra,
                    const Workload& workload, const ObjectiveConfig& cfg,
                    const NormalizationBounds& bounds,
                    SurplusPolicy surplus = SurplusPolicy::KeepAll);

// VNF-indexed genome: one gene per VNF holding its category; backups are
// assigned greedily in a random SFC priority order until each target is
// met or free nodes run out.
struct RabaDecodeResult {
    Solution solution;
    int unmet_reliability = 0; // SFCs whose target was not reached
};

RabaDecodeResult raba_decode(const std::vector<int>& genes, const Infrastructure& infra,
                             const Workload& workload, const ObjectiveConfig& cfg, Rng& rng);

double raba_fitness(const std::vector<int>& genes, const Infrastructure& infra,
                    const Workload& workload, const ObjectiveConfig& cfg,
                    const NormalizationBounds& bounds, Rng& rng);

// --- Whole-run entry points ----------------------------------------------

SolveResult run_ga(Encoding encoding, const Infrastructure& infra, const Workload& workload,
                   const ObjectiveConfig& cfg, const GaConfig& ga);

// Rejection-sampling baseline: uniform placements with randomized backup
// assignment; returns the first feasible draw, or the best-penalized draw
// after `attempts`.
SolveResult random_baseline(const Infrastructure& infra, const Workload& workload,
                            const ObjectiveConfig& cfg, int attempts, std::uint64_t seed);

struct ExhaustiveLimits {
    unsigned long long max_evaluations = 10'000'000ULL;
};

// Raised when the enumeration would exceed the configured cap.
class SolverRefusal : public std::runtime_error {
public:
    SolverRefusal(const std::string& message, unsigned long long size, bool size_is_exact)
        : std::runtime_error(message), search_space_size(size), exact(size_is_exact) {}

    unsigned long long search_space_size;
    bool exact; // false when counting stopped early at the cap
};

// Enumerates every placement and every capacity-respecting backup vector;
// returns the global fitness minimizer (ties: lexicographically smallest
// encoding).
SolveResult exhaustive_solve(const Infrastructure& infra, const Workload& workload,
                             const ObjectiveConfig& cfg, const ExhaustiveLimits& limits = {});

} // namespace sfcplace
