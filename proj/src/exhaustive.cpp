// Exact oracle: full enumeration of placements and capacity-respecting
// backup vectors. Only viable for tiny instances; refuses past a cap.
#include "sfcplace/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <string>

namespace sfcplace {

namespace {

constexpr unsigned long long kSaturated = ~0ULL;

unsigned long long sat_mul(unsigned long long a, unsigned long long b) {
    unsigned long long out;
    if (__builtin_mul_overflow(a, b, &out)) return kSaturated;
    return out;
}

unsigned long long sat_add(unsigned long long a, unsigned long long b) {
    unsigned long long out;
    if (__builtin_add_overflow(a, b, &out)) return kSaturated;
    return out;
}

// C(budget + vars, vars): number of ways to spend at most `budget` backup
// nodes across `vars` counters.
unsigned long long sat_combinations(unsigned long long budget, unsigned long long vars) {
    unsigned long long result = 1;
    for (unsigned long long i = 1; i <= vars; ++i) {
        result = sat_mul(result, budget + i);
        if (result == kSaturated) return kSaturated;
        result /= i; // exact: result stays an integer after each step
    }
    return result;
}

// One backup counter: dedicated -> (sfc, vnf), shared -> (sfc, category).
struct BackupVar {
    int sfc;
    int index;
    int category;
    bool shared;
};

struct Enumerator {
    const Infrastructure& infra;
    const Workload& workload;
    const ObjectiveConfig& cfg;
    const NormalizationBounds& bounds;

    std::vector<int> placement; // category digit per global VNF
    Solution solution;
    std::vector<BackupVar> vars;
    std::vector<int> free_nodes;

    unsigned long long evaluations = 0;
    bool have_best = false;
    double best_fitness = 0.0;
    Solution best_solution;
    EvaluationReport best_report;

    Enumerator(const Infrastructure& infra_, const Workload& workload_,
               const ObjectiveConfig& cfg_, const NormalizationBounds& bounds_)
        : infra(infra_), workload(workload_), cfg(cfg_), bounds(bounds_),
          placement(workload_.total_vnfs(), 0),
          solution(Solution::zero(workload_, infra_.category_count())),
          free_nodes(infra_.category_count(), 0) {}

    // Load the current placement digits into the solution and derive the
    // per-category budgets and backup variables, in the canonical order
    // used for lexicographic tie-breaking.
    void prepare_placement() {
        std::vector<int> primaries(infra.category_count(), 0);
        for (int v = 0; v < workload.total_vnfs(); ++v) {
            const auto [k, j] = workload.vnf_at(v);
            solution.assignment[k][j] = placement[v];
            ++primaries[placement[v]];
        }
        for (int i = 0; i < infra.category_count(); ++i) {
            free_nodes[i] = std::max(0, infra.categories[i].node_count - primaries[i]);
        }

        // Variable order fixes the tie-break: dedicated counters in (sfc,
        // vnf) order first, then shared pools in (sfc, category) order.
        vars.clear();
        for (int k = 0; k < workload.sfc_count(); ++k) {
            const SfcRequest& sfc = workload.sfcs[k];
            if (!is_dedicated(sfc.strategy)) continue;
            for (int j = 0; j < sfc.length(); ++j) {
                vars.push_back({k, j, solution.assignment[k][j], false});
                solution.dedicated_backups[k][j] = 0;
            }
        }
        for (int k = 0; k < workload.sfc_count(); ++k) {
            const SfcRequest& sfc = workload.sfcs[k];
            if (is_dedicated(sfc.strategy)) continue;
            std::vector<bool> hosted(infra.category_count(), false);
            for (int j = 0; j < sfc.length(); ++j) hosted[solution.assignment[k][j]] = true;
            for (int i = 0; i < infra.category_count(); ++i) {
                solution.shared_backups[k][i] = 0;
                if (hosted[i]) vars.push_back({k, i, i, true});
            }
        }
    }

    unsigned long long placement_combinations() const {
        std::vector<unsigned long long> vars_per_category(infra.category_count(), 0);
        for (const auto& var : vars) ++vars_per_category[var.category];
        unsigned long long combos = 1;
        for (int i = 0; i < infra.category_count(); ++i) {
            combos = sat_mul(combos, sat_combinations(free_nodes[i], vars_per_category[i]));
        }
        return combos;
    }

    void descend(std::size_t depth) {
        if (depth == vars.size()) {
            ++evaluations;
            EvaluationReport report = evaluate(solution, infra, workload, cfg, bounds);
            if (!have_best || report.fitness < best_fitness) {
                have_best = true;
                best_fitness = report.fitness;
                best_solution = solution;
                best_report = std::move(report);
            }
            return;
        }
        const BackupVar& var = vars[depth];
        int& counter = var.shared ? solution.shared_backups[var.sfc][var.index]
                                  : solution.dedicated_backups[var.sfc][var.index];
        const int budget = free_nodes[var.category];
        for (int count = 0; count <= budget; ++count) {
            counter = count;
            free_nodes[var.category] = budget - count;
            descend(depth + 1);
        }
        counter = 0;
        free_nodes[var.category] = budget;
    }

    bool next_placement() {
        const int m = infra.category_count();
        for (int v = workload.total_vnfs() - 1; v >= 0; --v) {
            if (++placement[v] < m) return true;
            placement[v] = 0;
        }
        return false;
    }
};

} // namespace

SolveResult exhaustive_solve(const Infrastructure& infra, const Workload& workload,
                             const ObjectiveConfig& cfg, const ExhaustiveLimits& limits) {
    const NormalizationBounds bounds = normalization_bounds(infra, workload);
    const auto started = std::chrono::steady_clock::now();
    const int m = infra.category_count();

    unsigned long long placements = 1;
    for (int v = 0; v < workload.total_vnfs(); ++v) {
        placements = sat_mul(placements, static_cast<unsigned long long>(m));
    }
    if (placements > limits.max_evaluations) {
        throw SolverRefusal("exhaustive: at least " + std::to_string(placements) +
                                " placements exceed the cap of " +
                                std::to_string(limits.max_evaluations),
                            placements, false);
    }

    // Count pass: exact search-space size without evaluating anything.
    Enumerator counter(infra, workload, cfg, bounds);
    unsigned long long total = 0;
    do {
        counter.prepare_placement();
        total = sat_add(total, counter.placement_combinations());
    } while (counter.next_placement());
    if (total > limits.max_evaluations) {
        throw SolverRefusal("exhaustive: search space of " + std::to_string(total) +
                                " candidates exceeds the cap of " +
                                std::to_string(limits.max_evaluations),
                            total, total != kSaturated);
    }

    Enumerator search(infra, workload, cfg, bounds);
    do {
        search.prepare_placement();
        search.descend(0);
    } while (search.next_placement());

    SolveResult result;
    result.best_solution = std::move(search.best_solution);
    result.best_report = std::move(search.best_report);
    result.fitness_history.push_back(search.best_fitness);
    result.optimal = true;
    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

} // namespace sfcplace
