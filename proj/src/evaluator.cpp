#include "sfcplace/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sfcplace/reliability.hpp"

namespace sfcplace {

double sfc_delay(const Solution& solution, int sfc_index, const Infrastructure& infra,
                 const Workload& workload) {
    const SfcRequest& sfc = workload.sfcs[sfc_index];
    double delay = 0.0;
    for (int j = 0; j < sfc.length(); ++j) {
        const int i = solution.assignment[sfc_index][j];
        if (i == kUnassigned) continue;
        delay += sfc.loads[j] / infra.categories[i].clock;
    }
    return delay;
}

CapacityUsage capacity_usage(const Solution& solution, const Infrastructure& infra,
                             const Workload& workload) {
    CapacityUsage usage;
    usage.per_category.assign(infra.category_count(), 0);

    for (int k = 0; k < workload.sfc_count(); ++k) {
        const SfcRequest& sfc = workload.sfcs[k];
        std::vector<int> hosted(infra.category_count(), 0);
        for (int j = 0; j < sfc.length(); ++j) {
            const int i = solution.assignment[k][j];
            if (i == kUnassigned) continue;
            ++hosted[i];
            if (is_dedicated(sfc.strategy)) {
                usage.per_category[i] += solution.dedicated_backups[k][j];
            }
        }
        for (int i = 0; i < infra.category_count(); ++i) {
            usage.per_category[i] += hosted[i];
            if (is_shared(sfc.strategy) && hosted[i] > 0) {
                usage.per_category[i] += solution.shared_backups[k][i];
            }
        }
    }

    usage.violations = 0;
    for (int i = 0; i < infra.category_count(); ++i) {
        if (usage.per_category[i] > infra.categories[i].node_count) ++usage.violations;
    }
    usage.ok = usage.violations == 0;
    return usage;
}

NormalizationBounds normalization_bounds(const Infrastructure& infra, const Workload& workload) {
    if (workload.total_vnfs() > infra.total_nodes()) {
        throw DataError("instance infeasible: " + std::to_string(workload.total_vnfs()) +
                        " VNFs exceed " + std::to_string(infra.total_nodes()) + " nodes");
    }

    double fastest = 0.0;
    double slowest = std::numeric_limits<double>::infinity();
    double cheapest_active = std::numeric_limits<double>::infinity();
    double all_active_cost = 0.0;
    for (const auto& c : infra.categories) {
        fastest = std::max(fastest, c.clock);
        slowest = std::min(slowest, c.clock);
        cheapest_active = std::min(cheapest_active, c.cost_active);
        all_active_cost += static_cast<double>(c.node_count) * c.cost_active;
    }

    double total_load = 0.0;
    for (const auto& s : workload.sfcs) {
        for (double l : s.loads) total_load += l;
    }

    NormalizationBounds b;
    b.tau_min = total_load / fastest;
    b.tau_max = total_load / slowest;
    b.p_min = static_cast<double>(workload.total_vnfs()) * cheapest_active;
    b.p_max = all_active_cost;
    return b;
}

EvaluationReport evaluate(const Solution& solution, const Infrastructure& infra,
                          const Workload& workload, const ObjectiveConfig& cfg,
                          const NormalizationBounds& bounds) {
    EvaluationReport report;
    report.per_sfc.resize(workload.sfc_count());

    for (int k = 0; k < workload.sfc_count(); ++k) {
        const SfcRequest& sfc = workload.sfcs[k];
        SfcMetrics& m = report.per_sfc[k];
        for (int j = 0; j < sfc.length(); ++j) {
            if (solution.assignment[k][j] == kUnassigned) ++report.missing_vnfs;
        }
        m.reliability = sfc_reliability(solution, k, infra, workload, cfg);
        m.delay = sfc_delay(solution, k, infra, workload);
        m.cost = sfc_cost(solution, k, infra, workload);
        m.reliability_ok = reliability_met(m.reliability, sfc.reliability_target);
        m.deadline_ok = deadline_met(m.delay, sfc.deadline);
        if (!m.reliability_ok) ++report.reliability_violations;
        if (!m.deadline_ok) ++report.deadline_violations;
        report.total_cost += m.cost;
        report.total_delay += m.delay;
    }

    const CapacityUsage usage = capacity_usage(solution, infra, workload);
    report.per_category_usage = usage.per_category;
    report.capacity_ok = usage.ok;
    report.capacity_violations = usage.violations;
    report.placement_complete = report.missing_vnfs == 0;

    report.penalty_count = report.missing_vnfs + report.reliability_violations +
                           report.deadline_violations + report.capacity_violations;

    // Unplaced VNFs are billed at the pessimistic completion bound (priciest
    // category, slowest clock) inside the normalized terms, so that dropping
    // a VNF can never score better than hosting it. Flags and the true
    // per-SFC totals above stay untouched.
    double phantom_cost = 0.0;
    double phantom_delay = 0.0;
    if (report.missing_vnfs > 0) {
        double max_price = 0.0;
        double min_clock = std::numeric_limits<double>::infinity();
        for (const auto& c : infra.categories) {
            max_price = std::max(max_price, c.cost_active);
            min_clock = std::min(min_clock, c.clock);
        }
        for (int k = 0; k < workload.sfc_count(); ++k) {
            for (int j = 0; j < workload.sfcs[k].length(); ++j) {
                if (solution.assignment[k][j] == kUnassigned) {
                    phantom_cost += max_price;
                    phantom_delay += workload.sfcs[k].loads[j] / min_clock;
                }
            }
        }
    }

    report.normalized_delay =
        bounds.tau_max > 0.0
            ? (report.total_delay + phantom_delay - bounds.tau_min) / bounds.tau_max
            : 0.0;
    report.normalized_cost =
        bounds.p_max > 0.0 ? (report.total_cost + phantom_cost - bounds.p_min) / bounds.p_max
                           : 0.0;
    report.objective = cfg.alpha * report.normalized_cost + cfg.beta * report.normalized_delay;

    const double base = cfg.raw_fitness
                            ? cfg.alpha * report.total_cost + cfg.beta * report.total_delay
                            : report.objective;
    report.fitness = base + cfg.penalty_weight * report.penalty_count;
    return report;
}

void check_solution_shape(const Solution& solution, const Infrastructure& infra,
                          const Workload& workload) {
    const int m = infra.category_count();
    const auto where = [](const char* family, int k, int j) {
        return std::string("solution.") + family + "[" + std::to_string(k) + "][" +
               std::to_string(j) + "]";
    };

    if (static_cast<int>(solution.assignment.size()) != workload.sfc_count() ||
        static_cast<int>(solution.dedicated_backups.size()) != workload.sfc_count() ||
        static_cast<int>(solution.shared_backups.size()) != workload.sfc_count()) {
        throw DataError("solution: expected " + std::to_string(workload.sfc_count()) +
                        " per-SFC entries in every family");
    }

    for (int k = 0; k < workload.sfc_count(); ++k) {
        const SfcRequest& sfc = workload.sfcs[k];
        if (static_cast<int>(solution.assignment[k].size()) != sfc.length())
            throw DataError("solution.assignment[" + std::to_string(k) + "]: expected " +
                            std::to_string(sfc.length()) + " entries");
        if (static_cast<int>(solution.dedicated_backups[k].size()) != sfc.length())
            throw DataError("solution.dedicated_backups[" + std::to_string(k) +
                            "]: expected " + std::to_string(sfc.length()) + " entries");
        if (static_cast<int>(solution.shared_backups[k].size()) != m)
            throw DataError("solution.shared_backups[" + std::to_string(k) + "]: expected " +
                            std::to_string(m) + " entries (one per category)");

        std::vector<int> hosted(m, 0);
        for (int j = 0; j < sfc.length(); ++j) {
            const int cat = solution.assignment[k][j];
            if (cat == kUnassigned)
                throw DataError(where("assignment", k, j) + ": VNF is unassigned");
            if (cat < 0 || cat >= m)
                throw DataError(where("assignment", k, j) + ": category index " +
                                std::to_string(cat + 1) + " out of range 1.." + std::to_string(m));
            ++hosted[cat];
            const int b = solution.dedicated_backups[k][j];
            if (b < 0)
                throw DataError(where("dedicated_backups", k, j) + ": negative count");
            if (b > 0 && !is_dedicated(sfc.strategy))
                throw DataError(where("dedicated_backups", k, j) +
                                ": dedicated backups under a shared strategy");
        }
        for (int i = 0; i < m; ++i) {
            const int pool = solution.shared_backups[k][i];
            if (pool < 0) throw DataError(where("shared_backups", k, i) + ": negative count");
            if (pool > 0 && !is_shared(sfc.strategy))
                throw DataError(where("shared_backups", k, i) +
                                ": shared backups under a dedicated strategy");
            if (pool > 0 && hosted[i] == 0)
                throw DataError(where("shared_backups", k, i) +
                                ": pool in a category hosting none of the SFC's VNFs");
        }
    }
}

std::vector<std::string> audit_feasibility(const Solution& solution, const Infrastructure& infra,
                                           const Workload& workload, const ObjectiveConfig& cfg) {
    std::vector<std::string> violations;
    try {
        check_solution_shape(solution, infra, workload);
    } catch (const DataError& e) {
        violations.emplace_back(e.what());
        return violations;
    }

    // Capacity, recounted from scratch.
    std::vector<long long> used(infra.category_count(), 0);
    for (int k = 0; k < workload.sfc_count(); ++k) {
        const SfcRequest& sfc = workload.sfcs[k];
        for (int j = 0; j < sfc.length(); ++j) {
            const int i = solution.assignment[k][j];
            used[i] += 1;
            if (is_dedicated(sfc.strategy)) used[i] += solution.dedicated_backups[k][j];
        }
        if (is_shared(sfc.strategy)) {
            for (int i = 0; i < infra.category_count(); ++i) used[i] += solution.shared_backups[k][i];
        }
    }
    for (int i = 0; i < infra.category_count(); ++i) {
        if (used[i] > infra.categories[i].node_count) {
            violations.push_back("category " + std::to_string(i + 1) + ": " +
                                 std::to_string(used[i]) + " nodes used, only " +
                                 std::to_string(infra.categories[i].node_count) + " available");
        }
    }

    // The Markov route agrees with the closed forms to ~1e-9; allow that
    // much slack on top of the constraint tolerance.
    const double markov_slack = 2e-9;
    for (int k = 0; k < workload.sfc_count(); ++k) {
        const SfcRequest& sfc = workload.sfcs[k];
        const double t = cfg.holding_time;

        double omega = 1.0;
        if (is_dedicated(sfc.strategy)) {
            for (int j = 0; j < sfc.length(); ++j) {
                const NodeCategory& cat = infra.categories[solution.assignment[k][j]];
                const int b = solution.dedicated_backups[k][j];
                if (sfc.strategy == BackupStrategy::DedicatedStandby) {
                    omega *= markov_group_reliability({1, b, cat.fail_active, cat.fail_standby, t});
                } else {
                    omega *= rel_dedicated_active(b, failure_cdf(cat.fail_active, t));
                }
            }
        } else {
            std::vector<int> hosted(infra.category_count(), 0);
            for (int j = 0; j < sfc.length(); ++j) ++hosted[solution.assignment[k][j]];
            for (int i = 0; i < infra.category_count(); ++i) {
                if (hosted[i] == 0) continue;
                const NodeCategory& cat = infra.categories[i];
                const int pool = solution.shared_backups[k][i];
                if (sfc.strategy == BackupStrategy::SharedStandby) {
                    omega *= markov_group_reliability(
                        {hosted[i], pool, cat.fail_active, cat.fail_standby, t});
                } else {
                    omega *= rel_shared_active(hosted[i], pool, failure_cdf(cat.fail_active, t));
                }
            }
        }
        if (omega < sfc.reliability_target - kConstraintTolerance - markov_slack) {
            violations.push_back("sfc " + std::to_string(k + 1) + ": reliability " +
                                 std::to_string(omega) + " below target " +
                                 std::to_string(sfc.reliability_target));
        }

        double delay = 0.0;
        for (int j = 0; j < sfc.length(); ++j) {
            delay += sfc.loads[j] / infra.categories[solution.assignment[k][j]].clock;
        }
        if (delay > sfc.deadline + kConstraintTolerance) {
            violations.push_back("sfc " + std::to_string(k + 1) + ": delay " +
                                 std::to_string(delay) + " exceeds deadline " +
                                 std::to_string(sfc.deadline));
        }
    }
    return violations;
}

} // namespace sfcplace
