// Whole-workload evaluation: delay, capacity accounting, objective
// normalization and the penalized fitness shared by every solver.
#pragma once

#include <string>
#include <vector>

#include "sfcplace/model.hpp"

namespace sfcplace {

struct NormalizationBounds {
    double tau_min = 0.0;
    double tau_max = 0.0;
    double p_min = 0.0;
    double p_max = 0.0;
};

struct SfcMetrics {
    double reliability = 0.0;
    double delay = 0.0;
    double cost = 0.0;
    bool reliability_ok = false;
    bool deadline_ok = false;
};

struct EvaluationReport {
    std::vector<SfcMetrics> per_sfc;
    std::vector<int> per_category_usage;
    bool capacity_ok = false;
    bool placement_complete = false;

    int missing_vnfs = 0;
    int reliability_violations = 0;
    int deadline_violations = 0;
    int capacity_violations = 0; // overloaded categories
    int penalty_count = 0;       // sum of the four counts above

    double total_cost = 0.0;
    double total_delay = 0.0;
    double normalized_cost = 0.0;
    double normalized_delay = 0.0;
    double objective = 0.0; // alpha * normalized_cost + beta * normalized_delay
    double fitness = 0.0;   // objective (or raw weighted totals) + gamma * penalty_count

    bool feasible() const { return penalty_count == 0; }
};

// Comparisons against targets absorb float noise with a fixed absolute
// tolerance so constraint flags cannot flip at exact equality.
inline constexpr double kConstraintTolerance = 1e-12;
inline bool reliability_met(double value, double target) {
    return value >= target - kConstraintTolerance;
}
inline bool deadline_met(double delay, double deadline) {
    return delay <= deadline + kConstraintTolerance;
}

// Execution delay of one SFC over its assigned categories. Unassigned
// VNFs contribute nothing (they are counted as missing elsewhere).
double sfc_delay(const Solution& solution, int sfc_index, const Infrastructure& infra,
                 const Workload& workload);

struct CapacityUsage {
    std::vector<int> per_category; // primaries + dedicated backups + gated shared pools
    bool ok = false;
    int violations = 0; // overloaded categories
};

CapacityUsage capacity_usage(const Solution& solution, const Infrastructure& infra,
                             const Workload& workload);

// Analytic bounds: fastest/slowest category for delay, cheapest zero-backup
// placement for p_min, every node active for p_max. Not tight, but ordered
// below/above any capacity-respecting placement, which is all the
// normalization needs. Throws DataError when the instance cannot host the
// primaries at all (total VNFs exceed total nodes).
NormalizationBounds normalization_bounds(const Infrastructure& infra, const Workload& workload);

EvaluationReport evaluate(const Solution& solution, const Infrastructure& infra,
                          const Workload& workload, const ObjectiveConfig& cfg,
                          const NormalizationBounds& bounds);

// Structural checks on externally supplied solutions: shapes, category
// ranges, non-negative backups, backup family matching each strategy,
// no shared pool in a category hosting none of the SFC's VNFs.
// Throws DataError naming the offending position.
void check_solution_shape(const Solution& solution, const Infrastructure& infra,
                          const Workload& workload);

// Independent feasibility audit: recounts capacity, recomputes delay and
// reliability from scratch (standby strategies through the Markov route
// rather than the closed forms). Returns human-readable violations;
// empty means the solution honours every constraint.
std::vector<std::string> audit_feasibility(const Solution& solution, const Infrastructure& infra,
                                           const Workload& workload, const ObjectiveConfig& cfg);

} // namespace sfcplace
