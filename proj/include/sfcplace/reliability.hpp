// Reliability and cost kernels for the four backup strategies, plus the
// numerical oracles (Markov transient analysis, Monte-Carlo simulation)
// used to validate the closed forms.
#pragma once

#include <cstdint>

#include "sfcplace/model.hpp"

namespace sfcplace {

// A redundancy group: `primaries` nodes serving in active mode plus
// `backups` warm-standby nodes that fail at fail_standby until promoted.
// Active-mode groups are the special case fail_standby == fail_active.
struct GroupSpec {
    int primaries = 1;
    int backups = 0;
    double fail_active = 0.0;
    double fail_standby = 0.0;
    double horizon = 1.0;
};

// Exponential failure CDF 1 - exp(-rate * t). Throws on t < 0 or rate < 0.
double failure_cdf(double rate, double t);

// One VNF with b always-on replicas: 1 - F^(b+1).
double rel_dedicated_active(int backups, double failure_prob);

// One VNF with b warm-standby replicas. spec.primaries must be 1.
double rel_dedicated_standby(const GroupSpec& spec);

// Pool of primaries+backups active nodes; survives while at least
// `primaries` of them are up (binomial tail).
double rel_shared_active(int primaries, int backups, double failure_prob);

// Pool with warm standbys promoted on failure; survives while at least
// `primaries` nodes remain operational.
double rel_shared_standby(const GroupSpec& spec);

// Exact transient analysis of the group's failure-count chain
// (uniformization). Independent route used as an oracle and as the
// fallback when the closed form is numerically unusable.
double markov_group_reliability(const GroupSpec& spec);

// Per-node lifetime simulation with standby->active rate switching at
// replacement instants. Deterministic per seed.
double mc_group_reliability(const GroupSpec& spec, long long trials, std::uint64_t seed);

// Reliability of one SFC under its strategy: product over VNFs (dedicated)
// or over categories hosting its VNFs (shared). Unassigned VNFs are
// skipped; completeness is accounted separately by the evaluator.
double sfc_reliability(const Solution& solution, int sfc_index, const Infrastructure& infra,
                       const Workload& workload, const ObjectiveConfig& cfg);

// Deployment cost of one SFC including backups, per its strategy.
double sfc_cost(const Solution& solution, int sfc_index, const Infrastructure& infra,
                const Workload& workload);

} // namespace sfcplace
