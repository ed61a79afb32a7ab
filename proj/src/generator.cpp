// Random instance generator. Draw order is fixed (categories first, then
// SFCs, field by field) so a seed pins the instance byte-for-byte.
#include "sfcplace/model.hpp"
#include "sfcplace/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sfcplace {

namespace {

void check_range(const IntRange& r, const char* name, int min_lo) {
    if (r.lo > r.hi)
        throw std::invalid_argument(std::string("generator: empty range for ") + name);
    if (r.lo < min_lo)
        throw std::invalid_argument(std::string("generator: ") + name + " below " +
                                    std::to_string(min_lo));
}

void check_range(const RealRange& r, const char* name, double min_lo) {
    if (r.lo > r.hi)
        throw std::invalid_argument(std::string("generator: empty range for ") + name);
    if (r.lo < min_lo) throw std::invalid_argument(std::string("generator: ") + name + " too low");
}

} // namespace

void GeneratorSpec::validate() const {
    check_range(categories, "categories", 1);
    check_range(nodes_per_category, "nodes_per_category", 1);
    check_range(clock, "clock", 1);
    check_range(cost_active, "cost_active", 0.0);
    check_range(fail_active, "fail_active", 0.0);
    check_range(sfc_count, "sfc_count", 1);
    check_range(chain_length, "chain_length", 1);
    check_range(load, "load", 1);
    check_range(deadline, "deadline", 0.0);
    if (deadline.lo <= 0.0) throw std::invalid_argument("generator: deadline must be > 0");
    if (standby_cost_ratio <= 0.0 || standby_cost_ratio > 1.0)
        throw std::invalid_argument("generator: standby_cost_ratio must be in (0,1]");
    if (standby_fail_ratio <= 0.0 || standby_fail_ratio > 1.0)
        throw std::invalid_argument("generator: standby_fail_ratio must be in (0,1]");
    if (reliability_levels.empty())
        throw std::invalid_argument("generator: reliability_levels must be non-empty");
    for (double r : reliability_levels) {
        if (r <= 0.0 || r >= 1.0)
            throw std::invalid_argument("generator: reliability level outside (0,1)");
    }
    if (strategies.empty())
        throw std::invalid_argument("generator: strategies must be non-empty");
    for (int s : strategies) {
        if (s < 1 || s > 4)
            throw std::invalid_argument("generator: strategy code outside 1..4");
    }
}

GeneratorSpec GeneratorSpec::tiny() {
    GeneratorSpec spec;
    spec.categories = {2, 2};
    spec.nodes_per_category = {3, 4};
    spec.sfc_count = {1, 1};
    spec.chain_length = {2, 2};
    spec.reliability_levels = {0.99, 0.999, 0.9999};
    return spec;
}

GeneratedInstance generate_dataset(const GeneratorSpec& spec, std::uint64_t seed) {
    spec.validate();
    Rng rng(seed);

    GeneratedInstance out;
    const int m = static_cast<int>(rng.uniform_int(spec.categories.lo, spec.categories.hi));
    for (int i = 0; i < m; ++i) {
        NodeCategory cat;
        cat.node_count = static_cast<int>(
            rng.uniform_int(spec.nodes_per_category.lo, spec.nodes_per_category.hi));
        cat.clock = static_cast<double>(rng.uniform_int(spec.clock.lo, spec.clock.hi));
        cat.cost_active = rng.uniform(spec.cost_active.lo, spec.cost_active.hi);
        cat.cost_standby = cat.cost_active * spec.standby_cost_ratio;
        cat.fail_active = rng.uniform(spec.fail_active.lo, spec.fail_active.hi);
        cat.fail_standby = cat.fail_active * spec.standby_fail_ratio;
        out.infrastructure.categories.push_back(cat);
    }

    double fastest = 0.0;
    for (const auto& cat : out.infrastructure.categories) fastest = std::max(fastest, cat.clock);

    const int k = static_cast<int>(rng.uniform_int(spec.sfc_count.lo, spec.sfc_count.hi));
    for (int s = 0; s < k; ++s) {
        SfcRequest sfc;
        const int n = static_cast<int>(rng.uniform_int(spec.chain_length.lo, spec.chain_length.hi));
        double total_load = 0.0;
        for (int j = 0; j < n; ++j) {
            sfc.loads.push_back(
                static_cast<double>(rng.uniform_int(spec.load.lo, spec.load.hi)));
            total_load += sfc.loads.back();
        }
        // Deadlines are drawn from the structurally satisfiable part of the
        // range: below total_load / fastest clock no placement can ever
        // meet them, and a 25% headroom leaves room for placements that
        // cannot monopolize the fastest category.
        const double min_delay = 1.25 * total_load / fastest;
        const double deadline_lo = std::max(spec.deadline.lo, min_delay);
        sfc.deadline = deadline_lo > spec.deadline.hi
                           ? rng.uniform(min_delay, 1.5 * min_delay)
                           : rng.uniform(deadline_lo, spec.deadline.hi);
        sfc.reliability_target =
            spec.reliability_levels[rng.pick_index(spec.reliability_levels.size())];
        sfc.strategy = strategy_from_code(spec.strategies[rng.pick_index(spec.strategies.size())]);
        out.workload.sfcs.push_back(std::move(sfc));
    }

    validate(out.infrastructure);
    validate(out.workload);
    return out;
}

Dataset reference_instance(int node_scale_divisor) {
    if (node_scale_divisor < 1)
        throw std::invalid_argument("reference instance: scale divisor must be >= 1");

    Dataset d;
    const int counts[3] = {200, 300, 300};
    const double clocks[3] = {5, 4, 1};
    const double cost_a[3] = {25, 20, 5};
    const double cost_s[3] = {2.5, 2, 0.5};
    const double fail_a[3] = {0.008, 0.01, 0.04};
    const double fail_s[3] = {0.0008, 0.001, 0.004};
    for (int i = 0; i < 3; ++i) {
        NodeCategory cat;
        cat.node_count = counts[i] / node_scale_divisor;
        if (cat.node_count < 1)
            throw std::invalid_argument("reference instance: scale divisor too large");
        cat.clock = clocks[i];
        cat.cost_active = cost_a[i];
        cat.cost_standby = cost_s[i];
        cat.fail_active = fail_a[i];
        cat.fail_standby = fail_s[i];
        d.infrastructure.categories.push_back(cat);
    }

    // Workload drawn from the default ranges at a pinned seed: ten SFCs,
    // chains mostly of length five (43 VNFs, lengths 5,4,5,2,5,5,4,4,4,5),
    // targets from {0.99, 0.999}, all four strategies present.
    GeneratorSpec spec;
    spec.sfc_count = {10, 10};
    spec.reliability_levels = {0.99, 0.999};
    d.workload = generate_dataset(spec, /*seed=*/322ULL).workload;

    d.objective.alpha = 0.65;
    d.objective.beta = 0.35;
    d.objective.penalty_weight = 1000.0;
    d.objective.holding_time = 1.0;
    return d;
}

} // namespace sfcplace
