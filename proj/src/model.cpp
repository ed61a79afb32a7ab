#include "sfcplace/model.hpp"

#include <string>

namespace sfcplace {

namespace {

std::string cat_field(int index, const char* field) {
    return "infrastructure[" + std::to_string(index) + "]." + field;
}

std::string sfc_field(int index, const char* field) {
    return "workload[" + std::to_string(index) + "]." + field;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw DataError(message);
}

} // namespace

BackupStrategy strategy_from_code(int code) {
    if (code < 1 || code > 4) {
        throw DataError("strategy code " + std::to_string(code) + " outside 1..4");
    }
    return static_cast<BackupStrategy>(code);
}

int Infrastructure::total_nodes() const {
    int total = 0;
    for (const auto& c : categories) total += c.node_count;
    return total;
}

int Workload::total_vnfs() const {
    int total = 0;
    for (const auto& s : sfcs) total += s.length();
    return total;
}

int Workload::global_index(int sfc, int vnf) const {
    int base = 0;
    for (int k = 0; k < sfc; ++k) base += sfcs[k].length();
    return base + vnf;
}

std::pair<int, int> Workload::vnf_at(int global) const {
    int k = 0;
    while (global >= sfcs[k].length()) {
        global -= sfcs[k].length();
        ++k;
    }
    return {k, global};
}

Solution Solution::zero(const Workload& workload, int category_count) {
    Solution s;
    s.assignment.reserve(workload.sfc_count());
    s.dedicated_backups.reserve(workload.sfc_count());
    s.shared_backups.reserve(workload.sfc_count());
    for (const auto& sfc : workload.sfcs) {
        s.assignment.emplace_back(sfc.length(), kUnassigned);
        s.dedicated_backups.emplace_back(sfc.length(), 0);
        s.shared_backups.emplace_back(category_count, 0);
    }
    return s;
}

void validate(const Infrastructure& infra) {
    require(!infra.categories.empty(), "infrastructure: at least one category required");
    for (int i = 0; i < infra.category_count(); ++i) {
        const auto& c = infra.categories[i];
        require(c.node_count >= 1, cat_field(i, "node_count") + " must be >= 1");
        require(c.clock > 0.0, cat_field(i, "clock") + " must be > 0");
        require(c.cost_active >= 0.0, cat_field(i, "cost_active") + " must be >= 0");
        require(c.cost_standby >= 0.0, cat_field(i, "cost_standby") + " must be >= 0");
        require(c.fail_active >= 0.0, cat_field(i, "fail_active") + " must be >= 0");
        require(c.fail_standby >= 0.0, cat_field(i, "fail_standby") + " must be >= 0");
        require(c.fail_standby <= c.fail_active,
                cat_field(i, "fail_standby") + " exceeds fail_active");
        require(c.cost_standby <= c.cost_active,
                cat_field(i, "cost_standby") + " exceeds cost_active");
    }
}

void validate(const Workload& workload) {
    require(!workload.sfcs.empty(), "workload: at least one SFC required");
    for (int k = 0; k < workload.sfc_count(); ++k) {
        const auto& s = workload.sfcs[k];
        require(!s.loads.empty(), sfc_field(k, "loads") + " must be non-empty");
        for (int j = 0; j < s.length(); ++j) {
            require(s.loads[j] > 0.0, sfc_field(k, "loads") + "[" + std::to_string(j) +
                                          "] must be > 0");
        }
        require(s.deadline > 0.0, sfc_field(k, "deadline") + " must be > 0");
        require(s.reliability_target > 0.0 && s.reliability_target < 1.0,
                sfc_field(k, "reliability_target") + " must be in (0,1)");
    }
}

void validate(const ObjectiveConfig& cfg) {
    require(cfg.alpha >= 0.0 && cfg.alpha <= 1.0, "objective.alpha must be in [0,1]");
    require(cfg.beta >= 0.0 && cfg.beta <= 1.0, "objective.beta must be in [0,1]");
    require(std::abs(cfg.alpha + cfg.beta - 1.0) <= 1e-9,
            "objective.alpha + objective.beta must equal 1");
    require(cfg.penalty_weight > 0.0, "objective.penalty_weight must be > 0");
    require(cfg.holding_time > 0.0, "objective.holding_time must be > 0");
}

void validate(const Dataset& dataset) {
    validate(dataset.infrastructure);
    validate(dataset.workload);
    validate(dataset.objective);
}

} // namespace sfcplace
