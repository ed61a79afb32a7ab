// Domain model: heterogeneous node categories, SFC workload, placement
// solutions, dataset (de)serialization and the random instance generator.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sfcplace {

// Malformed or inconsistent input data (dataset files, solution files).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BackupStrategy : int {
    DedicatedActive = 1,
    DedicatedStandby = 2,
    SharedActive = 3,
    SharedStandby = 4,
};

inline bool is_dedicated(BackupStrategy s) {
    return s == BackupStrategy::DedicatedActive || s == BackupStrategy::DedicatedStandby;
}
inline bool is_shared(BackupStrategy s) { return !is_dedicated(s); }
inline bool is_standby(BackupStrategy s) {
    return s == BackupStrategy::DedicatedStandby || s == BackupStrategy::SharedStandby;
}

BackupStrategy strategy_from_code(int code); // throws DataError for codes outside 1..4

// One class of identical fog servers.
struct NodeCategory {
    int node_count = 1;        // M_i
    double clock = 1.0;        // CPU cycles per unit time
    double cost_active = 0.0;  // per node per holding period
    double cost_standby = 0.0;
    double fail_active = 0.0;  // failures per unit time
    double fail_standby = 0.0;
};

struct Infrastructure {
    std::vector<NodeCategory> categories;

    int category_count() const { return static_cast<int>(categories.size()); }
    int total_nodes() const;
};

struct SfcRequest {
    std::vector<double> loads;         // CPU cycles per VNF
    double deadline = 0.0;             // latency budget
    double reliability_target = 0.0;   // in (0,1)
    BackupStrategy strategy = BackupStrategy::DedicatedActive;

    int length() const { return static_cast<int>(loads.size()); }
};

struct Workload {
    std::vector<SfcRequest> sfcs;

    int sfc_count() const { return static_cast<int>(sfcs.size()); }
    int total_vnfs() const;

    // Global VNF indexing: SFC k's VNFs occupy consecutive slots after
    // SFC k-1's, all 0-based.
    int global_index(int sfc, int vnf) const;
    std::pair<int, int> vnf_at(int global) const;
};

struct ObjectiveConfig {
    double alpha = 0.65;
    double beta = 0.35;
    double penalty_weight = 1000.0; // added per violation
    double holding_time = 1.0;      // reliability horizon
    bool raw_fitness = false;       // weight raw totals instead of normalized terms
};

constexpr int kUnassigned = -1;

// Placement plus backup provisioning for a whole workload. assignment may
// contain kUnassigned while a candidate is being decoded; a complete
// solution has one category per VNF. Exactly one backup family is used,
// matching each SFC's strategy; the other stays all-zero.
struct Solution {
    std::vector<std::vector<int>> assignment;        // [sfc][vnf] -> category
    std::vector<std::vector<int>> dedicated_backups; // [sfc][vnf]
    std::vector<std::vector<int>> shared_backups;    // [sfc][category]

    static Solution zero(const Workload& workload, int category_count);
};

struct Dataset {
    Infrastructure infrastructure;
    Workload workload;
    ObjectiveConfig objective;
};

void validate(const Infrastructure& infra);
void validate(const Workload& workload);
void validate(const ObjectiveConfig& cfg);
void validate(const Dataset& dataset);

Dataset parse_dataset(const std::string& text);
Dataset load_dataset(std::istream& in);
Dataset load_dataset_file(const std::string& path);
std::string save_dataset(const Dataset& dataset); // canonical form, stable byte-for-byte
void save_dataset_file(const Dataset& dataset, const std::string& path);

// FNV-1a over the canonical serialization; result documents embed it so a
// figure can be traced back to the exact dataset.
std::uint64_t dataset_fingerprint(const Dataset& dataset);

struct IntRange {
    int lo = 0;
    int hi = 0;
};
struct RealRange {
    double lo = 0.0;
    double hi = 0.0;
};

// Sampling ranges for random instances. Standby failure rates and costs are
// coupled to their active counterparts by fixed ratios, matching the
// bundled reference instance (0.008 -> 0.0008 etc.).
struct GeneratorSpec {
    IntRange categories{2, 3};
    IntRange nodes_per_category{50, 700};
    IntRange clock{1, 5};
    RealRange cost_active{5.0, 25.0};
    double standby_cost_ratio = 0.1;
    RealRange fail_active{0.008, 0.04};
    double standby_fail_ratio = 0.1;
    IntRange sfc_count{5, 15};
    IntRange chain_length{2, 5};
    IntRange load{5, 50};
    RealRange deadline{10.0, 100.0};
    std::vector<double> reliability_levels{0.99, 0.999, 0.9999, 0.99999, 0.999999};
    std::vector<int> strategies{1, 2, 3, 4};

    void validate() const; // throws std::invalid_argument naming the bad range

    // Oracle-scale instances: one short SFC over two small categories.
    static GeneratorSpec tiny();
};

struct GeneratedInstance {
    Infrastructure infrastructure;
    Workload workload;
};

GeneratedInstance generate_dataset(const GeneratorSpec& spec, std::uint64_t seed);

// The bundled reference instance: three node categories
// (200/300/300 nodes, clocks 5/4/1, ...), ten SFCs, alpha=0.65/beta=0.35.
// node_scale_divisor shrinks per-category node counts for quick profiles
// (e.g. 5 -> 40/60/60 nodes).
Dataset reference_instance(int node_scale_divisor = 1);

} // namespace sfcplace
