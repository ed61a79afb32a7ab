// Dataset document I/O. One UTF-8 JSON schema with sections
// `infrastructure`, `workload`, `objective`; see README for the layout.
#include "sfcplace/model.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sfcplace {

namespace {

using nlohmann::json;

double number_at(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw DataError(where + ": missing field '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number()) throw DataError(where + "." + key + ": expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw DataError(where + "." + key + ": non-finite number");
    return d;
}

int int_at(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw DataError(where + ": missing field '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw DataError(where + "." + key + ": expected an integer");
    return v.get<int>();
}

json dataset_to_json(const Dataset& d) {
    json infra = json::array();
    for (const auto& c : d.infrastructure.categories) {
        infra.push_back({{"node_count", c.node_count},
                         {"clock", c.clock},
                         {"cost_active", c.cost_active},
                         {"cost_standby", c.cost_standby},
                         {"fail_active", c.fail_active},
                         {"fail_standby", c.fail_standby}});
    }
    json work = json::array();
    for (const auto& s : d.workload.sfcs) {
        work.push_back({{"loads", s.loads},
                        {"deadline", s.deadline},
                        {"reliability_target", s.reliability_target},
                        {"strategy", static_cast<int>(s.strategy)}});
    }
    json objective = {{"alpha", d.objective.alpha},
                      {"beta", d.objective.beta},
                      {"penalty_weight", d.objective.penalty_weight},
                      {"holding_time", d.objective.holding_time}};
    if (d.objective.raw_fitness) objective["raw_fitness"] = true;
    return json{{"infrastructure", infra}, {"workload", work}, {"objective", objective}};
}

} // namespace

Dataset parse_dataset(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("dataset: not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw DataError("dataset: top level must be an object");
    for (const char* key : {"infrastructure", "workload", "objective"}) {
        if (!doc.contains(key))
            throw DataError(std::string("dataset: missing section '") + key + "'");
    }

    Dataset out;

    const auto& infra = doc.at("infrastructure");
    if (!infra.is_array()) throw DataError("infrastructure: expected an array");
    for (std::size_t i = 0; i < infra.size(); ++i) {
        const std::string where = "infrastructure[" + std::to_string(i) + "]";
        const auto& c = infra[i];
        if (!c.is_object()) throw DataError(where + ": expected an object");
        NodeCategory cat;
        cat.node_count = int_at(c, "node_count", where);
        cat.clock = number_at(c, "clock", where);
        cat.cost_active = number_at(c, "cost_active", where);
        cat.cost_standby = number_at(c, "cost_standby", where);
        cat.fail_active = number_at(c, "fail_active", where);
        cat.fail_standby = number_at(c, "fail_standby", where);
        out.infrastructure.categories.push_back(cat);
    }

    const auto& work = doc.at("workload");
    if (!work.is_array()) throw DataError("workload: expected an array");
    for (std::size_t k = 0; k < work.size(); ++k) {
        const std::string where = "workload[" + std::to_string(k) + "]";
        const auto& s = work[k];
        if (!s.is_object()) throw DataError(where + ": expected an object");
        SfcRequest sfc;
        if (!s.contains("loads") || !s.at("loads").is_array())
            throw DataError(where + ".loads: expected an array");
        for (std::size_t j = 0; j < s.at("loads").size(); ++j) {
            const auto& v = s.at("loads")[j];
            if (!v.is_number())
                throw DataError(where + ".loads[" + std::to_string(j) + "]: expected a number");
            sfc.loads.push_back(v.get<double>());
        }
        sfc.deadline = number_at(s, "deadline", where);
        sfc.reliability_target = number_at(s, "reliability_target", where);
        int code = int_at(s, "strategy", where);
        try {
            sfc.strategy = strategy_from_code(code);
        } catch (const DataError&) {
            throw DataError(where + ".strategy: code " + std::to_string(code) +
                            " outside 1..4");
        }
        out.workload.sfcs.push_back(std::move(sfc));
    }

    const auto& objective = doc.at("objective");
    if (!objective.is_object()) throw DataError("objective: expected an object");
    out.objective.alpha = number_at(objective, "alpha", "objective");
    out.objective.beta = number_at(objective, "beta", "objective");
    out.objective.penalty_weight = number_at(objective, "penalty_weight", "objective");
    out.objective.holding_time = number_at(objective, "holding_time", "objective");
    if (objective.contains("raw_fitness"))
        out.objective.raw_fitness = objective.at("raw_fitness").get<bool>();

    validate(out);
    return out;
}

Dataset load_dataset(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dataset(buffer.str());
}

Dataset load_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path);
    return load_dataset(in);
}

std::string save_dataset(const Dataset& dataset) {
    return dataset_to_json(dataset).dump(2) + "\n";
}

void save_dataset_file(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write dataset file: " + path);
    out << save_dataset(dataset);
    if (!out) throw DataError("failed writing dataset file: " + path);
}

std::uint64_t dataset_fingerprint(const Dataset& dataset) {
    const std::string text = save_dataset(dataset);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace sfcplace
