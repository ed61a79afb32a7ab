#include "sfcplace/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sfcplace {

using nlohmann::json;

json solution_to_json(const Solution& solution) {
    json assignment = json::array();
    for (const auto& row : solution.assignment) {
        json out_row = json::array();
        for (int cat : row) out_row.push_back(cat == kUnassigned ? 0 : cat + 1);
        assignment.push_back(std::move(out_row));
    }
    return json{{"assignment", assignment},
                {"dedicated_backups", solution.dedicated_backups},
                {"shared_backups", solution.shared_backups}};
}

Solution solution_from_json(const json& doc, const Infrastructure& infra,
                            const Workload& workload) {
    if (!doc.is_object()) throw DataError("solution: top level must be an object");
    for (const char* key : {"assignment", "dedicated_backups", "shared_backups"}) {
        if (!doc.contains(key) || !doc.at(key).is_array())
            throw DataError(std::string("solution: missing array '") + key + "'");
    }

    const auto read_matrix = [&](const char* key) {
        std::vector<std::vector<int>> rows;
        for (std::size_t k = 0; k < doc.at(key).size(); ++k) {
            const auto& row = doc.at(key)[k];
            if (!row.is_array())
                throw DataError(std::string("solution.") + key + "[" + std::to_string(k) +
                                "]: expected an array");
            std::vector<int> out;
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (!row[j].is_number_integer())
                    throw DataError(std::string("solution.") + key + "[" + std::to_string(k) +
                                    "][" + std::to_string(j) + "]: expected an integer");
                out.push_back(row[j].get<int>());
            }
            rows.push_back(std::move(out));
        }
        return rows;
    };

    Solution solution;
    solution.assignment = read_matrix("assignment");
    solution.dedicated_backups = read_matrix("dedicated_backups");
    solution.shared_backups = read_matrix("shared_backups");

    // On disk categories are numbered 1..M; 0 marks an unplaced VNF.
    for (auto& row : solution.assignment) {
        for (auto& cat : row) cat = cat == 0 ? kUnassigned : cat - 1;
    }
    check_solution_shape(solution, infra, workload);
    return solution;
}

Solution load_solution_file(const std::string& path, const Infrastructure& infra,
                            const Workload& workload) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open solution file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw DataError("solution: not valid JSON: " + std::string(e.what()));
    }
    // Accept either a bare solution or a result document wrapping one.
    if (doc.is_object() && doc.contains("solution")) return solution_from_json(doc.at("solution"), infra, workload);
    return solution_from_json(doc, infra, workload);
}

json report_to_json(const EvaluationReport& report) {
    json per_sfc = json::array();
    for (const auto& m : report.per_sfc) {
        per_sfc.push_back({{"reliability", m.reliability},
                           {"delay", m.delay},
                           {"cost", m.cost},
                           {"reliability_ok", m.reliability_ok},
                           {"deadline_ok", m.deadline_ok}});
    }
    return json{{"per_sfc", per_sfc},
                {"per_category_usage", report.per_category_usage},
                {"capacity_ok", report.capacity_ok},
                {"placement_complete", report.placement_complete},
                {"missing_vnfs", report.missing_vnfs},
                {"reliability_violations", report.reliability_violations},
                {"deadline_violations", report.deadline_violations},
                {"capacity_violations", report.capacity_violations},
                {"penalty_count", report.penalty_count},
                {"total_cost", report.total_cost},
                {"total_delay", report.total_delay},
                {"normalized_cost", report.normalized_cost},
                {"normalized_delay", report.normalized_delay},
                {"objective", report.objective},
                {"fitness", report.fitness},
                {"feasible", report.feasible()}};
}

json result_to_json(const SolveResult& result, const json& manifest, std::uint64_t dataset_hash) {
    return json{{"schema", "sfcplace.result.v1"},
                {"manifest", manifest},
                {"dataset_hash", fingerprint_string(dataset_hash)},
                {"seed", result.seed},
                {"optimal", result.optimal},
                {"feasible", result.feasible()},
                {"solution", solution_to_json(result.best_solution)},
                {"report", report_to_json(result.best_report)},
                {"fitness_history", result.fitness_history}};
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write file: " + tmp);
        out << content;
        if (!out) throw DataError("failed writing file: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw DataError("cannot rename " + tmp + " to " + path);
    }
}

std::string fingerprint_string(std::uint64_t hash) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(hash));
    return buffer;
}

} // namespace sfcplace
