// JSON forms of solutions, evaluation reports and solver results. Category
// indices are 1-based on disk, matching the dataset's category numbering.
#pragma once

#include <string>

#include <json.hpp>

#include "sfcplace/evaluator.hpp"
#include "sfcplace/model.hpp"
#include "sfcplace/solvers.hpp"

namespace sfcplace {

nlohmann::json solution_to_json(const Solution& solution);

// Parses and shape-checks a solution against the dataset; throws DataError
// naming the offending position.
Solution solution_from_json(const nlohmann::json& doc, const Infrastructure& infra,
                            const Workload& workload);
Solution load_solution_file(const std::string& path, const Infrastructure& infra,
                            const Workload& workload);

nlohmann::json report_to_json(const EvaluationReport& report);

// Self-describing result document: embeds the manifest and the dataset
// fingerprint so any figure can be regenerated from the file alone.
// Deliberately excludes wall time, which would break byte-identical reruns.
nlohmann::json result_to_json(const SolveResult& result, const nlohmann::json& manifest,
                              std::uint64_t dataset_hash);

// write-temp-then-rename so concurrent runs never expose partial files
void write_file_atomic(const std::string& path, const std::string& content);

std::string fingerprint_string(std::uint64_t hash);

} // namespace sfcplace
