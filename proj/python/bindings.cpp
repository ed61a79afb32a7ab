#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sfcplace/cli.hpp"
#include "sfcplace/evaluator.hpp"
#include "sfcplace/model.hpp"
#include "sfcplace/reliability.hpp"
#include "sfcplace/solvers.hpp"

namespace py = pybind11;
using namespace sfcplace;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Service-chain placement with redundancy provisioning over "
              "heterogeneous fog categories";
    m.attr("__version__") = "0.1.0";

    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<SolverRefusal>(m, "SolverRefusal", PyExc_RuntimeError);

    py::enum_<BackupStrategy>(m, "BackupStrategy")
        .value("DEDICATED_ACTIVE", BackupStrategy::DedicatedActive)
        .value("DEDICATED_STANDBY", BackupStrategy::DedicatedStandby)
        .value("SHARED_ACTIVE", BackupStrategy::SharedActive)
        .value("SHARED_STANDBY", BackupStrategy::SharedStandby);

    py::class_<NodeCategory>(m, "NodeCategory")
        .def(py::init<>())
        .def_readwrite("node_count", &NodeCategory::node_count)
        .def_readwrite("clock", &NodeCategory::clock)
        .def_readwrite("cost_active", &NodeCategory::cost_active)
        .def_readwrite("cost_standby", &NodeCategory::cost_standby)
        .def_readwrite("fail_active", &NodeCategory::fail_active)
        .def_readwrite("fail_standby", &NodeCategory::fail_standby);

    py::class_<Infrastructure>(m, "Infrastructure")
        .def(py::init<>())
        .def_readwrite("categories", &Infrastructure::categories)
        .def_property_readonly("total_nodes", &Infrastructure::total_nodes)
        .def_property_readonly("category_count", &Infrastructure::category_count);

    py::class_<SfcRequest>(m, "SfcRequest")
        .def(py::init<>())
        .def_readwrite("loads", &SfcRequest::loads)
        .def_readwrite("deadline", &SfcRequest::deadline)
        .def_readwrite("reliability_target", &SfcRequest::reliability_target)
        .def_readwrite("strategy", &SfcRequest::strategy)
        .def_property_readonly("length", &SfcRequest::length);

    py::class_<Workload>(m, "Workload")
        .def(py::init<>())
        .def_readwrite("sfcs", &Workload::sfcs)
        .def_property_readonly("sfc_count", &Workload::sfc_count)
        .def_property_readonly("total_vnfs", &Workload::total_vnfs)
        .def("global_index", &Workload::global_index)
        .def("vnf_at", &Workload::vnf_at);

    py::class_<ObjectiveConfig>(m, "ObjectiveConfig")
        .def(py::init<>())
        .def_readwrite("alpha", &ObjectiveConfig::alpha)
        .def_readwrite("beta", &ObjectiveConfig::beta)
        .def_readwrite("penalty_weight", &ObjectiveConfig::penalty_weight)
        .def_readwrite("holding_time", &ObjectiveConfig::holding_time)
        .def_readwrite("raw_fitness", &ObjectiveConfig::raw_fitness);

    py::class_<Solution>(m, "Solution")
        .def(py::init<>())
        .def_static("zero", &Solution::zero, py::arg("workload"), py::arg("category_count"))
        .def_readwrite("assignment", &Solution::assignment)
        .def_readwrite("dedicated_backups", &Solution::dedicated_backups)
        .def_readwrite("shared_backups", &Solution::shared_backups);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def_readwrite("infrastructure", &Dataset::infrastructure)
        .def_readwrite("workload", &Dataset::workload)
        .def_readwrite("objective", &Dataset::objective);

    py::class_<IntRange>(m, "IntRange")
        .def(py::init<int, int>(), py::arg("lo"), py::arg("hi"))
        .def_readwrite("lo", &IntRange::lo)
        .def_readwrite("hi", &IntRange::hi);

    py::class_<GeneratorSpec>(m, "GeneratorSpec")
        .def(py::init<>())
        .def_static("tiny", &GeneratorSpec::tiny)
        .def_readwrite("categories", &GeneratorSpec::categories)
        .def_readwrite("nodes_per_category", &GeneratorSpec::nodes_per_category)
        .def_readwrite("sfc_count", &GeneratorSpec::sfc_count)
        .def_readwrite("chain_length", &GeneratorSpec::chain_length)
        .def_readwrite("strategies", &GeneratorSpec::strategies)
        .def_readwrite("reliability_levels", &GeneratorSpec::reliability_levels);

    py::class_<GeneratedInstance>(m, "GeneratedInstance")
        .def_readonly("infrastructure", &GeneratedInstance::infrastructure)
        .def_readonly("workload", &GeneratedInstance::workload);

    m.def("generate_dataset", &generate_dataset, py::arg("spec"), py::arg("seed"));
    m.def("reference_instance", &reference_instance, py::arg("node_scale_divisor") = 1);
    m.def("parse_dataset", &parse_dataset, py::arg("text"));
    m.def("load_dataset_file", &load_dataset_file, py::arg("path"));
    m.def("save_dataset", &save_dataset, py::arg("dataset"));
    m.def("save_dataset_file", &save_dataset_file, py::arg("dataset"), py::arg("path"));
    m.def("dataset_fingerprint", &dataset_fingerprint, py::arg("dataset"));

    py::class_<GroupSpec>(m, "GroupSpec")
        .def(py::init<int, int, double, double, double>(), py::arg("primaries") = 1,
             py::arg("backups") = 0, py::arg("fail_active") = 0.0, py::arg("fail_standby") = 0.0,
             py::arg("horizon") = 1.0)
        .def_readwrite("primaries", &GroupSpec::primaries)
        .def_readwrite("backups", &GroupSpec::backups)
        .def_readwrite("fail_active", &GroupSpec::fail_active)
        .def_readwrite("fail_standby", &GroupSpec::fail_standby)
        .def_readwrite("horizon", &GroupSpec::horizon);

    m.def("failure_cdf", &failure_cdf, py::arg("rate"), py::arg("t"));
    m.def("rel_dedicated_active", &rel_dedicated_active, py::arg("backups"),
          py::arg("failure_prob"));
    m.def("rel_dedicated_standby", &rel_dedicated_standby, py::arg("spec"));
    m.def("rel_shared_active", &rel_shared_active, py::arg("primaries"), py::arg("backups"),
          py::arg("failure_prob"));
    m.def("rel_shared_standby", &rel_shared_standby, py::arg("spec"));
    m.def("markov_group_reliability", &markov_group_reliability, py::arg("spec"));
    m.def("mc_group_reliability", &mc_group_reliability, py::arg("spec"), py::arg("trials"),
          py::arg("seed"), py::call_guard<py::gil_scoped_release>());
    m.def("sfc_reliability", &sfc_reliability, py::arg("solution"), py::arg("sfc_index"),
          py::arg("infra"), py::arg("workload"), py::arg("cfg"));
    m.def("sfc_cost", &sfc_cost, py::arg("solution"), py::arg("sfc_index"), py::arg("infra"),
          py::arg("workload"));
    m.def("sfc_delay", &sfc_delay, py::arg("solution"), py::arg("sfc_index"), py::arg("infra"),
          py::arg("workload"));

    py::class_<NormalizationBounds>(m, "NormalizationBounds")
        .def_readonly("tau_min", &NormalizationBounds::tau_min)
        .def_readonly("tau_max", &NormalizationBounds::tau_max)
        .def_readonly("p_min", &NormalizationBounds::p_min)
        .def_readonly("p_max", &NormalizationBounds::p_max);

    py::class_<SfcMetrics>(m, "SfcMetrics")
        .def_readonly("reliability", &SfcMetrics::reliability)
        .def_readonly("delay", &SfcMetrics::delay)
        .def_readonly("cost", &SfcMetrics::cost)
        .def_readonly("reliability_ok", &SfcMetrics::reliability_ok)
        .def_readonly("deadline_ok", &SfcMetrics::deadline_ok);

    py::class_<EvaluationReport>(m, "EvaluationReport")
        .def_readonly("per_sfc", &EvaluationReport::per_sfc)
        .def_readonly("per_category_usage", &EvaluationReport::per_category_usage)
        .def_readonly("capacity_ok", &EvaluationReport::capacity_ok)
        .def_readonly("placement_complete", &EvaluationReport::placement_complete)
        .def_readonly("missing_vnfs", &EvaluationReport::missing_vnfs)
        .def_readonly("reliability_violations", &EvaluationReport::reliability_violations)
        .def_readonly("deadline_violations", &EvaluationReport::deadline_violations)
        .def_readonly("capacity_violations", &EvaluationReport::capacity_violations)
        .def_readonly("penalty_count", &EvaluationReport::penalty_count)
        .def_readonly("total_cost", &EvaluationReport::total_cost)
        .def_readonly("total_delay", &EvaluationReport::total_delay)
        .def_readonly("normalized_cost", &EvaluationReport::normalized_cost)
        .def_readonly("normalized_delay", &EvaluationReport::normalized_delay)
        .def_readonly("objective", &EvaluationReport::objective)
        .def_readonly("fitness", &EvaluationReport::fitness)
        .def_property_readonly("feasible", &EvaluationReport::feasible);

    m.def("normalization_bounds", &normalization_bounds, py::arg("infra"), py::arg("workload"));
    m.def("evaluate", &evaluate, py::arg("solution"), py::arg("infra"), py::arg("workload"),
          py::arg("cfg"), py::arg("bounds"));
    m.def("audit_feasibility", &audit_feasibility, py::arg("solution"), py::arg("infra"),
          py::arg("workload"), py::arg("cfg"));

    py::class_<GaConfig>(m, "GaConfig")
        .def(py::init<>())
        .def_readwrite("generations", &GaConfig::generations)
        .def_readwrite("population", &GaConfig::population)
        .def_readwrite("crossovers_per_generation", &GaConfig::crossovers_per_generation)
        .def_readwrite("elites", &GaConfig::elites)
        .def_readwrite("mutation_rate", &GaConfig::mutation_rate)
        .def_readwrite("tournament_size", &GaConfig::tournament_size)
        .def_readwrite("seed", &GaConfig::seed)
        .def_readwrite("threads", &GaConfig::threads);

    py::enum_<Encoding>(m, "Encoding")
        .value("GAP_GABA", Encoding::GapGaba)
        .value("GAP_RABA", Encoding::GapRaba);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("best_solution", &SolveResult::best_solution)
        .def_readonly("best_report", &SolveResult::best_report)
        .def_readonly("fitness_history", &SolveResult::fitness_history)
        .def_readonly("wall_time_seconds", &SolveResult::wall_time_seconds)
        .def_readonly("seed", &SolveResult::seed)
        .def_readonly("optimal", &SolveResult::optimal)
        .def_property_readonly("feasible", &SolveResult::feasible);

    py::class_<ExhaustiveLimits>(m, "ExhaustiveLimits")
        .def(py::init<>())
        .def_readwrite("max_evaluations", &ExhaustiveLimits::max_evaluations);

    m.def("run_ga", &run_ga, py::arg("encoding"), py::arg("infra"), py::arg("workload"),
          py::arg("cfg"), py::arg("ga"), py::call_guard<py::gil_scoped_release>());
    m.def("random_baseline", &random_baseline, py::arg("infra"), py::arg("workload"),
          py::arg("cfg"), py::arg("attempts"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());
    m.def("exhaustive_solve", &exhaustive_solve, py::arg("infra"), py::arg("workload"),
          py::arg("cfg"), py::arg("limits") = ExhaustiveLimits{},
          py::call_guard<py::gil_scoped_release>());
}
