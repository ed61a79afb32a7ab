#include <doctest.h>

#include "test_support.hpp"

#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sfcplace/cli.hpp"
#include "sfcplace/report_io.hpp"

using namespace sfcplace;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_binary() {
    const char* path = std::getenv("SFCPLACE_CLI");
    REQUIRE_MESSAGE(path != nullptr, "SFCPLACE_CLI must point at the CLI binary");
    return path;
}

int run(const std::string& command) {
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("sfcplace_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int n = 0;
        return n;
    }
};

} // namespace

TEST_CASE("generate emits the reference instance") {
    TempDir dir;
    const fs::path out = dir.path / "paper.json";
    CHECK(run(cli_binary() + " generate --paper-instance --out " + out.string() +
              " > /dev/null") == 0);
    const Dataset d = load_dataset_file(out.string());
    CHECK(d.infrastructure.category_count() == 3);
    CHECK(d.infrastructure.total_nodes() == 800);
    CHECK(d.workload.sfc_count() == 10);
    CHECK(d.objective.alpha == 0.65);
    CHECK(d.objective.beta == 0.35);
}

TEST_CASE("generate --tiny is deterministic") {
    TempDir dir;
    const fs::path a = dir.path / "a.json";
    const fs::path b = dir.path / "b.json";
    CHECK(run(cli_binary() + " generate --tiny --seed 7 --out " + a.string() + " > /dev/null") ==
          0);
    CHECK(run(cli_binary() + " generate --tiny --seed 7 --out " + b.string() + " > /dev/null") ==
          0);
    CHECK(slurp(a) == slurp(b));
    const Dataset d = load_dataset_file(a.string());
    CHECK(d.workload.sfc_count() == 1);
}

TEST_CASE("generate rejects invalid ranges with a usage error") {
    TempDir dir;
    CHECK(run(cli_binary() + " generate --categories 0 --out " + (dir.path / "x.json").string() +
              " 2> /dev/null") == 2);
}

TEST_CASE("unknown algorithm is a usage error; missing dataset a data error") {
    TempDir dir;
    const fs::path data = dir.path / "d.json";
    REQUIRE(run(cli_binary() + " generate --tiny --seed 3 --out " + data.string() +
                " > /dev/null") == 0);
    CHECK(run(cli_binary() + " solve --dataset " + data.string() +
              " --algorithm simulated-annealing 2> /dev/null") == 2);
    CHECK(run(cli_binary() + " solve --dataset " + (dir.path / "missing.json").string() +
              " --algorithm exact 2> /dev/null") == 3);
}

TEST_CASE("solve reruns are byte-identical across thread counts") {
    TempDir dir;
    const fs::path data = dir.path / "d.json";
    REQUIRE(run(cli_binary() + " generate --tiny --seed 11 --out " + data.string() +
                " > /dev/null") == 0);

    const std::string ga_flags =
        " --algorithm gap-gaba --seed 5 --generations 20 --population 16"
        " --crossovers 12 --elites 4 ";
    const fs::path out1 = dir.path / "r1";
    const fs::path out2 = dir.path / "r2";
    CHECK(run("SFC_THREADS=1 " + cli_binary() + " solve --dataset " + data.string() + ga_flags +
              "--out " + out1.string() + " > /dev/null") == 0);
    CHECK(run("SFC_THREADS=4 " + cli_binary() + " solve --dataset " + data.string() + ga_flags +
              "--out " + out2.string() + " > /dev/null") == 0);
    CHECK(slurp(out1 / "gap-gaba_seed5.json") == slurp(out2 / "gap-gaba_seed5.json"));
}

TEST_CASE("exact solver cap refusal uses exit code 4") {
    TempDir dir;
    const fs::path data = dir.path / "d.json";
    REQUIRE(run(cli_binary() + " generate --tiny --seed 13 --out " + data.string() +
                " > /dev/null") == 0);
    CHECK(run(cli_binary() + " solve --dataset " + data.string() +
              " --algorithm exact --max-evals 2 2> /dev/null") == 4);
    TempDir out;
    CHECK(run(cli_binary() + " solve --dataset " + data.string() + " --algorithm exact --out " +
              out.path.string() + " > /dev/null") == 0);
    const json doc = json::parse(slurp(out.path / "exact_seed0.json"));
    CHECK(doc.at("optimal").get<bool>());
}

TEST_CASE("evaluate on a hand-built fixture") {
    TempDir dir;
    const fs::path data = dir.path / "d.json";
    {
        // two categories, one two-VNF SFC with a shared-standby pool
        Dataset d;
        d.infrastructure.categories.push_back({4, 5.0, 25.0, 2.5, 0.01, 0.001});
        d.infrastructure.categories.push_back({4, 1.0, 5.0, 0.5, 0.04, 0.004});
        SfcRequest sfc;
        sfc.loads = {10.0, 20.0};
        sfc.deadline = 50.0;
        sfc.reliability_target = 0.999;
        sfc.strategy = BackupStrategy::SharedStandby;
        d.workload.sfcs.push_back(sfc);
        save_dataset_file(d, data.string());
    }

    const fs::path solution = dir.path / "s.json";
    {
        std::ofstream out(solution);
        out << R"({"assignment": [[1, 1]], "dedicated_backups": [[0, 0]],
                   "shared_backups": [[1, 0]]})";
    }

    const fs::path report_path = dir.path / "report.json";
    CHECK(run(cli_binary() + " evaluate --dataset " + data.string() + " --solution " +
              solution.string() + " --out " + report_path.string()) == 0);
    const json report = json::parse(slurp(report_path));

    // cross-check against the in-process evaluator
    const Dataset d = load_dataset_file(data.string());
    const Solution sol = load_solution_file(solution.string(), d.infrastructure, d.workload);
    const EvaluationReport expected = evaluate(
        sol, d.infrastructure, d.workload, d.objective,
        normalization_bounds(d.infrastructure, d.workload));
    CHECK(report.at("fitness").get<double>() == expected.fitness);
    CHECK(report.at("per_sfc")[0].at("reliability").get<double>() ==
          expected.per_sfc[0].reliability);
    CHECK(report.at("feasible").get<bool>() == expected.feasible());
    CHECK(expected.feasible());
}

TEST_CASE("evaluate rejects out-of-range categories naming the position") {
    TempDir dir;
    const fs::path data = dir.path / "d.json";
    REQUIRE(run(cli_binary() + " generate --tiny --seed 19 --out " + data.string() +
                " > /dev/null") == 0);
    const Dataset d = load_dataset_file(data.string());

    const fs::path solution = dir.path / "s.json";
    {
        json doc = {{"assignment", json::array({json::array({3, 1})})},
                    {"dedicated_backups", json::array({json::array({0, 0})})},
                    {"shared_backups", json::array({json::array({0, 0})})}};
        std::ofstream out(solution);
        out << doc.dump();
    }
    CHECK(run(cli_binary() + " evaluate --dataset " + data.string() + " --solution " +
              solution.string() + " 2> " + (dir.path / "err.txt").string()) == 3);
    const std::string err = slurp(dir.path / "err.txt");
    CHECK(err.find("assignment[0][0]") != std::string::npos);
}

TEST_CASE("evaluate flags unmet reliability on a zero-backup solution") {
    TempDir dir;
    const fs::path data = dir.path / "d.json";
    {
        Dataset d;
        d.infrastructure.categories.push_back({4, 1.0, 5.0, 0.5, 0.1, 0.01});
        SfcRequest sfc;
        sfc.loads = {5.0};
        sfc.deadline = 50.0;
        sfc.reliability_target = 0.9999;
        sfc.strategy = BackupStrategy::DedicatedActive;
        d.workload.sfcs.push_back(sfc);
        save_dataset_file(d, data.string());
    }
    const fs::path solution = dir.path / "s.json";
    {
        std::ofstream out(solution);
        out << R"({"assignment": [[1]], "dedicated_backups": [[0]], "shared_backups": [[0]]})";
    }
    const fs::path report_path = dir.path / "report.json";
    CHECK(run(cli_binary() + " evaluate --dataset " + data.string() + " --solution " +
              solution.string() + " --out " + report_path.string()) == 0);
    const json report = json::parse(slurp(report_path));
    CHECK_FALSE(report.at("per_sfc")[0].at("reliability_ok").get<bool>());
    CHECK_FALSE(report.at("feasible").get<bool>());
}

TEST_CASE("comparison of a configuration against itself reduces by zero") {
    const Dataset tiny = [] {
        const GeneratedInstance gen = generate_dataset(GeneratorSpec::tiny(), 29);
        return Dataset{gen.infrastructure, gen.workload, ObjectiveConfig{}};
    }();

    GaConfig ga;
    ga.generations = 10;
    ga.population = 12;
    ga.crossovers_per_generation = 8;
    ga.elites = 2;

    const std::vector<CompareConfig> configs = {
        {"gap-raba", Algorithm::GapRaba, 0},
        {"gap-raba#2", Algorithm::GapRaba, 0},
    };
    const ComparisonOutcome outcome =
        run_comparison(tiny, configs, {0, 1}, ga, 100, ExhaustiveLimits{});
    REQUIRE(outcome.rows.size() == 2);
    CHECK(outcome.rows[0].objective.mean == outcome.rows[1].objective.mean);
    for (const auto& r : outcome.reductions) {
        CHECK(r.percent == Near{0.0, 1e-12});
    }
}

TEST_CASE("a failing configuration does not abort the others") {
    const GeneratedInstance gen = generate_dataset(GeneratorSpec::tiny(), 33);
    const Dataset tiny{gen.infrastructure, gen.workload, ObjectiveConfig{}};

    GaConfig ga;
    ga.generations = 5;
    ga.population = 10;
    ga.crossovers_per_generation = 6;
    ga.elites = 2;

    ExhaustiveLimits strangled;
    strangled.max_evaluations = 1; // forces the exact configuration to refuse
    const std::vector<CompareConfig> configs = {
        {"exact", Algorithm::Exact, 0},
        {"gap-raba", Algorithm::GapRaba, 0},
    };
    const ComparisonOutcome outcome = run_comparison(tiny, configs, {0}, ga, 50, strangled);
    REQUIRE(outcome.rows.size() == 2);
    CHECK(!outcome.rows[0].error.empty());
    CHECK(outcome.rows[1].error.empty());
    CHECK(outcome.rows[1].objective.values.size() == 1);
    CHECK(outcome.reductions.empty()); // only one healthy row, nothing to pair
}

TEST_CASE("compare command writes the four artifacts") {
    TempDir dir;
    const fs::path data = dir.path / "d.json";
    REQUIRE(run(cli_binary() + " generate --tiny --seed 31 --out " + data.string() +
                " > /dev/null") == 0);
    const fs::path out = dir.path / "cmp";
    CHECK(run(cli_binary() + " compare --dataset " + data.string() +
              " --algorithms gap-raba,random --seeds 0,1 --generations 5 --population 10"
              " --crossovers 6 --elites 2 --out " +
              out.string() + " > /dev/null") == 0);
    for (const char* name : {"comparison.json", "comparison.csv", "reductions.csv", "series.csv"}) {
        CHECK(fs::exists(out / name));
    }
    const json doc = json::parse(slurp(out / "comparison.json"));
    CHECK(doc.at("configurations").size() == 2);
    CHECK(doc.at("dataset_hash").get<std::string>().rfind("fnv1a64:", 0) == 0);
}
