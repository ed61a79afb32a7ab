#include <doctest.h>

#include "test_support.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "sfcplace/reliability.hpp"
#include "sfcplace/solvers.hpp"

using namespace sfcplace;

namespace {

Infrastructure categories(std::vector<NodeCategory> cats) {
    Infrastructure infra;
    infra.categories = std::move(cats);
    return infra;
}

SfcRequest chain(std::vector<double> loads, double deadline, double target,
                 BackupStrategy strategy) {
    SfcRequest sfc;
    sfc.loads = std::move(loads);
    sfc.deadline = deadline;
    sfc.reliability_target = target;
    sfc.strategy = strategy;
    return sfc;
}

std::multiset<int> multiset_of(const std::vector<int>& v) { return {v.begin(), v.end()}; }

} // namespace

TEST_CASE("tournament selection") {
    Rng rng(1);

    SUBCASE("large tournament finds the global best") {
        const std::vector<double> fitness = {3.0, 1.0, 2.0, 4.0};
        for (int i = 0; i < 200; ++i) {
            CHECK(tournament_select(fitness, 64, rng) == 1);
        }
    }
    SUBCASE("pair tournament prefers the better member three times in four") {
        const std::vector<double> fitness = {1.0, 5.0};
        int wins = 0;
        const int draws = 20000;
        for (int i = 0; i < draws; ++i) {
            if (tournament_select(fitness, 2, rng) == 0) ++wins;
        }
        CHECK(static_cast<double>(wins) / draws == Near{0.75, 0.02});
    }
    SUBCASE("population of one") {
        const std::vector<double> fitness = {7.0};
        CHECK(tournament_select(fitness, 3, rng) == 0);
    }
}

TEST_CASE("two-point crossover") {
    Rng rng(2);

    SUBCASE("fixed cuts swap the middle segment") {
        std::vector<int> a = {1, 2, 3, 4};
        std::vector<int> b = {5, 6, 7, 8};
        crossover_segment(a, b, 1, 3);
        CHECK(a == std::vector<int>{1, 6, 7, 4});
        CHECK(b == std::vector<int>{5, 2, 3, 8});
    }
    SUBCASE("boundary cuts produce full swaps") {
        std::vector<int> a = {1, 2, 3};
        std::vector<int> b = {4, 5, 6};
        crossover_segment(a, b, 0, 3);
        CHECK(a == std::vector<int>{4, 5, 6});
        CHECK(b == std::vector<int>{1, 2, 3});
    }
    SUBCASE("identical parents give identical children") {
        const std::vector<int> p = {9, 9, 2, 5, 5};
        const auto [ca, cb] = two_point_crossover(p, p, rng);
        CHECK(ca == p);
        CHECK(cb == p);
    }
    SUBCASE("children mix positions without inventing genes") {
        for (int round = 0; round < 100; ++round) {
            std::vector<int> a(12), b(12);
            for (int i = 0; i < 12; ++i) {
                a[i] = static_cast<int>(rng.bounded(5));
                b[i] = static_cast<int>(rng.bounded(5));
            }
            const auto [ca, cb] = two_point_crossover(a, b, rng);
            for (int i = 0; i < 12; ++i) {
                const bool straight = ca[i] == a[i] && cb[i] == b[i];
                const bool crossed = ca[i] == b[i] && cb[i] == a[i];
                CHECK((straight || crossed));
            }
            std::vector<int> parents = a;
            parents.insert(parents.end(), b.begin(), b.end());
            std::vector<int> children = ca;
            children.insert(children.end(), cb.begin(), cb.end());
            CHECK(multiset_of(parents) == multiset_of(children));
        }
    }
    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(two_point_crossover({1, 2}, {1, 2, 3}, rng), std::invalid_argument);
    }
}

TEST_CASE("swap mutation") {
    Rng rng(3);

    SUBCASE("rate zero is the identity") {
        std::vector<int> genes = {4, 1, 3};
        swap_mutation(genes, 0.0, rng);
        CHECK(genes == std::vector<int>{4, 1, 3});
    }
    SUBCASE("rate one on a pair always swaps it") {
        std::vector<int> genes = {10, 20};
        swap_mutation(genes, 1.0, rng);
        CHECK(genes == std::vector<int>{20, 10});
    }
    SUBCASE("mutation only permutes") {
        for (int round = 0; round < 100; ++round) {
            std::vector<int> genes(30);
            for (auto& g : genes) g = static_cast<int>(rng.bounded(7));
            const auto before = multiset_of(genes);
            swap_mutation(genes, 0.5, rng);
            CHECK(multiset_of(genes) == before);
        }
    }
}

TEST_CASE("gaba decode") {
    // Category blocks of 3, 5 and 2 nodes; S1 has three VNFs (globals 1..3),
    // S2 has two (globals 4..5).
    const Infrastructure infra = categories({{3, 5.0, 25.0, 2.5, 0.01, 0.001},
                                             {5, 4.0, 20.0, 2.0, 0.01, 0.001},
                                             {2, 1.0, 5.0, 0.5, 0.04, 0.004}});
    Workload work;
    work.sfcs.push_back(chain({10, 10, 10}, 100, 0.9, BackupStrategy::DedicatedActive));
    work.sfcs.push_back(chain({10, 10}, 100, 0.9, BackupStrategy::DedicatedActive));
    const ObjectiveConfig cfg;

    SUBCASE("worked genome example") {
        const std::vector<int> genes = {1, 3, 0, /*C2*/ 0, 5, 4, 4, 3, /*C3*/ 1, 2};
        const GabaDecodeResult out =
            gaba_decode(genes, infra, work, cfg, DuplicateResolution::LowestCategory);

        CHECK(out.missing.empty());
        // V_{2,1} (global 4): two copies in C2 -> primary plus one backup
        CHECK(out.solution.assignment[1][0] == 1);
        CHECK(out.solution.dedicated_backups[1][0] == 1);
        // V_{1,1} (global 1) appears in C1 and C3; pinned policy keeps C1
        CHECK(out.solution.assignment[0][0] == 0);
        // V_{1,3} (global 3) appears in C1 and C2; pinned policy keeps C1
        CHECK(out.solution.assignment[0][2] == 0);
        CHECK(out.solution.dedicated_backups[0][2] == 0);
        // V_{1,2} (global 2) lives only in C3
        CHECK(out.solution.assignment[0][1] == 2);
        // V_{2,2} (global 5) lives only in C2
        CHECK(out.solution.assignment[1][1] == 1);
    }

    SUBCASE("majority rule keeps the category with most copies") {
        // global 1: one copy in C1, two in C2
        const std::vector<int> genes = {1, 0, 0, 1, 1, 0, 0, 0, 2, 3};
        const GabaDecodeResult out = gaba_decode(genes, infra, work, cfg);
        CHECK(out.solution.assignment[0][0] == 1);
        CHECK(out.solution.dedicated_backups[0][0] == 1);
        // globals 4 and 5 never appear
        CHECK(out.missing == std::vector<int>{3, 4});
    }

    SUBCASE("all-zero genome reports every VNF missing") {
        const std::vector<int> genes(infra.total_nodes(), 0);
        const GabaDecodeResult out = gaba_decode(genes, infra, work, cfg);
        CHECK(static_cast<int>(out.missing.size()) == work.total_vnfs());
    }

    SUBCASE("exactly-once genome places with zero backups") {
        const std::vector<int> genes = {1, 2, 3, 4, 5, 0, 0, 0, 0, 0};
        const GabaDecodeResult out = gaba_decode(genes, infra, work, cfg);
        CHECK(out.missing.empty());
        for (const auto& row : out.solution.dedicated_backups) {
            for (int b : row) CHECK(b == 0);
        }
    }

    SUBCASE("shared strategies pool the extras per category") {
        Workload shared;
        shared.sfcs.push_back(chain({10, 10, 10}, 100, 0.9, BackupStrategy::SharedStandby));
        shared.sfcs.push_back(chain({10, 10}, 100, 0.9, BackupStrategy::SharedStandby));
        const std::vector<int> genes = {1, 1, 2, /*C2*/ 2, 3, 0, 4, 5, /*C3*/ 0, 0};
        const GabaDecodeResult out = gaba_decode(genes, infra, shared, cfg);
        CHECK(out.missing.empty());
        // global 1 doubled in C1, global 2 split C1/C2 -> majority tie, C1 wins
        CHECK(out.solution.assignment[0][1] == 0);
        CHECK(out.solution.shared_backups[0][0] == 1);
        CHECK(out.solution.shared_backups[0][1] == 0);
    }

    SUBCASE("trim releases surplus the target does not need") {
        Workload easy;
        easy.sfcs.push_back(chain({10}, 100, 0.9, BackupStrategy::DedicatedActive));
        // three copies of the only VNF in C1: two surplus backups for a 0.9 target
        const std::vector<int> genes = {1, 1, 1, 0, 0, 0, 0, 0, 0, 0};
        const GabaDecodeResult kept = gaba_decode(genes, infra, easy, cfg);
        CHECK(kept.solution.dedicated_backups[0][0] == 2);
        const GabaDecodeResult trimmed =
            gaba_decode(genes, infra, easy, cfg, DuplicateResolution::MajorityCategory,
                        SurplusPolicy::TrimToNeed);
        CHECK(trimmed.solution.dedicated_backups[0][0] == 0);

        // a 0.9999 target on C3 (f_a = 0.04) genuinely needs one backup
        Workload strict;
        strict.sfcs.push_back(chain({10}, 100, 0.9999, BackupStrategy::DedicatedActive));
        const std::vector<int> c3_genes = {0, 0, 0, 0, 0, 0, 0, 0, 1, 1};
        const GabaDecodeResult needed =
            gaba_decode(c3_genes, infra, strict, cfg, DuplicateResolution::MajorityCategory,
                        SurplusPolicy::TrimToNeed);
        CHECK(needed.solution.dedicated_backups[0][0] == 1);
    }

    SUBCASE("fitness is deterministic and penalizes missing VNFs") {
        const NormalizationBounds bounds = normalization_bounds(infra, work);
        const std::vector<int> genes = {1, 2, 0, 0, 5, 4, 3, 0, 0, 0};
        const double f1 = gaba_fitness(genes, infra, work, cfg, bounds);
        const double f2 = gaba_fitness(genes, infra, work, cfg, bounds);
        CHECK(f1 == f2);

        const std::vector<int> missing_one = {1, 2, 0, 0, 0, 4, 3, 0, 0, 0};
        CHECK(gaba_fitness(missing_one, infra, work, cfg, bounds) >= cfg.penalty_weight);
    }
}

TEST_CASE("raba decode") {
    const Infrastructure infra = categories({{4, 5.0, 25.0, 2.5, 0.01, 0.001},
                                             {4, 1.0, 5.0, 0.5, 0.04, 0.004}});
    const ObjectiveConfig cfg;

    SUBCASE("no backups when targets are already met") {
        Workload work;
        work.sfcs.push_back(chain({10, 10}, 100, 0.9, BackupStrategy::SharedActive));
        Rng rng(1);
        const RabaDecodeResult out = raba_decode({0, 0}, infra, work, cfg, rng);
        CHECK(out.unmet_reliability == 0);
        CHECK(out.solution.shared_backups[0][0] == 0);
        CHECK(out.solution.assignment[0] == std::vector<int>{0, 0});
    }

    SUBCASE("adds exactly the backups the target needs") {
        Workload work;
        // 0.999 on C2 (f_a = 0.04) needs exactly two shared backups
        work.sfcs.push_back(chain({10}, 100, 0.999, BackupStrategy::SharedActive));
        Rng rng(2);
        const RabaDecodeResult out = raba_decode({1}, infra, work, cfg, rng);
        CHECK(out.unmet_reliability == 0);
        CHECK(out.solution.shared_backups[0][1] == 2);
        CHECK(sfc_reliability(out.solution, 0, infra, work, cfg) >= 0.999 - 1e-12);
        // one fewer would miss the target: the loop stopped at first satisfaction
        Solution fewer = out.solution;
        fewer.shared_backups[0][1] = 1;
        CHECK(sfc_reliability(fewer, 0, infra, work, cfg) < 0.999);
    }

    SUBCASE("penalizes when free nodes run out before the target") {
        Infrastructure small = categories({{2, 5.0, 25.0, 2.5, 0.2, 0.02},
                                           {4, 1.0, 5.0, 0.5, 0.04, 0.004}});
        Workload work;
        work.sfcs.push_back(chain({10, 10}, 100, 0.999999999, BackupStrategy::DedicatedStandby));
        Rng rng(3);
        // both VNFs on C1: no free node is left after one backup
        const RabaDecodeResult out = raba_decode({0, 0}, small, work, cfg, rng);
        CHECK(out.unmet_reliability == 1);
        const int used = 2 + out.solution.dedicated_backups[0][0] +
                         out.solution.dedicated_backups[0][1];
        CHECK(used == 2); // C1 has two nodes, both primaries; nothing left
    }

    SUBCASE("dedicated backups attach to a VNF hosted in the drawn category") {
        Workload work;
        work.sfcs.push_back(chain({10, 10}, 100, 0.9999, BackupStrategy::DedicatedStandby));
        Rng rng(4);
        const RabaDecodeResult out = raba_decode({0, 1}, infra, work, cfg, rng);
        CHECK(out.unmet_reliability == 0);
        // every backup sits in its VNF's category by construction
        CHECK_NOTHROW(check_solution_shape(out.solution, infra, work));
    }
}

TEST_CASE("run_ga") {
    const GeneratedInstance tiny = generate_dataset(GeneratorSpec::tiny(), 5);
    const ObjectiveConfig cfg;
    GaConfig ga;
    ga.generations = 30;
    ga.population = 20;
    ga.crossovers_per_generation = 16;
    ga.elites = 4;
    ga.tournament_size = 3;
    ga.seed = 9;

    SUBCASE("config validation") {
        GaConfig bad = ga;
        bad.elites = 0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = ga;
        bad.tournament_size = 1;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = ga;
        bad.mutation_rate = 1.5;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    }

    SUBCASE("zero generations returns the best of the initial population") {
        GaConfig zero = ga;
        zero.generations = 0;
        const SolveResult r =
            run_ga(Encoding::GapGaba, tiny.infrastructure, tiny.workload, cfg, zero);
        CHECK(r.fitness_history.size() == 1);
        CHECK(r.best_report.fitness == r.fitness_history.front());
    }

    SUBCASE("fitness history never increases") {
        for (const Encoding encoding : {Encoding::GapGaba, Encoding::GapRaba}) {
            const SolveResult r =
                run_ga(encoding, tiny.infrastructure, tiny.workload, cfg, ga);
            REQUIRE(r.fitness_history.size() == 31);
            for (std::size_t g = 1; g < r.fitness_history.size(); ++g) {
                CHECK(r.fitness_history[g] <= r.fitness_history[g - 1]);
            }
            CHECK(r.best_report.fitness == r.fitness_history.back());
        }
    }

    SUBCASE("bit-reproducible per seed and across worker counts") {
        for (const Encoding encoding : {Encoding::GapGaba, Encoding::GapRaba}) {
            GaConfig one = ga;
            one.threads = 1;
            GaConfig four = ga;
            four.threads = 4;
            const SolveResult a =
                run_ga(encoding, tiny.infrastructure, tiny.workload, cfg, one);
            const SolveResult b =
                run_ga(encoding, tiny.infrastructure, tiny.workload, cfg, four);
            CHECK(a.fitness_history == b.fitness_history);
            CHECK(a.best_solution.assignment == b.best_solution.assignment);
            CHECK(a.best_solution.dedicated_backups == b.best_solution.dedicated_backups);
            CHECK(a.best_solution.shared_backups == b.best_solution.shared_backups);
            CHECK(a.best_report.fitness == b.best_report.fitness);
        }
    }

    SUBCASE("rejects instances whose primaries cannot fit") {
        Infrastructure one_node = categories({{1, 1.0, 1.0, 0.1, 0.01, 0.001}});
        Workload work;
        work.sfcs.push_back(chain({1, 1}, 10, 0.5, BackupStrategy::DedicatedActive));
        CHECK_THROWS_AS(run_ga(Encoding::GapGaba, one_node, work, cfg, ga), DataError);
    }

    SUBCASE("finds the exhaustive optimum on tiny instances") {
        // exploration-heavy profile: weak selection plus strong shuffling
        // crosses the cost valley between the zero-backup corner and the
        // feasible optimum on oracle-scale instances
        GaConfig strong;
        strong.generations = 200;
        strong.population = 50;
        strong.crossovers_per_generation = 48;
        strong.elites = 2;
        strong.tournament_size = 2;
        strong.mutation_rate = 0.5;

        int hits = 0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            GeneratorSpec spec = GeneratorSpec::tiny();
            spec.strategies = {static_cast<int>(seed % 4) + 1};
            const GeneratedInstance inst = generate_dataset(spec, 100 + seed);
            const SolveResult exact =
                exhaustive_solve(inst.infrastructure, inst.workload, cfg);
            strong.seed = seed;
            const SolveResult evolved =
                run_ga(Encoding::GapGaba, inst.infrastructure, inst.workload, cfg, strong);
            if (evolved.best_report.fitness <=
                exact.best_report.fitness + 1e-9 * std::max(1.0, exact.best_report.fitness)) {
                ++hits;
            }
            CHECK(evolved.best_report.fitness >= exact.best_report.fitness - 1e-9);
        }
        CHECK(hits >= 9);
    }
}

TEST_CASE("random baseline") {
    const ObjectiveConfig cfg;

    SUBCASE("returns the first feasible draw") {
        Infrastructure infra = categories({{6, 5.0, 1.0, 0.1, 0.0, 0.0}});
        Workload work;
        work.sfcs.push_back(chain({1, 1}, 100, 0.5, BackupStrategy::DedicatedActive));
        const SolveResult r = random_baseline(infra, work, cfg, 50, 3);
        CHECK(r.feasible());
        CHECK(r.fitness_history.size() == 1);
    }

    SUBCASE("flags infeasibility after exhausting the attempt budget") {
        Infrastructure infra = categories({{3, 5.0, 1.0, 0.1, 0.9, 0.09}});
        Workload work;
        // no amount of redundancy on three nodes reaches eight nines
        work.sfcs.push_back(chain({1, 1}, 100, 0.99999999, BackupStrategy::SharedStandby));
        const SolveResult r = random_baseline(infra, work, cfg, 25, 4);
        CHECK_FALSE(r.feasible());
        CHECK(r.fitness_history.size() == 25);
        CHECK(r.best_report.penalty_count >= 1);
    }

    SUBCASE("deterministic per seed") {
        Infrastructure infra = categories({{4, 5.0, 2.0, 0.2, 0.05, 0.005},
                                           {4, 1.0, 1.0, 0.1, 0.05, 0.005}});
        Workload work;
        work.sfcs.push_back(chain({5, 5}, 100, 0.99, BackupStrategy::SharedActive));
        const SolveResult a = random_baseline(infra, work, cfg, 100, 8);
        const SolveResult b = random_baseline(infra, work, cfg, 100, 8);
        CHECK(a.best_report.fitness == b.best_report.fitness);
        CHECK(a.best_solution.assignment == b.best_solution.assignment);
    }
}

TEST_CASE("exhaustive solver") {
    const ObjectiveConfig cfg;

    SUBCASE("matches a hand enumeration on the smallest instance") {
        const Infrastructure infra = categories({{2, 5.0, 25.0, 2.5, 0.05, 0.005},
                                                 {2, 1.0, 5.0, 0.5, 0.2, 0.02}});
        Workload work;
        work.sfcs.push_back(chain({10}, 9.0, 0.99, BackupStrategy::DedicatedActive));
        const NormalizationBounds bounds = normalization_bounds(infra, work);

        // hand enumeration: category x backups within free capacity
        double best = 1e300;
        for (int cat = 0; cat < 2; ++cat) {
            for (int b = 0; b <= 1; ++b) {
                Solution sol = Solution::zero(work, 2);
                sol.assignment[0][0] = cat;
                sol.dedicated_backups[0][0] = b;
                best = std::min(best, evaluate(sol, infra, work, cfg, bounds).fitness);
            }
        }

        const SolveResult r = exhaustive_solve(infra, work, cfg);
        CHECK(r.optimal);
        CHECK(r.best_report.fitness == Near{best, 1e-12});
    }

    SUBCASE("never above the GA on the same instance") {
        const GeneratedInstance inst = generate_dataset(GeneratorSpec::tiny(), 17);
        const SolveResult exact = exhaustive_solve(inst.infrastructure, inst.workload, cfg);
        GaConfig ga;
        ga.generations = 50;
        ga.population = 30;
        ga.crossovers_per_generation = 24;
        ga.elites = 6;
        ga.seed = 17;
        const SolveResult evolved =
            run_ga(Encoding::GapGaba, inst.infrastructure, inst.workload, cfg, ga);
        CHECK(exact.best_report.fitness <= evolved.best_report.fitness + 1e-12);
    }

    SUBCASE("symmetric categories break ties toward the smallest encoding") {
        const Infrastructure infra = categories({{2, 2.0, 10.0, 1.0, 0.05, 0.005},
                                                 {2, 2.0, 10.0, 1.0, 0.05, 0.005}});
        Workload work;
        work.sfcs.push_back(chain({4}, 100.0, 0.9, BackupStrategy::SharedActive));
        const SolveResult r = exhaustive_solve(infra, work, cfg);
        CHECK(r.best_solution.assignment[0][0] == 0);
    }

    SUBCASE("refuses oversized search spaces with the computed size") {
        const GeneratedInstance inst = generate_dataset(GeneratorSpec::tiny(), 23);
        ExhaustiveLimits limits;
        limits.max_evaluations = 3;
        try {
            exhaustive_solve(inst.infrastructure, inst.workload, cfg, limits);
            FAIL("expected refusal");
        } catch (const SolverRefusal& refusal) {
            CHECK(refusal.search_space_size > 3);
            CHECK(std::string(refusal.what()).find("cap") != std::string::npos);
        }
    }
}
