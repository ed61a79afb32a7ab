#include "sfcplace/solvers.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <numeric>

#include "sfcplace/parallel.hpp"
#include "sfcplace/reliability.hpp"

namespace sfcplace {

void GaConfig::validate() const {
    if (generations < 0) throw std::invalid_argument("ga: generations must be >= 0");
    if (population < 2) throw std::invalid_argument("ga: population must be >= 2");
    if (crossovers_per_generation < 1)
        throw std::invalid_argument("ga: crossovers_per_generation must be >= 1");
    if (elites < 1 || elites > population)
        throw std::invalid_argument("ga: elites must be in 1..population");
    if (mutation_rate < 0.0 || mutation_rate > 1.0)
        throw std::invalid_argument("ga: mutation_rate must be in [0,1]");
    if (tournament_size < 2 || tournament_size > population)
        throw std::invalid_argument("ga: tournament_size must be in 2..population");
}

int tournament_select(const std::vector<double>& fitness, int tournament_size, Rng& rng) {
    int best = static_cast<int>(rng.pick_index(fitness.size()));
    for (int round = 1; round < tournament_size; ++round) {
        const int challenger = static_cast<int>(rng.pick_index(fitness.size()));
        if (fitness[challenger] < fitness[best]) best = challenger;
    }
    return best;
}

void crossover_segment(std::vector<int>& a, std::vector<int>& b, int cut_a, int cut_b) {
    for (int i = cut_a; i < cut_b; ++i) std::swap(a[i], b[i]);
}

std::pair<std::vector<int>, std::vector<int>> two_point_crossover(const std::vector<int>& parent_a,
                                                                  const std::vector<int>& parent_b,
                                                                  Rng& rng) {
    if (parent_a.size() != parent_b.size())
        throw std::invalid_argument("crossover: parents must have equal length");
    const int len = static_cast<int>(parent_a.size());
    int p = static_cast<int>(rng.uniform_int(0, len));
    int q = static_cast<int>(rng.uniform_int(0, len));
    while (q == p) q = static_cast<int>(rng.uniform_int(0, len));
    if (p > q) std::swap(p, q);

    auto child_a = parent_a;
    auto child_b = parent_b;
    crossover_segment(child_a, child_b, p, q);
    return {std::move(child_a), std::move(child_b)};
}

void swap_mutation(std::vector<int>& genes, double rate, Rng& rng) {
    if (genes.size() < 2) throw std::invalid_argument("mutation: chromosome too short");
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("mutation: rate outside [0,1]");
    const int len = static_cast<int>(genes.size());

    // `rate` is the expected fraction of genes disturbed; one swap touches
    // two positions. The count is capped so offspring stay within a few
    // moves of their parents on large genomes, and the fractional remainder
    // is applied probabilistically so short chromosomes still mutate at the
    // configured rate.
    const double expected_swaps = std::min(8.0, rate * len / 2.0);
    int swaps = static_cast<int>(expected_swaps);
    if (rng.uniform01() < expected_swaps - swaps) ++swaps;

    for (int s = 0; s < swaps; ++s) {
        const int a = static_cast<int>(rng.pick_index(len));
        int b = static_cast<int>(rng.pick_index(len));
        while (b == a) b = static_cast<int>(rng.pick_index(len));
        std::swap(genes[a], genes[b]);
    }
}

namespace {

// Deactivate backups an SFC does not need for its target: groups are
// visited in canonical order and each count is binary-searched down to the
// smallest value keeping the SFC's reliability at or above the target.
// Surplus nodes go back to idle.
void trim_surplus_backups(Solution& solution, int k, const Infrastructure& infra,
                          const Workload& workload, const ObjectiveConfig& cfg) {
    const SfcRequest& sfc = workload.sfcs[k];
    const double t = cfg.holding_time;

    // One redundancy group per dedicated VNF or per hosting category.
    struct Group {
        int* count;
        int category;
        int primaries;
    };
    std::vector<Group> groups;
    if (is_dedicated(sfc.strategy)) {
        for (int j = 0; j < sfc.length(); ++j) {
            const int i = solution.assignment[k][j];
            if (i != kUnassigned) groups.push_back({&solution.dedicated_backups[k][j], i, 1});
        }
    } else {
        std::vector<int> hosted(infra.category_count(), 0);
        for (int j = 0; j < sfc.length(); ++j) {
            if (solution.assignment[k][j] != kUnassigned) ++hosted[solution.assignment[k][j]];
        }
        for (int i = 0; i < infra.category_count(); ++i) {
            if (hosted[i] > 0) groups.push_back({&solution.shared_backups[k][i], i, hosted[i]});
        }
    }
    if (groups.empty()) return;

    // Release surplus from the priciest groups first so whatever
    // redundancy survives sits on the cheapest nodes.
    const bool standby = is_standby(sfc.strategy);
    std::stable_sort(groups.begin(), groups.end(), [&](const Group& a, const Group& b) {
        const double price_a = standby ? infra.categories[a.category].cost_standby
                                       : infra.categories[a.category].cost_active;
        const double price_b = standby ? infra.categories[b.category].cost_standby
                                       : infra.categories[b.category].cost_active;
        return price_a > price_b;
    });

    const auto group_reliability = [&](const Group& g, int backups) {
        const NodeCategory& cat = infra.categories[g.category];
        switch (sfc.strategy) {
            case BackupStrategy::DedicatedActive:
                return rel_dedicated_active(backups, failure_cdf(cat.fail_active, t));
            case BackupStrategy::DedicatedStandby:
                return rel_dedicated_standby({1, backups, cat.fail_active, cat.fail_standby, t});
            case BackupStrategy::SharedActive:
                return rel_shared_active(g.primaries, backups, failure_cdf(cat.fail_active, t));
            case BackupStrategy::SharedStandby:
                return rel_shared_standby(
                    {g.primaries, backups, cat.fail_active, cat.fail_standby, t});
        }
        return 1.0;
    };

    std::vector<double> factor(groups.size());
    double omega = 1.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        factor[g] = group_reliability(groups[g], *groups[g].count);
        omega *= factor[g];
    }
    if (!reliability_met(omega, sfc.reliability_target)) {
        return; // keep everything: more redundancy cannot hurt a failing SFC
    }

    for (std::size_t g = 0; g < groups.size(); ++g) {
        // Factors sit above the target (all near 1), so dividing one out
        // is well conditioned.
        const double others = omega / factor[g];
        int lo = 0;
        int hi = *groups[g].count;
        double lo_factor = group_reliability(groups[g], lo);
        if (!reliability_met(others * lo_factor, sfc.reliability_target)) {
            while (hi - lo > 1) { // reliability is monotone in the count
                const int mid = (lo + hi) / 2;
                const double mid_factor = group_reliability(groups[g], mid);
                if (reliability_met(others * mid_factor, sfc.reliability_target)) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            lo = hi;
            lo_factor = group_reliability(groups[g], lo);
        }
        *groups[g].count = lo;
        factor[g] = lo_factor;
        omega = others * lo_factor;
    }
}

} // namespace

GabaDecodeResult gaba_decode(const std::vector<int>& genes, const Infrastructure& infra,
                             const Workload& workload, const ObjectiveConfig& cfg,
                             DuplicateResolution duplicates, SurplusPolicy surplus) {
    const int m = infra.category_count();
    const int total_vnfs = workload.total_vnfs();

    // copies[v][i]: nodes in category i carrying the VNF with global index v.
    std::vector<std::vector<int>> copies(total_vnfs, std::vector<int>(m, 0));
    int node = 0;
    for (int i = 0; i < m; ++i) {
        for (int slot = 0; slot < infra.categories[i].node_count; ++slot, ++node) {
            const int gene = genes[node];
            if (gene >= 1 && gene <= total_vnfs) ++copies[gene - 1][i];
        }
    }

    GabaDecodeResult out;
    out.solution = Solution::zero(workload, m);
    for (int v = 0; v < total_vnfs; ++v) {
        // A VNF spread over several categories keeps exactly one; nodes in
        // the losing categories fall back to idle. The category holding the
        // most copies wins (ties to the lowest index), so a chromosome
        // always decodes to the same candidate.
        int chosen = -1;
        for (int i = 0; i < m; ++i) {
            if (copies[v][i] == 0) continue;
            if (chosen < 0) {
                chosen = i;
            } else if (duplicates == DuplicateResolution::MajorityCategory &&
                       copies[v][i] > copies[v][chosen]) {
                chosen = i;
            }
        }
        if (chosen < 0) {
            out.missing.push_back(v);
            continue;
        }

        const auto [k, j] = workload.vnf_at(v);
        out.solution.assignment[k][j] = chosen;
        const int extras = copies[v][chosen] - 1;
        if (is_dedicated(workload.sfcs[k].strategy)) {
            out.solution.dedicated_backups[k][j] = extras;
        } else {
            out.solution.shared_backups[k][chosen] += extras;
        }
    }

    if (surplus == SurplusPolicy::TrimToNeed) {
        for (int k = 0; k < workload.sfc_count(); ++k) {
            trim_surplus_backups(out.solution, k, infra, workload, cfg);
        }
    }
    return out;
}

double gaba_fitness(const std::vector<int>& genes, const Infrastructure& infra,
                    const Workload& workload, const ObjectiveConfig& cfg,
                    const NormalizationBounds& bounds, SurplusPolicy surplus) {
    const GabaDecodeResult decoded = gaba_decode(genes, infra, workload, cfg,
                                                 DuplicateResolution::MajorityCategory, surplus);
    // each physical node hosts at most one role, so decoded usage fits
    assert(capacity_usage(decoded.solution, infra, workload).ok);
    return evaluate(decoded.solution, infra, workload, cfg, bounds).fitness;
}

RabaDecodeResult raba_decode(const std::vector<int>& genes, const Infrastructure& infra,
                             const Workload& workload, const ObjectiveConfig& cfg, Rng& rng) {
    const int m = infra.category_count();

    RabaDecodeResult out;
    out.solution = Solution::zero(workload, m);
    std::vector<int> primaries(m, 0);
    for (int v = 0; v < workload.total_vnfs(); ++v) {
        const auto [k, j] = workload.vnf_at(v);
        out.solution.assignment[k][j] = genes[v];
        ++primaries[genes[v]];
    }

    // Free nodes after hosting primaries; an overloaded category offers
    // none (the evaluator charges the overflow as a capacity violation).
    std::vector<int> free_nodes(m, 0);
    for (int i = 0; i < m; ++i) {
        free_nodes[i] = std::max(0, infra.categories[i].node_count - primaries[i]);
    }

    std::vector<int> order(workload.sfc_count());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    std::vector<int> eligible;
    std::vector<int> vnfs_here;
    for (const int k : order) {
        const SfcRequest& sfc = workload.sfcs[k];
        std::vector<int> hosted(m, 0);
        for (int j = 0; j < sfc.length(); ++j) ++hosted[out.solution.assignment[k][j]];

        double omega = sfc_reliability(out.solution, k, infra, workload, cfg);
        while (!reliability_met(omega, sfc.reliability_target)) {
            eligible.clear();
            for (int i = 0; i < m; ++i) {
                if (hosted[i] > 0 && free_nodes[i] > 0) eligible.push_back(i);
            }
            if (eligible.empty()) {
                ++out.unmet_reliability;
                break;
            }
            const int i = eligible[rng.pick_index(eligible.size())];
            --free_nodes[i];
            if (is_shared(sfc.strategy)) {
                ++out.solution.shared_backups[k][i];
            } else {
                vnfs_here.clear();
                for (int j = 0; j < sfc.length(); ++j) {
                    if (out.solution.assignment[k][j] == i) vnfs_here.push_back(j);
                }
                ++out.solution.dedicated_backups[k][vnfs_here[rng.pick_index(vnfs_here.size())]];
            }
            omega = sfc_reliability(out.solution, k, infra, workload, cfg);
        }
    }
    return out;
}

double raba_fitness(const std::vector<int>& genes, const Infrastructure& infra,
                    const Workload& workload, const ObjectiveConfig& cfg,
                    const NormalizationBounds& bounds, Rng& rng) {
    const RabaDecodeResult decoded = raba_decode(genes, infra, workload, cfg, rng);
    return evaluate(decoded.solution, infra, workload, cfg, bounds).fitness;
}

namespace {

struct Member {
    std::vector<int> genes;
    double fitness = 0.0;
    std::uint64_t decode_seed = 0;
};

double member_fitness(Encoding encoding, const std::vector<int>& genes,
                      const Infrastructure& infra, const Workload& workload,
                      const ObjectiveConfig& cfg, const NormalizationBounds& bounds, Rng& rng) {
    return encoding == Encoding::GapGaba
               ? gaba_fitness(genes, infra, workload, cfg, bounds, SurplusPolicy::TrimToNeed)
               : raba_fitness(genes, infra, workload, cfg, bounds, rng);
}

Solution member_solution(Encoding encoding, const Member& member, const Infrastructure& infra,
                         const Workload& workload, const ObjectiveConfig& cfg) {
    if (encoding == Encoding::GapGaba) {
        return gaba_decode(member.genes, infra, workload, cfg,
                           DuplicateResolution::MajorityCategory, SurplusPolicy::TrimToNeed)
            .solution;
    }
    Rng rng(member.decode_seed);
    return raba_decode(member.genes, infra, workload, cfg, rng).solution;
}

} // namespace

SolveResult run_ga(Encoding encoding, const Infrastructure& infra, const Workload& workload,
                   const ObjectiveConfig& cfg, const GaConfig& ga) {
    ga.validate();
    const NormalizationBounds bounds = normalization_bounds(infra, workload);
    const auto started = std::chrono::steady_clock::now();

    const int gene_count =
        encoding == Encoding::GapGaba ? infra.total_nodes() : workload.total_vnfs();
    // GABA genes span 0..total_vnfs (0 = idle node); RABA genes are category indices.
    const std::uint64_t gene_values = encoding == Encoding::GapGaba
                                          ? static_cast<std::uint64_t>(workload.total_vnfs()) + 1
                                          : static_cast<std::uint64_t>(infra.category_count());
    const int threads = resolve_thread_count(ga.threads);

    Rng master(ga.seed);
    std::vector<Member> population(ga.population);
    for (auto& member : population) {
        member.genes.resize(gene_count);
        for (int g = 0; g < gene_count; ++g) {
            member.genes[g] = static_cast<int>(master.bounded(gene_values));
        }
    }

    // Every candidate decodes under its own (seed, generation, slot) stream,
    // so fitness values are identical for any worker count.
    const auto evaluate_members = [&](std::vector<Member>& members, int generation) {
        parallel_for(static_cast<int>(members.size()), threads, [&](int slot) {
            Member& member = members[slot];
            member.decode_seed = derive_seed(ga.seed, static_cast<std::uint64_t>(generation),
                                             static_cast<std::uint64_t>(slot));
            Rng rng(member.decode_seed);
            member.fitness = member_fitness(encoding, member.genes, infra, workload, cfg, bounds, rng);
        });
    };
    const auto by_fitness = [](const Member& a, const Member& b) { return a.fitness < b.fitness; };

    evaluate_members(population, 0);
    std::stable_sort(population.begin(), population.end(), by_fitness);

    SolveResult result;
    result.seed = ga.seed;
    result.fitness_history.reserve(ga.generations + 1);
    result.fitness_history.push_back(population.front().fitness);

    std::vector<double> parent_fitness(ga.population);
    std::vector<Member> offspring;
    for (int generation = 1; generation <= ga.generations; ++generation) {
        for (int s = 0; s < ga.population; ++s) parent_fitness[s] = population[s].fitness;

        offspring.clear();
        offspring.reserve(ga.crossovers_per_generation);
        while (static_cast<int>(offspring.size()) < ga.crossovers_per_generation) {
            const int pa = tournament_select(parent_fitness, ga.tournament_size, master);
            const int pb = tournament_select(parent_fitness, ga.tournament_size, master);
            auto children = two_point_crossover(population[pa].genes, population[pb].genes, master);
            swap_mutation(children.first, ga.mutation_rate, master);
            swap_mutation(children.second, ga.mutation_rate, master);
            offspring.push_back({std::move(children.first), 0.0, 0});
            if (static_cast<int>(offspring.size()) < ga.crossovers_per_generation) {
                offspring.push_back({std::move(children.second), 0.0, 0});
            }
        }
        evaluate_members(offspring, generation);

        // Generational replacement with elite memory: the elites keep their
        // cached fitness, every slot below them is refilled from the
        // offspring (best first). Offspring always displace non-elite
        // parents, which keeps the population from collapsing onto the
        // incumbent's basin; old members pad the tail only when too few
        // offspring were produced.
        std::stable_sort(offspring.begin(), offspring.end(), by_fitness);
        std::vector<Member> next;
        next.reserve(ga.population);
        for (int s = 0; s < ga.elites; ++s) next.push_back(std::move(population[s]));
        for (auto& child : offspring) {
            if (static_cast<int>(next.size()) >= ga.population) break;
            next.push_back(std::move(child));
        }
        for (int s = ga.elites;
             static_cast<int>(next.size()) < ga.population && s < ga.population; ++s) {
            next.push_back(std::move(population[s]));
        }
        std::stable_sort(next.begin(), next.end(), by_fitness);
        population = std::move(next);

        result.fitness_history.push_back(population.front().fitness);
    }

    const Member& best = population.front();
    result.best_solution = member_solution(encoding, best, infra, workload, cfg);
    result.best_report = evaluate(result.best_solution, infra, workload, cfg, bounds);
    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

SolveResult random_baseline(const Infrastructure& infra, const Workload& workload,
                            const ObjectiveConfig& cfg, int attempts, std::uint64_t seed) {
    if (attempts < 1) throw std::invalid_argument("baseline: attempts must be >= 1");
    const NormalizationBounds bounds = normalization_bounds(infra, workload);
    const auto started = std::chrono::steady_clock::now();

    Rng rng(seed);
    const int gene_count = workload.total_vnfs();
    const int m = infra.category_count();

    SolveResult result;
    result.seed = seed;
    bool have_best = false;

    // Rejection sampling over whole solutions: a uniform placement, then
    // per category a backup vector drawn uniformly from all vectors fitting
    // the remaining capacity (stars-and-bars bijection). The first feasible
    // draw wins; nothing is optimized.
    std::vector<int> primaries(m), free_nodes(m);
    std::vector<std::vector<int*>> category_vars(m);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        Solution sol = Solution::zero(workload, m);
        std::fill(primaries.begin(), primaries.end(), 0);
        for (int v = 0; v < gene_count; ++v) {
            const auto [k, j] = workload.vnf_at(v);
            const int cat = static_cast<int>(rng.bounded(m));
            sol.assignment[k][j] = cat;
            ++primaries[cat];
        }
        for (int i = 0; i < m; ++i) {
            free_nodes[i] = std::max(0, infra.categories[i].node_count - primaries[i]);
            category_vars[i].clear();
        }
        for (int k = 0; k < workload.sfc_count(); ++k) {
            const SfcRequest& sfc = workload.sfcs[k];
            if (is_dedicated(sfc.strategy)) {
                for (int j = 0; j < sfc.length(); ++j) {
                    category_vars[sol.assignment[k][j]].push_back(
                        &sol.dedicated_backups[k][j]);
                }
            } else {
                std::vector<bool> hosted(m, false);
                for (int j = 0; j < sfc.length(); ++j) hosted[sol.assignment[k][j]] = true;
                for (int i = 0; i < m; ++i) {
                    if (hosted[i]) category_vars[i].push_back(&sol.shared_backups[k][i]);
                }
            }
        }
        for (int i = 0; i < m; ++i) {
            const int vars = static_cast<int>(category_vars[i].size());
            if (vars == 0 || free_nodes[i] == 0) continue;
            // Uniform vector with sum <= free: pick `vars` distinct marks
            // out of free+vars slots; the gaps between sorted marks are the
            // counts.
            std::vector<int> marks;
            marks.reserve(vars);
            const int slots = free_nodes[i] + vars;
            for (int picked = 0; picked < vars; ++picked) {
                int mark;
                do {
                    mark = static_cast<int>(rng.bounded(slots));
                } while (std::find(marks.begin(), marks.end(), mark) != marks.end());
                marks.push_back(mark);
            }
            std::sort(marks.begin(), marks.end());
            for (int v = 0; v < vars; ++v) {
                *category_vars[i][v] = v == 0 ? marks[0] : marks[v] - marks[v - 1] - 1;
            }
        }

        EvaluationReport report = evaluate(sol, infra, workload, cfg, bounds);
        const bool better =
            !have_best ||
            std::make_pair(report.penalty_count, report.fitness) <
                std::make_pair(result.best_report.penalty_count, result.best_report.fitness);
        if (better) {
            result.best_solution = std::move(sol);
            result.best_report = std::move(report);
            have_best = true;
        }
        result.fitness_history.push_back(result.best_report.fitness);
        if (result.best_report.feasible()) break; // first feasible draw wins
    }

    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

} // namespace sfcplace
