#include "sfcplace/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sfcplace/rng.hpp"

namespace sfcplace {

namespace {

void check_group(const GroupSpec& g) {
    if (g.primaries < 1) throw std::invalid_argument("group: primaries must be >= 1");
    if (g.backups < 0) throw std::invalid_argument("group: backups must be >= 0");
    if (g.fail_active < 0.0 || g.fail_standby < 0.0)
        throw std::invalid_argument("group: failure rates must be >= 0");
    if (g.horizon <= 0.0) throw std::invalid_argument("group: horizon must be > 0");
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// Survival of N actives backed by b cold standbys (fail_standby == 0):
// the failure count by t is Poisson(N * fa * t), the group survives while
// it stays <= b.
double cold_standby_survival(int primaries, int backups, double fail_active, double t) {
    const double mean = static_cast<double>(primaries) * fail_active * t;
    double term = std::exp(-mean);
    double sum = term;
    for (int n = 1; n <= backups; ++n) {
        term *= mean / n;
        sum += term;
    }
    return clamp01(sum);
}

// Alternating closed form for the warm-standby group. Evaluated in
// extended precision with compensated summation; the cancellation grows
// roughly like (N*fa/fs)^b, so the caller falls back to the Markov route
// when the result lands outside [0, 1] tolerance.
bool warm_standby_closed_form(int primaries, int backups, double fail_active,
                              double fail_standby, double t, double& out) {
    const long double lam = static_cast<long double>(primaries) * fail_active;
    const long double mu = fail_standby;
    const long double horizon = t;

    long double denom = 1.0L; // b! * mu^b
    for (int n = 1; n <= backups; ++n) denom *= static_cast<long double>(n) * mu;

    long double sum = 0.0L;
    long double comp = 0.0L; // Neumaier compensation
    long double binom = 1.0L;
    for (int n = 0; n <= backups; ++n) {
        if (n > 0) binom = binom * static_cast<long double>(backups - n + 1) / n;
        long double term = binom * expl(-(lam + n * mu) * horizon);
        for (int m = 0; m <= backups; ++m) {
            if (m != n) term *= lam + m * mu;
        }
        term /= denom;
        if (n % 2 == 1) term = -term;

        const long double t2 = sum + term;
        if (fabsl(sum) >= fabsl(term)) {
            comp += (sum - t2) + term;
        } else {
            comp += (term - t2) + sum;
        }
        sum = t2;
    }
    const double value = static_cast<double>(sum + comp);
    if (value < -1e-9 || value > 1.0 + 1e-9 || !std::isfinite(value)) return false;
    out = clamp01(value);
    return true;
}

// Closed form for b <= 12 and a usable standby rate; otherwise the exact
// Markov transient analysis of the same failure-count chain.
double warm_standby_survival(const GroupSpec& g) {
    if (g.backups == 0 || g.fail_active == 0.0) {
        return clamp01(std::exp(-static_cast<double>(g.primaries) * g.fail_active * g.horizon));
    }
    if (g.fail_standby == 0.0) {
        return cold_standby_survival(g.primaries, g.backups, g.fail_active, g.horizon);
    }
    if (g.fail_standby >= 1e-12 && g.backups <= 12) {
        double value = 0.0;
        if (warm_standby_closed_form(g.primaries, g.backups, g.fail_active, g.fail_standby,
                                     g.horizon, value)) {
            return value;
        }
    }
    return markov_group_reliability(g);
}

// One uniformized interval: advances the state distribution by dt and
// returns the Poisson-weighted mixture over jump counts.
std::vector<double> uniformized_step(std::vector<double> p, const std::vector<double>& rate,
                                     double big_rate, double dt) {
    const double q = big_rate * dt;
    const int transient = static_cast<int>(rate.size()); // states 0..b; p.back() absorbing
    std::vector<double> result(p.size(), 0.0);

    double pois = std::exp(-q);
    double cum = pois;
    for (std::size_t i = 0; i < p.size(); ++i) result[i] = pois * p[i];

    const int max_jumps =
        static_cast<int>(q + 12.0 * std::sqrt(q + 1.0)) + 64;
    std::vector<double> next(p.size());
    for (int n = 1; n <= max_jumps && cum < 1.0 - 1e-16; ++n) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int m = 0; m < transient; ++m) {
            const double hop = rate[m] / big_rate;
            next[m] += p[m] * (1.0 - hop);
            next[m + 1] += p[m] * hop;
        }
        next[transient] += p[transient];
        p.swap(next);
        pois *= q / n;
        cum += pois;
        for (std::size_t i = 0; i < p.size(); ++i) result[i] += pois * p[i];
    }
    // Residual Poisson mass beyond the truncation point.
    const double tail = std::max(0.0, 1.0 - cum);
    for (std::size_t i = 0; i < p.size(); ++i) result[i] += tail * p[i];
    return result;
}

} // namespace

double failure_cdf(double rate, double t) {
    if (t < 0.0) throw std::invalid_argument("failure_cdf: negative time");
    if (rate < 0.0) throw std::invalid_argument("failure_cdf: negative rate");
    return -std::expm1(-rate * t);
}

double rel_dedicated_active(int backups, double failure_prob) {
    if (backups < 0) throw std::invalid_argument("dedicated-active: backups must be >= 0");
    if (failure_prob < 0.0 || failure_prob > 1.0)
        throw std::invalid_argument("dedicated-active: failure probability outside [0,1]");
    return 1.0 - std::pow(failure_prob, backups + 1);
}

double rel_dedicated_standby(const GroupSpec& spec) {
    check_group(spec);
    if (spec.primaries != 1)
        throw std::invalid_argument("dedicated-standby: primaries must be 1");
    return warm_standby_survival(spec);
}

double rel_shared_active(int primaries, int backups, double failure_prob) {
    if (primaries < 1) throw std::invalid_argument("shared-active: primaries must be >= 1");
    if (backups < 0) throw std::invalid_argument("shared-active: backups must be >= 0");
    if (failure_prob < 0.0 || failure_prob > 1.0)
        throw std::invalid_argument("shared-active: failure probability outside [0,1]");
    if (failure_prob == 0.0) return 1.0;
    if (failure_prob == 1.0) return 0.0;

    // Binomial tail P(survivors >= primaries) out of primaries+backups
    // nodes; all terms positive, summed in log space.
    const int n = primaries + backups;
    const double log_s = std::log1p(-failure_prob);
    const double log_f = std::log(failure_prob);
    double sum = 0.0;
    for (int m = primaries; m <= n; ++m) {
        const double log_choose =
            std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
        sum += std::exp(log_choose + m * log_s + (n - m) * log_f);
    }
    return clamp01(sum);
}

double rel_shared_standby(const GroupSpec& spec) {
    check_group(spec);
    return warm_standby_survival(spec);
}

double markov_group_reliability(const GroupSpec& g) {
    check_group(g);
    const int b = g.backups;
    std::vector<double> rate(b + 1);
    for (int m = 0; m <= b; ++m) {
        rate[m] = static_cast<double>(g.primaries) * g.fail_active + (b - m) * g.fail_standby;
    }
    const double big_rate = rate[0];
    if (big_rate <= 0.0) return 1.0;

    // Keep each uniformized interval short enough that exp(-q) stays
    // representable.
    const double total_q = big_rate * g.horizon;
    const int chunks = std::max(1, static_cast<int>(std::ceil(total_q / 64.0)));
    const double dt = g.horizon / chunks;

    std::vector<double> p(b + 2, 0.0);
    p[0] = 1.0;
    for (int c = 0; c < chunks; ++c) p = uniformized_step(std::move(p), rate, big_rate, dt);

    double survival = 0.0;
    for (int m = 0; m <= b; ++m) survival += p[m];
    return clamp01(survival);
}

double mc_group_reliability(const GroupSpec& g, long long trials, std::uint64_t seed) {
    check_group(g);
    if (trials < 1) throw std::invalid_argument("mc oracle: trials must be >= 1");

    Rng rng(seed);
    const int n = g.primaries;
    std::vector<double> active(n);
    std::vector<double> standby(g.backups);
    long long survived = 0;

    for (long long trial = 0; trial < trials; ++trial) {
        for (int i = 0; i < n; ++i) active[i] = rng.exponential(g.fail_active);
        for (int i = 0; i < g.backups; ++i) standby[i] = rng.exponential(g.fail_standby);
        int standbys_left = g.backups;
        bool alive = true;

        for (;;) {
            int ia = 0;
            for (int i = 1; i < n; ++i) {
                if (active[i] < active[ia]) ia = i;
            }
            int is = -1;
            for (int i = 0; i < standbys_left; ++i) {
                if (is < 0 || standby[i] < standby[is]) is = i;
            }
            const double next_active = active[ia];
            const double next_standby = is >= 0 ? standby[is] : std::numeric_limits<double>::infinity();
            if (std::min(next_active, next_standby) > g.horizon) break;

            if (next_standby <= next_active) {
                // A standby dies in standby mode.
                standby[is] = standby[--standbys_left];
            } else if (standbys_left > 0) {
                // Promotion: the replacement runs at the active rate from
                // the failure instant (memoryless switch).
                --standbys_left;
                active[ia] = next_active + rng.exponential(g.fail_active);
            } else {
                alive = false;
                break;
            }
        }
        if (alive) ++survived;
    }
    return static_cast<double>(survived) / static_cast<double>(trials);
}

double sfc_reliability(const Solution& solution, int sfc_index, const Infrastructure& infra,
                       const Workload& workload, const ObjectiveConfig& cfg) {
    const SfcRequest& sfc = workload.sfcs[sfc_index];
    const double t = cfg.holding_time;
    const auto& assign = solution.assignment[sfc_index];
    double omega = 1.0;

    if (is_dedicated(sfc.strategy)) {
        for (int j = 0; j < sfc.length(); ++j) {
            const int i = assign[j];
            if (i == kUnassigned) continue;
            const NodeCategory& cat = infra.categories[i];
            const int b = solution.dedicated_backups[sfc_index][j];
            if (sfc.strategy == BackupStrategy::DedicatedActive) {
                omega *= rel_dedicated_active(b, failure_cdf(cat.fail_active, t));
            } else {
                omega *= rel_dedicated_standby(
                    {1, b, cat.fail_active, cat.fail_standby, t});
            }
        }
        return omega;
    }

    std::vector<int> hosted(infra.category_count(), 0);
    for (int j = 0; j < sfc.length(); ++j) {
        if (assign[j] != kUnassigned) ++hosted[assign[j]];
    }
    for (int i = 0; i < infra.category_count(); ++i) {
        if (hosted[i] == 0) continue;
        const NodeCategory& cat = infra.categories[i];
        const int pool = solution.shared_backups[sfc_index][i];
        if (sfc.strategy == BackupStrategy::SharedActive) {
            omega *= rel_shared_active(hosted[i], pool, failure_cdf(cat.fail_active, t));
        } else {
            omega *= rel_shared_standby({hosted[i], pool, cat.fail_active, cat.fail_standby, t});
        }
    }
    return omega;
}

double sfc_cost(const Solution& solution, int sfc_index, const Infrastructure& infra,
                const Workload& workload) {
    const SfcRequest& sfc = workload.sfcs[sfc_index];
    const auto& assign = solution.assignment[sfc_index];
    double cost = 0.0;

    if (is_dedicated(sfc.strategy)) {
        for (int j = 0; j < sfc.length(); ++j) {
            const int i = assign[j];
            if (i == kUnassigned) continue;
            const NodeCategory& cat = infra.categories[i];
            const int b = solution.dedicated_backups[sfc_index][j];
            if (sfc.strategy == BackupStrategy::DedicatedActive) {
                cost += (b + 1) * cat.cost_active;
            } else {
                cost += cat.cost_active + b * cat.cost_standby;
            }
        }
        return cost;
    }

    std::vector<int> hosted(infra.category_count(), 0);
    for (int j = 0; j < sfc.length(); ++j) {
        if (assign[j] != kUnassigned) ++hosted[assign[j]];
    }
    for (int i = 0; i < infra.category_count(); ++i) {
        if (hosted[i] == 0) continue;
        const NodeCategory& cat = infra.categories[i];
        const int pool = solution.shared_backups[sfc_index][i];
        if (sfc.strategy == BackupStrategy::SharedActive) {
            cost += (hosted[i] + pool) * cat.cost_active;
        } else {
            cost += hosted[i] * cat.cost_active + pool * cat.cost_standby;
        }
    }
    return cost;
}

} // namespace sfcplace
