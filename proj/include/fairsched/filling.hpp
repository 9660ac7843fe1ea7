#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "fairsched/allocation.hpp"
#include "fairsched/criteria.hpp"
#include "fairsched/rng.hpp"
#include "fairsched/stats.hpp"

namespace fairsched {

enum class ServerPolicy { Rrr, BestFit, JointMin };

struct PolicySpec {
    CriterionSpec criterion;
    ServerPolicy server_policy = ServerPolicy::Rrr;
    double epsilon = 1.0;  // task increment
    uint64_t seed = 0;
};

inline void validate_policy(const PolicySpec& p) {
    if (!(p.epsilon > 0.0))
        throw std::invalid_argument("policy: epsilon must be positive");
    bool specific = server_specific(p.criterion.kind);
    if (p.server_policy == ServerPolicy::JointMin && !specific)
        throw std::invalid_argument(
            "policy: joint (framework,server) selection needs a server-specific criterion");
    if (p.server_policy == ServerPolicy::BestFit && specific)
        throw std::invalid_argument(
            "policy: best-fit needs a cluster-wide criterion to pick the framework");
}

struct TraceStep {
    int step = 0;
    int framework_id = 0;
    int server_id = 0;
    double score = 0.0;  // selected framework's criterion value at selection time
};

struct RunResult {
    AllocationState final_state;
    std::vector<TraceStep> trace;
    double total_efficiency = 0.0;
};

// Smallest-score framework among the eligible set, ties to lowest index.
inline std::optional<int> select_framework(const AllocationState& st,
                                           const CriterionSpec& criterion,
                                           const std::vector<int>& eligible) {
    std::optional<int> best;
    double best_score = 0.0;
    for (int n : eligible) {
        double sc = framework_score(st, criterion, n);
        if (!best || sc < best_score) { best = n; best_score = sc; }
    }
    return best;
}

// Best-fit alignment: cosine similarity between a server's residual capacity
// and the framework's demand. Higher means the leftover resources match the
// demand shape more closely.
inline double best_fit_alignment(const AllocationState& st, int n, int i) {
    const Scenario& s = st.scenario();
    double dot = 0.0, res2 = 0.0, dem2 = 0.0;
    for (int r = 0; r < s.num_resources(); ++r) {
        dot += st.residual(i)[r] * s.demand(n, r);
        res2 += st.residual(i)[r] * st.residual(i)[r];
        dem2 += s.demand(n, r) * s.demand(n, r);
    }
    double denom = std::sqrt(res2) * std::sqrt(dem2);
    return denom > 0.0 ? dot / denom : 0.0;
}

// The best-matching allowed server for framework n, regardless of fit: ties
// to the lowest index. The returned server may not fit an increment; the
// caller then passes the framework over for this step.
inline std::optional<int> select_server_best_fit(const AllocationState& st, int n) {
    std::optional<int> best;
    double best_a = 0.0;
    for (int i = 0; i < st.scenario().num_servers(); ++i) {
        if (!st.scenario().allowed(n, i)) continue;
        double a = best_fit_alignment(st, n, i);
        if (!best || a > best_a) { best = i; best_a = a; }
    }
    return best;
}

// Randomized round robin for a cluster-wide criterion: the server order is
// reshuffled for every task, and the first fitting server takes it. The
// caller guarantees a fitting server exists.
inline int select_server_rrr(const AllocationState& st, int n, double eps,
                             SplitMix64& rng) {
    std::vector<int> order(st.scenario().num_servers());
    std::iota(order.begin(), order.end(), 0);
    shuffle(order, rng);
    for (int i : order)
        if (st.fits(n, i, eps)) return i;
    throw std::logic_error("select_server_rrr: no fitting server");
}

namespace detail {

inline bool anything_fits(const AllocationState& st, double eps) {
    for (int n = 0; n < st.scenario().num_frameworks(); ++n)
        for (int i = 0; i < st.scenario().num_servers(); ++i)
            if (st.fits(n, i, eps)) return true;
    return false;
}

}  // namespace detail

// Progressive filling, continuing from an existing state. Used directly by
// churn workflows; run() starts from empty.
inline RunResult fill(AllocationState state, const PolicySpec& policy) {
    validate_policy(policy);
    const Scenario& s = state.scenario();
    const int N = s.num_frameworks();
    const int I = s.num_servers();
    const double eps = policy.epsilon;
    const bool specific = server_specific(policy.criterion.kind);

    RoundRobinOffers offers(I, SplitMix64(policy.seed));
    SplitMix64 rng(policy.seed);
    std::vector<TraceStep> trace;
    int step = 0;

    while (detail::anything_fits(state, eps)) {
        int sel_n = -1, sel_i = -1;
        double sel_score = 0.0;

        if (policy.server_policy == ServerPolicy::JointMin) {
            // Jointly pick the fitting (n, j) pair with the smallest
            // server-specific score, ties lexicographic.
            for (int n = 0; n < N; ++n)
                for (int j = 0; j < I; ++j) {
                    if (!state.fits(n, j, eps)) continue;
                    double sc = pair_score(state, policy.criterion, n, j);
                    if (sc == kScoreInfinity) continue;
                    if (sel_n < 0 || sc < sel_score) {
                        sel_n = n; sel_i = j; sel_score = sc;
                    }
                }
        } else if (specific) {
            // RRR with a server-specific criterion: the offer stream picks
            // the server, the criterion picks the framework for that server.
            for (int k = 0; k < 2 * I && sel_n < 0; ++k) {
                int j = offers.next_offer();
                for (int n = 0; n < N; ++n) {
                    if (!state.fits(n, j, eps)) continue;
                    double sc = pair_score(state, policy.criterion, n, j);
                    if (sc == kScoreInfinity) continue;
                    if (sel_n < 0 || sc < sel_score) {
                        sel_n = n; sel_i = j; sel_score = sc;
                    }
                }
            }
        } else if (policy.server_policy == ServerPolicy::Rrr) {
            // Cluster-wide criterion: framework first, then the server.
            std::vector<int> eligible;
            for (int n = 0; n < N; ++n)
                for (int i = 0; i < I; ++i)
                    if (state.fits(n, i, eps)) { eligible.push_back(n); break; }
            auto n = select_framework(state, policy.criterion, eligible);
            if (!n) break;
            sel_n = *n;
            sel_score = framework_score(state, policy.criterion, sel_n);
            sel_i = select_server_rrr(state, sel_n, eps, rng);
        } else {
            // Best fit: frameworks are considered in ascending score order.
            // A framework whose best-matching server cannot hold another
            // increment is passed over for this step; filling ends when
            // every framework is passed over.
            std::vector<std::pair<double, int>> order;
            for (int n = 0; n < N; ++n)
                order.emplace_back(framework_score(state, policy.criterion, n), n);
            std::sort(order.begin(), order.end());
            for (auto [sc, n] : order) {
                auto i = select_server_best_fit(state, n);
                if (i && state.fits(n, *i, eps)) {
                    sel_n = n; sel_i = *i; sel_score = sc;
                    break;
                }
            }
        }

        if (sel_n < 0) break;
        state.apply_increment(sel_n, sel_i, eps);
        trace.push_back({step++, s.frameworks[sel_n].id, s.servers[sel_i].id, sel_score});
    }

    double eff = state.efficiency();
    return RunResult{std::move(state), std::move(trace), eff};
}

inline RunResult run(const Scenario& scenario, const PolicySpec& policy) {
    auto report = validate(scenario);
    if (!report.ok())
        throw std::invalid_argument("run: invalid scenario (" +
                                    report.violations.front().code + ")");
    return fill(AllocationState(scenario), policy);
}

// Framework churn. Arrivals register with an empty allocation; departures
// release all of the framework's tasks. Allocations of other frameworks are
// never revoked; rerun fill() on the state to resume filling.
struct FrameworkArrival { FrameworkSpec framework; };
struct FrameworkDeparture { int framework_id = 0; };
using ChurnEvent = std::variant<FrameworkArrival, FrameworkDeparture>;

inline void apply_event(AllocationState& state, const ChurnEvent& event) {
    if (const auto* arrival = std::get_if<FrameworkArrival>(&event))
        state.add_framework(arrival->framework);
    else
        state.remove_framework(std::get<FrameworkDeparture>(event).framework_id);
}

// Cross-trial aggregates; raw per-trial samples kept so confidence intervals
// can be recomputed downstream.
struct StatsTable {
    int trials = 0;
    // trial-major: x_samples[t * (N*I) + n*I + i], unused_samples[t * (I*R) + i*R + r]
    std::vector<double> x_samples;
    std::vector<double> unused_samples;
    std::vector<double> total_samples;

    std::vector<double> x_mean, x_std;           // per (n,i)
    std::vector<double> unused_mean, unused_std;  // per (i,r)
    double total_mean = 0.0, total_std = 0.0;

    std::vector<double> cell_samples(int cell, int cells_per_trial,
                                     const std::vector<double>& src) const {
        std::vector<double> out(trials);
        for (int t = 0; t < trials; ++t) out[t] = src[static_cast<size_t>(t) * cells_per_trial + cell];
        return out;
    }
};

inline StatsTable monte_carlo(const Scenario& scenario, const PolicySpec& policy,
                              int trials, uint64_t base_seed) {
    if (trials < 2) throw std::invalid_argument("monte_carlo: trials must be >= 2");
    const int N = scenario.num_frameworks();
    const int I = scenario.num_servers();
    const int R = scenario.num_resources();

    StatsTable table;
    table.trials = trials;
    table.x_samples.resize(static_cast<size_t>(trials) * N * I);
    table.unused_samples.resize(static_cast<size_t>(trials) * I * R);
    table.total_samples.resize(trials);

    for (int t = 0; t < trials; ++t) {
        PolicySpec p = policy;
        p.seed = base_seed ^ static_cast<uint64_t>(t);
        RunResult rr = run(scenario, p);
        for (int n = 0; n < N; ++n)
            for (int i = 0; i < I; ++i)
                table.x_samples[(static_cast<size_t>(t) * N + n) * I + i] =
                    rr.final_state.x(n, i);
        for (int i = 0; i < I; ++i)
            for (int r = 0; r < R; ++r)
                table.unused_samples[(static_cast<size_t>(t) * I + i) * R + r] =
                    rr.final_state.residual(i)[r];
        table.total_samples[t] = rr.total_efficiency;
    }

    auto reduce = [&](const std::vector<double>& src, int cells,
                      std::vector<double>& mean, std::vector<double>& stddev) {
        mean.resize(cells);
        stddev.resize(cells);
        for (int c = 0; c < cells; ++c) {
            Summary s = summarize(table.cell_samples(c, cells, src));
            mean[c] = s.mean;
            stddev[c] = s.stddev;
        }
    };
    reduce(table.x_samples, N * I, table.x_mean, table.x_std);
    reduce(table.unused_samples, I * R, table.unused_mean, table.unused_std);
    Summary st = summarize(table.total_samples);
    table.total_mean = st.mean;
    table.total_std = st.stddev;
    return table;
}

}  // namespace fairsched
