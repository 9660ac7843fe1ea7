#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairsched/filling.hpp"
#include "fairsched/fluid.hpp"
#include "fairsched/scenario_io.hpp"

namespace fairsched {

inline constexpr const char* kVersion = "0.1.0";

struct LabeledPolicy {
    std::string label;
    PolicySpec policy;
    bool stochastic = false;  // deterministic policies run a single trial
};

struct ExperimentConfig {
    std::string scenario_path;
    std::vector<LabeledPolicy> policies;
    int trials = 200;  // per stochastic policy
    uint64_t base_seed = 1;
    std::string output_dir;
};

inline void validate_config(const ExperimentConfig& cfg) {
    std::map<std::string, int> seen;
    for (const auto& p : cfg.policies)
        if (++seen[p.label] > 1)
            throw std::invalid_argument("experiment: duplicate policy label " + p.label);
    if (cfg.trials < 2)
        throw std::invalid_argument("experiment: stochastic policies need trials >= 2");
}

// The scheduler set of the reference experiment: three randomized policies
// averaged over trials plus three deterministic ones.
inline std::vector<LabeledPolicy> reference_policies() {
    auto crit = [](CriterionKind k) { return CriterionSpec{k, {}}; };
    return {
        {"DRF", {crit(CriterionKind::Drf), ServerPolicy::Rrr, 1.0, 0}, true},
        {"TSF", {crit(CriterionKind::Tsf), ServerPolicy::Rrr, 1.0, 0}, true},
        {"RRR-PS-DSF", {crit(CriterionKind::PsdsfServer), ServerPolicy::Rrr, 1.0, 0}, true},
        {"BF-DRF", {crit(CriterionKind::Drf), ServerPolicy::BestFit, 1.0, 0}, false},
        {"PS-DSF", {crit(CriterionKind::PsdsfServer), ServerPolicy::JointMin, 1.0, 0}, false},
        {"rPS-DSF", {crit(CriterionKind::Rpsdsf), ServerPolicy::JointMin, 1.0, 0}, false},
    };
}

inline LabeledPolicy find_policy(const std::string& label) {
    for (auto& p : reference_policies())
        if (p.label == label) return p;
    throw std::invalid_argument("unknown policy label: " + label +
                                " (expected DRF, TSF, RRR-PS-DSF, BF-DRF, PS-DSF or rPS-DSF)");
}

struct PolicyResult {
    std::string label;
    int trials = 1;
    std::vector<double> x_mean, x_std;            // per (n,i)
    std::vector<double> unused_mean, unused_std;  // per (i,r)
    double total_mean = 0.0;
};

inline PolicyResult run_policy(const Scenario& scenario, const LabeledPolicy& lp,
                               int trials, uint64_t base_seed) {
    PolicyResult res;
    res.label = lp.label;
    const int N = scenario.num_frameworks();
    const int I = scenario.num_servers();
    const int R = scenario.num_resources();
    if (lp.stochastic) {
        StatsTable t = monte_carlo(scenario, lp.policy, trials, base_seed);
        res.trials = trials;
        res.x_mean = t.x_mean;
        res.x_std = t.x_std;
        res.unused_mean = t.unused_mean;
        res.unused_std = t.unused_std;
        res.total_mean = t.total_mean;
    } else {
        PolicySpec p = lp.policy;
        p.seed = base_seed;
        RunResult rr = run(scenario, p);
        res.x_mean.resize(static_cast<size_t>(N) * I);
        for (int n = 0; n < N; ++n)
            for (int i = 0; i < I; ++i)
                res.x_mean[static_cast<size_t>(n) * I + i] = rr.final_state.x(n, i);
        res.x_std.assign(res.x_mean.size(), 0.0);
        res.unused_mean.resize(static_cast<size_t>(I) * R);
        for (int i = 0; i < I; ++i)
            for (int r = 0; r < R; ++r)
                res.unused_mean[static_cast<size_t>(i) * R + r] = rr.final_state.residual(i)[r];
        res.unused_std.assign(res.unused_mean.size(), 0.0);
        res.total_mean = rr.total_efficiency;
    }
    return res;
}

namespace table_detail {

inline void write_csv(const std::filesystem::path& path, const std::string& header,
                      const std::vector<std::pair<std::string, std::vector<double>>>& rows,
                      bool append_total = false,
                      const std::vector<double>* totals = nullptr) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << header << "\n";
    for (size_t k = 0; k < rows.size(); ++k) {
        out << rows[k].first;
        for (double v : rows[k].second) out << "," << format_double(v);
        if (append_total && totals) out << "," << format_double((*totals)[k]);
        out << "\n";
    }
}

}  // namespace table_detail

// Four CSVs matching the reference tables plus a run manifest.
inline void emit_tables(const ExperimentConfig& cfg, const Scenario& scenario,
                        const std::vector<PolicyResult>& results) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const fs::path dir(cfg.output_dir);

    std::string alloc_header = "scheduler";
    for (const auto& fw : scenario.frameworks)
        for (const auto& srv : scenario.servers)
            alloc_header += ",x_" + std::to_string(fw.id) + "_" + std::to_string(srv.id);
    std::string unused_header = "scheduler";
    for (const auto& srv : scenario.servers)
        for (int r = 0; r < scenario.num_resources(); ++r)
            unused_header += ",u_" + std::to_string(srv.id) + "_" + std::to_string(r + 1);

    std::vector<std::pair<std::string, std::vector<double>>> am, as, um, us;
    std::vector<double> totals;
    for (const auto& res : results) {
        am.emplace_back(res.label, res.x_mean);
        as.emplace_back(res.label, res.x_std);
        um.emplace_back(res.label, res.unused_mean);
        us.emplace_back(res.label, res.unused_std);
        totals.push_back(res.total_mean);
    }
    table_detail::write_csv(dir / "allocations-mean.csv", alloc_header + ",total", am,
                            true, &totals);
    table_detail::write_csv(dir / "allocations-std.csv", alloc_header, as);
    table_detail::write_csv(dir / "unused-mean.csv", unused_header, um);
    table_detail::write_csv(dir / "unused-std.csv", unused_header, us);

    nlohmann::json manifest;
    manifest["tool_version"] = kVersion;
    manifest["scenario"] = cfg.scenario_path;
    manifest["base_seed"] = cfg.base_seed;
    manifest["ci_convention"] = "mean +/- 2*std/sqrt(n)";
    manifest["policies"] = nlohmann::json::array();
    for (size_t k = 0; k < cfg.policies.size(); ++k)
        manifest["policies"].push_back(
            {{"label", cfg.policies[k].label},
             {"trials", results[k].trials},
             {"criterion", criterion_name(cfg.policies[k].policy.criterion.kind)}});
    std::ofstream mout(dir / "manifest.json", std::ios::binary);
    mout << manifest.dump(2) << "\n";
}

inline void write_trace_csv(const std::filesystem::path& path, const RunResult& rr) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "step,framework_id,server_id,criterion_value\n";
    for (const auto& t : rr.trace)
        out << t.step << "," << t.framework_id << "," << t.server_id << ","
            << format_double(t.score, 9) << "\n";
}

inline nlohmann::json fluid_solution_to_json(const FluidSolution& sol) {
    nlohmann::json j;
    j["converged"] = sol.converged;
    if (!sol.error.empty()) j["error"] = sol.error;
    j["x_star"] = sol.x;  // row-major (n,i)
    j["totals"] = sol.totals;
    j["objective_value"] = sol.objective;
    j["lambda"] = sol.lambda;  // row-major (i,r)
    j["nu"] = sol.nu;          // row-major (n,i)
    j["kkt_residual"] = sol.kkt_residual;
    return j;
}

}  // namespace fairsched
