// Command-line front end: scenario validation, single runs, Monte Carlo
// experiments, the fluid oracles, and the bundled reference experiment.
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairsched/tables.hpp"

namespace {

using namespace fairsched;

// The heterogeneous two-server reference scenario bundled with the tool so
// `repro-paper` does not depend on the working directory.
Scenario reference_scenario() {
    Scenario s;
    s.resource_names = {"r1", "r2"};
    s.servers = {{1, {100, 30}}, {2, {30, 100}}};
    s.frameworks = {{1, {5, 1}, 1.0, {}}, {2, {1, 5}, 1.0, {}}};
    return s;
}

void print_allocation(const Scenario& s, const AllocationState& st) {
    std::printf("%-12s", "framework");
    for (const auto& srv : s.servers) std::printf("  server %-4d", srv.id);
    std::printf("  total\n");
    for (int n = 0; n < s.num_frameworks(); ++n) {
        std::printf("%-12d", s.frameworks[n].id);
        for (int i = 0; i < s.num_servers(); ++i)
            std::printf("  %-11s", format_double(st.x(n, i)).c_str());
        std::printf("  %s\n", format_double(st.total(n)).c_str());
    }
    std::printf("%-12s", "unused");
    for (int i = 0; i < s.num_servers(); ++i) {
        std::string cell;
        for (int r = 0; r < s.num_resources(); ++r) {
            if (r) cell += "/";
            cell += format_double(st.residual(i)[r]);
        }
        std::printf("  %-11s", cell.c_str());
    }
    std::printf("\n");
}

int cmd_validate(const std::string& path) {
    Scenario s = [&] {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open " + path);
        nlohmann::json j = nlohmann::json::parse(in);
        return scenario_from_json(j);
    }();
    ValidationReport report = validate(s);
    if (!report.ok()) {
        std::cerr << render(report);
        return 1;
    }
    std::printf("ok: %d frameworks, %d servers, %d resources\n", s.num_frameworks(),
                s.num_servers(), s.num_resources());
    return 0;
}

int cmd_run(const std::string& path, const std::string& label, uint64_t seed,
            const std::string& trace_path) {
    Scenario s = load_scenario(path);
    LabeledPolicy lp = find_policy(label);
    lp.policy.seed = seed;
    RunResult rr = run(s, lp.policy);
    std::printf("policy %s, seed %llu, %zu placements, total efficiency %s\n",
                label.c_str(), static_cast<unsigned long long>(seed), rr.trace.size(),
                format_double(rr.total_efficiency).c_str());
    print_allocation(s, rr.final_state);
    if (!trace_path.empty()) {
        write_trace_csv(trace_path, rr);
        std::printf("trace written to %s\n", trace_path.c_str());
    }
    return 0;
}

int cmd_montecarlo(const std::string& path, const std::string& label, int trials,
                   uint64_t seed) {
    Scenario s = load_scenario(path);
    LabeledPolicy lp = find_policy(label);
    StatsTable t = monte_carlo(s, lp.policy, trials, seed);
    const int I = s.num_servers();
    std::printf("policy %s, %d trials, base seed %llu\n", label.c_str(), trials,
                static_cast<unsigned long long>(seed));
    std::printf("%-12s%-10s%-22s%-22s%s\n", "framework", "server", "mean", "std",
                "ci95");
    for (int n = 0; n < s.num_frameworks(); ++n)
        for (int i = 0; i < I; ++i) {
            int c = n * I + i;
            Summary sum = summarize(t.cell_samples(c, s.num_frameworks() * I, t.x_samples));
            std::printf("%-12d%-10d%-22s%-22s(%s, %s)\n", s.frameworks[n].id,
                        s.servers[i].id, format_double(sum.mean).c_str(),
                        format_double(sum.stddev).c_str(),
                        format_double(sum.ci_low).c_str(),
                        format_double(sum.ci_high).c_str());
        }
    std::printf("total efficiency: mean %s, std %s\n", format_double(t.total_mean).c_str(),
                format_double(t.total_std).c_str());
    return 0;
}

int cmd_oracle(const std::string& path, const std::string& mode, double a,
               const std::string& weights_name, const std::string& out_path) {
    Scenario s = load_scenario(path);
    std::vector<double> w =
        weights_name == "psdsf" ? psdsf_global_weights(s) : drf_weights(s);
    FluidSolution sol;
    if (mode == "pf") {
        sol = solve(s, {FluidMode::PfA, a, {}});
    } else if (mode == "upf") {
        sol = solve(s, {FluidMode::UPf, a, w});
    } else if (mode == "mmf") {
        sol = solve_mmf_continuation(s, w);
    } else {
        throw CLI::ValidationError("--mode must be one of mmf, pf, upf");
    }
    nlohmann::json j = fluid_solution_to_json(sol);
    j["mode"] = mode;
    if (mode == "pf") j["a"] = a;
    else j["weights"] = weights_name;
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << j.dump(2) << "\n";
    }
    return sol.converged ? 0 : 2;
}

int cmd_repro(const std::string& outdir) {
    Scenario s = reference_scenario();
    ExperimentConfig cfg;
    cfg.scenario_path = "builtin:s0";
    cfg.policies = reference_policies();
    cfg.trials = 200;
    cfg.base_seed = 1;
    cfg.output_dir = outdir;
    validate_config(cfg);
    std::vector<PolicyResult> results;
    for (const auto& lp : cfg.policies)
        results.push_back(run_policy(s, lp, cfg.trials, cfg.base_seed));
    emit_tables(cfg, s, results);
    std::printf("wrote allocations-mean.csv, allocations-std.csv, unused-mean.csv, "
                "unused-std.csv, manifest.json to %s\n", outdir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-resource multi-server fair scheduling simulator"};
    app.require_subcommand(1);

    std::string scenario_path, label = "DRF", trace_path, mode = "pf";
    std::string weights_name = "drf", out_path, outdir;
    uint64_t seed = 0;
    int trials = 200;
    double a = 1.0;

    auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
    validate_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();

    auto* run_cmd = app.add_subcommand("run", "Single progressive-filling run");
    run_cmd->add_option("scenario", scenario_path)->required();
    run_cmd->add_option("--policy", label, "DRF, TSF, RRR-PS-DSF, BF-DRF, PS-DSF or rPS-DSF");
    run_cmd->add_option("--seed", seed);
    run_cmd->add_option("--trace", trace_path, "write the placement trace CSV here");

    auto* mc_cmd = app.add_subcommand("montecarlo", "Repeated runs with statistics");
    mc_cmd->add_option("scenario", scenario_path)->required();
    mc_cmd->add_option("--policy", label);
    mc_cmd->add_option("--trials", trials);
    mc_cmd->add_option("--seed", seed);

    auto* oracle_cmd = app.add_subcommand("oracle", "Continuous fluid optimum");
    oracle_cmd->add_option("scenario", scenario_path)->required();
    oracle_cmd->add_option("--mode", mode, "mmf, pf or upf");
    oracle_cmd->add_option("--a", a, "fairness exponent (pf mode)");
    oracle_cmd->add_option("--weights", weights_name, "criterion weights: drf or psdsf");
    oracle_cmd->add_option("--out", out_path, "write the solution JSON here");

    auto* repro_cmd = app.add_subcommand("repro-paper", "Reference experiment tables");
    repro_cmd->add_option("outdir", outdir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return cmd_validate(scenario_path);
        if (run_cmd->parsed()) return cmd_run(scenario_path, label, seed, trace_path);
        if (mc_cmd->parsed()) return cmd_montecarlo(scenario_path, label, trials, seed);
        if (oracle_cmd->parsed()) return cmd_oracle(scenario_path, mode, a, weights_name, out_path);
        if (repro_cmd->parsed()) return cmd_repro(outdir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
