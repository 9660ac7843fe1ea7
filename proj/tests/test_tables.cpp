#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "corpus.hpp"
#include "fairsched/tables.hpp"

using namespace fairsched;
namespace ft = fairsched::testing;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path fresh_dir(const char* name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    return dir;
}

ExperimentConfig reference_config(const fs::path& outdir) {
    ExperimentConfig cfg;
    cfg.scenario_path = "builtin:s0";
    cfg.policies = reference_policies();
    cfg.trials = 200;
    cfg.base_seed = 1;
    cfg.output_dir = outdir.string();
    return cfg;
}

std::vector<PolicyResult> run_reference(const ExperimentConfig& cfg, const Scenario& s) {
    std::vector<PolicyResult> results;
    for (const auto& lp : cfg.policies)
        results.push_back(run_policy(s, lp, cfg.trials, cfg.base_seed));
    return results;
}

}  // namespace

TEST_CASE("experiment config validation") {
    ExperimentConfig cfg = reference_config("unused");
    CHECK_NOTHROW(validate_config(cfg));
    cfg.policies.push_back(cfg.policies.front());
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    ExperimentConfig few = reference_config("unused");
    few.trials = 1;
    CHECK_THROWS_AS(validate_config(few), std::invalid_argument);
}

TEST_CASE("policy labels resolve to the documented scheduler set") {
    CHECK(find_policy("DRF").policy.criterion.kind == CriterionKind::Drf);
    CHECK(find_policy("rPS-DSF").policy.server_policy == ServerPolicy::JointMin);
    CHECK(find_policy("RRR-PS-DSF").stochastic);
    CHECK_FALSE(find_policy("BF-DRF").stochastic);
    CHECK_THROWS_AS(find_policy("nope"), std::invalid_argument);
}

TEST_CASE("emitted tables carry the reference rows") {
    Scenario s = ft::s0();
    fs::path dir = fresh_dir("fairsched-tables");
    ExperimentConfig cfg = reference_config(dir);
    emit_tables(cfg, s, run_reference(cfg, s));

    std::string alloc = slurp(dir / "allocations-mean.csv");
    CHECK(alloc.find("scheduler,x_1_1,x_1_2,x_2_1,x_2_2,total\n") == 0);
    CHECK(alloc.find("rPS-DSF,19,2,2,19,42\n") != std::string::npos);
    CHECK(alloc.find("\r") == std::string::npos);  // LF endings only

    std::string unused = slurp(dir / "unused-mean.csv");
    CHECK(unused.find("rPS-DSF,3,1,1,3\n") != std::string::npos);

    // deterministic policies have all-zero std rows
    std::string stds = slurp(dir / "allocations-std.csv");
    CHECK(stds.find("PS-DSF,0,0,0,0\n") != std::string::npos);
    CHECK(stds.find("BF-DRF,0,0,0,0\n") != std::string::npos);

    nlohmann::json manifest;
    std::ifstream(dir / "manifest.json") >> manifest;
    CHECK(manifest["base_seed"] == 1);
    CHECK(manifest["tool_version"] == kVersion);
    CHECK(manifest["policies"].size() == 6);
}

TEST_CASE("table emission is byte-stable across repeated runs") {
    Scenario s = ft::s0();
    fs::path d1 = fresh_dir("fairsched-repro-a");
    fs::path d2 = fresh_dir("fairsched-repro-b");
    ExperimentConfig c1 = reference_config(d1);
    ExperimentConfig c2 = reference_config(d2);
    emit_tables(c1, s, run_reference(c1, s));
    emit_tables(c2, s, run_reference(c2, s));
    for (const char* f :
         {"allocations-mean.csv", "allocations-std.csv", "unused-mean.csv", "unused-std.csv"})
        CHECK(slurp(d1 / f) == slurp(d2 / f));
}

TEST_CASE("column sums reconstruct capacities for every scheduler") {
    Scenario s = ft::s0();
    fs::path dir = fresh_dir("fairsched-sums");
    ExperimentConfig cfg = reference_config(dir);
    auto results = run_reference(cfg, s);
    for (const auto& res : results)
        for (int i = 0; i < 2; ++i)
            for (int r = 0; r < 2; ++r) {
                double booked = 0.0;
                for (int n = 0; n < 2; ++n)
                    booked += res.x_mean[static_cast<size_t>(n) * 2 + i] * s.demand(n, r);
                REQUIRE(res.unused_mean[static_cast<size_t>(i) * 2 + r] + booked ==
                        Catch::Approx(s.capacity(i, r)).margin(1e-6));
            }
}

TEST_CASE("trace CSV uses nine significant digits") {
    RunResult rr =
        run(ft::s0(), {{CriterionKind::Drf, {}}, ServerPolicy::Rrr, 1.0, 5});
    fs::path p = fs::temp_directory_path() / "fairsched-trace.csv";
    write_trace_csv(p, rr);
    std::string text = slurp(p);
    CHECK(text.find("step,framework_id,server_id,criterion_value\n") == 0);
    // a DRF score like 1/26th appears with 9 significant digits
    CHECK(text.find("0.0384615385") != std::string::npos);
}

TEST_CASE("fluid solution JSON export carries multipliers and residual") {
    FluidSolution sol = solve(ft::s0(), {FluidMode::PfA, 1.0, {}});
    nlohmann::json j = fluid_solution_to_json(sol);
    CHECK(j["converged"] == true);
    CHECK(j["x_star"].size() == 4);
    CHECK(j["lambda"].size() == 4);
    CHECK(j["nu"].size() == 4);
    CHECK(j["kkt_residual"].get<double>() <= 1e-6);
    CHECK(j["totals"][0].get<double>() == Catch::Approx(65.0 / 3.0).margin(1e-3));
}
