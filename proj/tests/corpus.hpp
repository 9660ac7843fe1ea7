#pragma once

#include <vector>

#include "fairsched/rng.hpp"
#include "fairsched/scenario.hpp"

namespace fairsched::testing {

// The heterogeneous two-server reference instance used throughout.
inline Scenario s0() {
    Scenario s;
    s.resource_names = {"r1", "r2"};
    s.servers = {{1, {100, 30}}, {2, {30, 100}}};
    s.frameworks = {{1, {5, 1}, 1.0, {}}, {2, {1, 5}, 1.0, {}}};
    return s;
}

// The classic single-server instance with complementary demands.
inline Scenario classic() {
    Scenario s;
    s.resource_names = {"cpu", "mem"};
    s.servers = {{1, {9, 18}}};
    s.frameworks = {{1, {1, 4}, 1.0, {}}, {2, {3, 1}, 1.0, {}}};
    return s;
}

// S0 with capacities scaled down by 10; small enough for brute force.
inline Scenario s0_small() {
    Scenario s = s0();
    s.servers[0].capacity = {10, 3};
    s.servers[1].capacity = {3, 10};
    return s;
}

// Random scenario with strictly positive demands (2-4 frameworks, 2-3
// servers, 2-3 resources), every framework allowed everywhere.
inline Scenario random_scenario(SplitMix64& rng) {
    Scenario s;
    int R = 2 + static_cast<int>(rng.next_below(2));
    int I = 2 + static_cast<int>(rng.next_below(2));
    int N = 2 + static_cast<int>(rng.next_below(3));
    for (int r = 0; r < R; ++r) s.resource_names.push_back("r" + std::to_string(r + 1));
    for (int i = 0; i < I; ++i) {
        ServerSpec srv;
        srv.id = i + 1;
        for (int r = 0; r < R; ++r)
            srv.capacity.push_back(10.0 + static_cast<double>(rng.next_below(91)));
        s.servers.push_back(std::move(srv));
    }
    for (int n = 0; n < N; ++n) {
        FrameworkSpec fw;
        fw.id = n + 1;
        for (int r = 0; r < R; ++r)
            fw.demand.push_back(1.0 + static_cast<double>(rng.next_below(8)));
        fw.priority = 1.0 + rng.next_double();
        s.frameworks.push_back(std::move(fw));
    }
    return s;
}

inline std::vector<Scenario> random_corpus(int count, uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Scenario> out;
    for (int k = 0; k < count; ++k) out.push_back(random_scenario(rng));
    return out;
}

}  // namespace fairsched::testing
