#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace fairsched {

// Resource amounts indexed by resource r. Units are abstract; only ratios
// d/c and residual comparisons matter.
using ResourceVector = std::vector<double>;

struct ServerSpec {
    int id = 0;
    ResourceVector capacity;
};

struct FrameworkSpec {
    int id = 0;
    ResourceVector demand;          // per task
    double priority = 1.0;          // phi > 0
    std::vector<int> allowed_servers;  // server ids; empty = all servers
};

// Immutable problem instance: servers, frameworks, placement constraints.
class Scenario {
public:
    std::vector<std::string> resource_names;
    std::vector<ServerSpec> servers;
    std::vector<FrameworkSpec> frameworks;

    int num_resources() const { return static_cast<int>(resource_names.size()); }
    int num_servers() const { return static_cast<int>(servers.size()); }
    int num_frameworks() const { return static_cast<int>(frameworks.size()); }

    double capacity(int i, int r) const { return servers[i].capacity[r]; }
    double demand(int n, int r) const { return frameworks[n].demand[r]; }
    double priority(int n) const { return frameworks[n].priority; }

    // Placement indicator delta_{n,i}.
    bool allowed(int n, int i) const {
        const auto& ids = frameworks[n].allowed_servers;
        if (ids.empty()) return true;
        return std::find(ids.begin(), ids.end(), servers[i].id) != ids.end();
    }

    // B_{n,i,r} = d_{n,r} / c_{i,r}
    double normalized_demand(int n, int i, int r) const {
        return demand(n, r) / capacity(i, r);
    }

    ResourceVector normalized_demand(int n, int i) const {
        ResourceVector b(resource_names.size());
        for (int r = 0; r < num_resources(); ++r) b[r] = normalized_demand(n, i, r);
        return b;
    }
};

struct Violation {
    std::string code;    // machine-readable, e.g. "nonpositive capacity"
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

inline ValidationReport validate(const Scenario& s) {
    ValidationReport report;
    auto add = [&](std::string code, std::string detail) {
        report.violations.push_back({std::move(code), std::move(detail)});
    };

    const int R = s.num_resources();
    if (R == 0) add("no resources", "scenario declares no resource types");
    if (s.servers.empty()) add("no servers", "scenario declares no servers");
    if (s.frameworks.empty()) add("no frameworks", "scenario declares no frameworks");

    for (int i = 0; i < s.num_servers(); ++i) {
        const auto& srv = s.servers[i];
        if (static_cast<int>(srv.capacity.size()) != R) {
            add("capacity length mismatch",
                "server " + std::to_string(srv.id) + " has " +
                    std::to_string(srv.capacity.size()) + " capacities, expected " +
                    std::to_string(R));
            continue;
        }
        for (int r = 0; r < R; ++r) {
            if (!(srv.capacity[r] > 0.0))
                add("nonpositive capacity",
                    "server " + std::to_string(srv.id) + " resource " +
                        std::to_string(r));
        }
    }

    for (int n = 0; n < s.num_frameworks(); ++n) {
        const auto& fw = s.frameworks[n];
        if (static_cast<int>(fw.demand.size()) != R) {
            add("demand length mismatch",
                "framework " + std::to_string(fw.id) + " has " +
                    std::to_string(fw.demand.size()) + " demands, expected " +
                    std::to_string(R));
            continue;
        }
        bool any_positive = false;
        for (int r = 0; r < R; ++r) {
            if (fw.demand[r] < 0.0)
                add("negative demand",
                    "framework " + std::to_string(fw.id) + " resource " +
                        std::to_string(r));
            if (fw.demand[r] > 0.0) any_positive = true;
        }
        if (!any_positive)
            add("all-zero demand", "framework " + std::to_string(fw.id));
        if (!(fw.priority > 0.0))
            add("nonpositive priority", "framework " + std::to_string(fw.id));
        for (int id : fw.allowed_servers) {
            bool known = std::any_of(s.servers.begin(), s.servers.end(),
                                     [id](const ServerSpec& sv) { return sv.id == id; });
            if (!known)
                add("unknown server id",
                    "framework " + std::to_string(fw.id) + " allows server " +
                        std::to_string(id));
        }
        bool has_server = false;
        for (int i = 0; i < s.num_servers(); ++i)
            if (s.allowed(n, i)) has_server = true;
        if (!has_server && !s.servers.empty())
            add("framework has no allowed server", "framework " + std::to_string(fw.id));
    }

    // Duplicate ids confuse churn events and CSV labels.
    for (size_t a = 0; a < s.servers.size(); ++a)
        for (size_t b = a + 1; b < s.servers.size(); ++b)
            if (s.servers[a].id == s.servers[b].id)
                add("duplicate server id", std::to_string(s.servers[a].id));
    for (size_t a = 0; a < s.frameworks.size(); ++a)
        for (size_t b = a + 1; b < s.frameworks.size(); ++b)
            if (s.frameworks[a].id == s.frameworks[b].id)
                add("duplicate framework id", std::to_string(s.frameworks[a].id));

    return report;
}

}  // namespace fairsched
