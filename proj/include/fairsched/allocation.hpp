#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairsched/scenario.hpp"

namespace fairsched {

// Mutable allocation matrix x_{n,i} with incrementally maintained residual
// capacities. Owns a copy of the scenario so framework churn can extend or
// shrink the framework set without touching the caller's instance.
class AllocationState {
public:
    explicit AllocationState(const Scenario& scenario)
        : scenario_(scenario),
          x_(scenario.frameworks.size() * scenario.servers.size(), 0.0) {
        residual_.reserve(scenario_.servers.size());
        for (const auto& srv : scenario_.servers) residual_.push_back(srv.capacity);
    }

    const Scenario& scenario() const { return scenario_; }

    double x(int n, int i) const { return x_[cell(n, i)]; }

    // x_n = sum_i x_{n,i}
    double total(int n) const {
        double t = 0.0;
        for (int i = 0; i < scenario_.num_servers(); ++i) t += x(n, i);
        return t;
    }

    const ResourceVector& residual(int i) const { return residual_[i]; }

    bool fits(int n, int i, double count = 1.0) const {
        if (count <= 0.0) return false;
        if (!scenario_.allowed(n, i)) return false;
        for (int r = 0; r < scenario_.num_resources(); ++r)
            if (residual_[i][r] + kTol < count * scenario_.demand(n, r)) return false;
        return true;
    }

    void apply_increment(int n, int i, double count) {
        if (count <= 0.0)
            throw std::invalid_argument("apply_increment: count must be positive");
        if (!scenario_.allowed(n, i))
            throw std::invalid_argument("apply_increment: server not allowed for framework");
        if (!fits(n, i, count))
            throw std::invalid_argument("apply_increment: would overbook server " +
                                        std::to_string(scenario_.servers[i].id));
        x_[cell(n, i)] += count;
        for (int r = 0; r < scenario_.num_resources(); ++r) {
            residual_[i][r] -= count * scenario_.demand(n, r);
            if (residual_[i][r] < 0.0) residual_[i][r] = 0.0;  // float dust only, within kTol
        }
    }

    // R_i under the current x: {r | sum_n x_{n,i} B_{n,i,r} >= 1 - tol}.
    std::vector<int> fully_booked(int i, double tol) const {
        std::vector<int> booked;
        for (int r = 0; r < scenario_.num_resources(); ++r) {
            double used = 0.0;
            for (int n = 0; n < scenario_.num_frameworks(); ++n)
                used += x(n, i) * scenario_.normalized_demand(n, i, r);
            if (used >= 1.0 - tol) booked.push_back(r);
        }
        return booked;
    }

    // sum_n phi_n sum_i x_{n,i}
    double efficiency() const {
        double e = 0.0;
        for (int n = 0; n < scenario_.num_frameworks(); ++n)
            e += scenario_.priority(n) * total(n);
        return e;
    }

    // Residual recomputed from x, for consistency checks.
    std::vector<ResourceVector> recompute_residual() const {
        std::vector<ResourceVector> res;
        res.reserve(scenario_.servers.size());
        for (int i = 0; i < scenario_.num_servers(); ++i) {
            ResourceVector v = scenario_.servers[i].capacity;
            for (int n = 0; n < scenario_.num_frameworks(); ++n)
                for (int r = 0; r < scenario_.num_resources(); ++r)
                    v[r] -= x(n, i) * scenario_.demand(n, r);
            res.push_back(std::move(v));
        }
        return res;
    }

    // Framework churn, no-revocation semantics: arrivals start empty,
    // departures release all of the framework's tasks. Existing rows are
    // never adjusted.
    void add_framework(const FrameworkSpec& fw) {
        for (const auto& existing : scenario_.frameworks)
            if (existing.id == fw.id)
                throw std::invalid_argument("add_framework: duplicate framework id " +
                                            std::to_string(fw.id));
        if (static_cast<int>(fw.demand.size()) != scenario_.num_resources())
            throw std::invalid_argument("add_framework: demand length mismatch");
        scenario_.frameworks.push_back(fw);
        x_.resize(scenario_.frameworks.size() * scenario_.servers.size(), 0.0);
    }

    void remove_framework(int framework_id) {
        int n = -1;
        for (int k = 0; k < scenario_.num_frameworks(); ++k)
            if (scenario_.frameworks[k].id == framework_id) n = k;
        if (n < 0)
            throw std::invalid_argument("remove_framework: unknown framework id " +
                                        std::to_string(framework_id));
        const int I = scenario_.num_servers();
        const int R = scenario_.num_resources();
        for (int i = 0; i < I; ++i)
            for (int r = 0; r < R; ++r)
                residual_[i][r] += x(n, i) * scenario_.demand(n, r);
        std::vector<double> nx;
        nx.reserve(x_.size() - I);
        for (int k = 0; k < scenario_.num_frameworks(); ++k)
            if (k != n)
                for (int i = 0; i < I; ++i) nx.push_back(x(k, i));
        scenario_.frameworks.erase(scenario_.frameworks.begin() + n);
        x_ = std::move(nx);
    }

    int framework_index(int framework_id) const {
        for (int k = 0; k < scenario_.num_frameworks(); ++k)
            if (scenario_.frameworks[k].id == framework_id) return k;
        return -1;
    }

    static constexpr double kTol = 1e-9;

private:
    size_t cell(int n, int i) const {
        return static_cast<size_t>(n) * scenario_.servers.size() + i;
    }

    Scenario scenario_;
    std::vector<double> x_;                 // row-major (n, i)
    std::vector<ResourceVector> residual_;  // per server
};

}  // namespace fairsched
