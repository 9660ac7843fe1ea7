#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairsched/allocation.hpp"
#include "fairsched/scenario.hpp"

namespace fairsched {

enum class CriterionKind { Generic, Drf, PsdsfGlobal, PsdsfServer, Rpsdsf, Tsf };

// Server-specific criteria score (framework, server) pairs; the rest score a
// framework across the whole cluster.
inline bool server_specific(CriterionKind k) {
    return k == CriterionKind::PsdsfServer || k == CriterionKind::Rpsdsf;
}

struct CriterionSpec {
    CriterionKind kind = CriterionKind::Drf;
    std::vector<double> weights;  // u_{n,i}, row-major; Generic only
};

inline constexpr double kScoreInfinity = std::numeric_limits<double>::infinity();

// U_n = (1/phi_n) sum_i u_{n,i} x_{n,i}
inline double score_generic(const AllocationState& st, const CriterionSpec& spec, int n) {
    const Scenario& s = st.scenario();
    const int I = s.num_servers();
    double acc = 0.0;
    for (int i = 0; i < I; ++i) acc += spec.weights[static_cast<size_t>(n) * I + i] * st.x(n, i);
    return acc / s.priority(n);
}

// Multi-server DRF: M_n = (1/phi_n) x_n max_r d_{n,r} / sum_j c_{j,r}
inline double score_drf(const AllocationState& st, int n) {
    const Scenario& s = st.scenario();
    double dominant = 0.0;
    for (int r = 0; r < s.num_resources(); ++r) {
        double pooled = 0.0;
        for (int j = 0; j < s.num_servers(); ++j) pooled += s.capacity(j, r);
        dominant = std::max(dominant, s.demand(n, r) / pooled);
    }
    return st.total(n) * dominant / s.priority(n);
}

// rho(n,j) = argmax_r B_{n,j,r}, ties to the lowest resource index.
inline int dominant_index(const Scenario& s, int n, int j) {
    if (!s.allowed(n, j))
        throw std::invalid_argument("dominant_index: server not allowed for framework");
    int best = 0;
    double best_b = s.normalized_demand(n, j, 0);
    for (int r = 1; r < s.num_resources(); ++r) {
        double b = s.normalized_demand(n, j, r);
        if (b > best_b) { best = r; best_b = b; }
    }
    return best;
}

// K_{n,j} = B_{n,j,rho(n,j)} x_n / phi_n
inline double score_psdsf_server(const AllocationState& st, int n, int j) {
    const Scenario& s = st.scenario();
    int rho = dominant_index(s, n, j);
    return s.normalized_demand(n, j, rho) * st.total(n) / s.priority(n);
}

// K_n = sum_j K_{n,j} delta_{n,j}
inline double score_psdsf_global(const AllocationState& st, int n) {
    const Scenario& s = st.scenario();
    double acc = 0.0;
    for (int j = 0; j < s.num_servers(); ++j) {
        if (!s.allowed(n, j)) continue;
        acc += s.normalized_demand(n, j, dominant_index(s, n, j));
    }
    return acc * st.total(n) / s.priority(n);
}

// Residual PS-DSF: dominant share against current unreserved capacities.
// Returns +infinity when a demanded resource is exhausted on server j.
inline double score_rpsdsf(const AllocationState& st, int n, int j) {
    const Scenario& s = st.scenario();
    if (!s.allowed(n, j))
        throw std::invalid_argument("score_rpsdsf: server not allowed for framework");
    double dominant = 0.0;
    for (int r = 0; r < s.num_resources(); ++r) {
        double d = s.demand(n, r);
        if (d <= 0.0) continue;
        double res = st.residual(j)[r];
        if (res <= 0.0) return kScoreInfinity;  // ineligible even at x_n = 0
        dominant = std::max(dominant, d / res);
    }
    return st.total(n) * dominant / s.priority(n);
}

// Stand-alone fluid task capacity: T_n = sum_i delta_{n,i} min_{r: d>0} c_{i,r}/d_{n,r}.
inline double standalone_task_capacity(const Scenario& s, int n) {
    double t = 0.0;
    for (int i = 0; i < s.num_servers(); ++i) {
        if (!s.allowed(n, i)) continue;
        double cap = std::numeric_limits<double>::infinity();
        for (int r = 0; r < s.num_resources(); ++r)
            if (s.demand(n, r) > 0.0)
                cap = std::min(cap, s.capacity(i, r) / s.demand(n, r));
        t += cap;
    }
    return t;
}

// TSF: share of the framework's achievable task count, x_n / (phi_n T_n).
inline double score_tsf(const AllocationState& st, int n) {
    const Scenario& s = st.scenario();
    return st.total(n) / (s.priority(n) * standalone_task_capacity(s, n));
}

// Cluster-wide score for framework n. Server-specific kinds are rejected
// here; use pair_score for those.
inline double framework_score(const AllocationState& st, const CriterionSpec& spec, int n) {
    switch (spec.kind) {
        case CriterionKind::Generic: return score_generic(st, spec, n);
        case CriterionKind::Drf: return score_drf(st, n);
        case CriterionKind::PsdsfGlobal: return score_psdsf_global(st, n);
        case CriterionKind::Tsf: return score_tsf(st, n);
        default:
            throw std::invalid_argument("framework_score: criterion is server-specific");
    }
}

inline double pair_score(const AllocationState& st, const CriterionSpec& spec, int n, int j) {
    switch (spec.kind) {
        case CriterionKind::PsdsfServer: return score_psdsf_server(st, n, j);
        case CriterionKind::Rpsdsf: return score_rpsdsf(st, n, j);
        default:
            throw std::invalid_argument("pair_score: criterion is not server-specific");
    }
}

// DRF weights u_{n,i} = max_r d_{n,r} / sum_j c_{j,r} (same for every i).
inline std::vector<double> drf_weights(const Scenario& s) {
    const int I = s.num_servers();
    std::vector<double> u(static_cast<size_t>(s.num_frameworks()) * I);
    for (int n = 0; n < s.num_frameworks(); ++n) {
        double dominant = 0.0;
        for (int r = 0; r < s.num_resources(); ++r) {
            double pooled = 0.0;
            for (int j = 0; j < I; ++j) pooled += s.capacity(j, r);
            dominant = std::max(dominant, s.demand(n, r) / pooled);
        }
        for (int i = 0; i < I; ++i) u[static_cast<size_t>(n) * I + i] = dominant;
    }
    return u;
}

// PS-DSF weights u_{n,i} = max_r d_{n,r} / c_{i,r}.
inline std::vector<double> psdsf_weights(const Scenario& s) {
    const int I = s.num_servers();
    std::vector<double> u(static_cast<size_t>(s.num_frameworks()) * I);
    for (int n = 0; n < s.num_frameworks(); ++n)
        for (int i = 0; i < I; ++i) {
            double b = 0.0;
            for (int r = 0; r < s.num_resources(); ++r)
                b = std::max(b, s.normalized_demand(n, i, r));
            u[static_cast<size_t>(n) * I + i] = b;
        }
    return u;
}

// Weights for the cluster-wide PS-DSF score: u_{n,i} = sum_j delta_{n,j}
// B_{n,j,rho(n,j)}, the same for every i, so that the generic score equals
// the summed per-server dominant shares of the framework's total task count.
inline std::vector<double> psdsf_global_weights(const Scenario& s) {
    const int I = s.num_servers();
    std::vector<double> u(static_cast<size_t>(s.num_frameworks()) * I);
    for (int n = 0; n < s.num_frameworks(); ++n) {
        double acc = 0.0;
        for (int j = 0; j < I; ++j) {
            if (!s.allowed(n, j)) continue;
            double b = 0.0;
            for (int r = 0; r < s.num_resources(); ++r)
                b = std::max(b, s.normalized_demand(n, j, r));
            acc += b;
        }
        for (int i = 0; i < I; ++i) u[static_cast<size_t>(n) * I + i] = acc;
    }
    return u;
}

inline CriterionKind parse_criterion(const std::string& name) {
    if (name == "generic") return CriterionKind::Generic;
    if (name == "drf") return CriterionKind::Drf;
    if (name == "psdsf") return CriterionKind::PsdsfGlobal;
    if (name == "psdsf-server") return CriterionKind::PsdsfServer;
    if (name == "rpsdsf") return CriterionKind::Rpsdsf;
    if (name == "tsf") return CriterionKind::Tsf;
    throw std::invalid_argument("unknown criterion: " + name);
}

inline std::string criterion_name(CriterionKind k) {
    switch (k) {
        case CriterionKind::Generic: return "generic";
        case CriterionKind::Drf: return "drf";
        case CriterionKind::PsdsfGlobal: return "psdsf";
        case CriterionKind::PsdsfServer: return "psdsf-server";
        case CriterionKind::Rpsdsf: return "rpsdsf";
        case CriterionKind::Tsf: return "tsf";
    }
    return "?";
}

}  // namespace fairsched
