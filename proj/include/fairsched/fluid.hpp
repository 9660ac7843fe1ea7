#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "fairsched/criteria.hpp"
#include "fairsched/rng.hpp"
#include "fairsched/scenario.hpp"

namespace fairsched {

enum class FluidMode {
    MmfG,  // maximize sum_n phi_n g(U_n), g strictly concave increasing, g(0)=0
    PfA,   // maximize sum_n phi_n g_a(x_n), g_a'(X) = 1/X^a
    UPf,   // maximize sum_n phi_n log(U_n)
};

struct ConcaveG {
    std::function<double(double)> g;
    std::function<double(double)> dg;
    std::function<double(double)> d2g;
};

// Default g for the max-min objective: log(1+X).
inline ConcaveG log1p_g() {
    return {[](double x) { return std::log1p(x); },
            [](double x) { return 1.0 / (1.0 + x); },
            [](double x) { return -1.0 / ((1.0 + x) * (1.0 + x)); }};
}

struct ObjectiveSpec {
    FluidMode mode = FluidMode::PfA;
    double a = 1.0;               // PfA only
    std::vector<double> weights;  // u_{n,i} row-major; MmfG and UPf
    ConcaveG g = log1p_g();       // MmfG only
};

struct SolveOptions {
    double mu_init = 1.0;
    double mu_factor = 0.2;
    double mu_final = 1e-9;
    double inner_tol = 1e-8;   // stationarity at the final barrier parameter
    int max_newton = 200;
    double init_scale = 0.5;   // fraction of per-server headroom at the start
    double log_floor = 1e-12;  // x_n at this floor => infeasible-for-log
    // Optional warm start, row-major (n,i). Pulled strictly inside the
    // polytope before use; empty means the default headroom split.
    std::vector<double> x0;
};

struct FluidSolution {
    bool converged = false;
    std::string error;
    std::vector<double> x;       // row-major (n,i); 0 where delta_{n,i}=0
    std::vector<double> totals;  // x_n
    double objective = 0.0;
    std::vector<double> lambda;  // row-major (i,r), >= 0
    std::vector<double> nu;      // row-major (n,i), >= 0
    double kkt_residual = 0.0;
};

namespace fluid_detail {

struct Cell {
    int n, i;
};

inline double g_a(double a, double x) {
    return a == 1.0 ? std::log(x) : std::pow(x, 1.0 - a) / (1.0 - a);
}
inline double dg_a(double a, double x) { return std::pow(x, -a); }
inline double d2g_a(double a, double x) { return -a * std::pow(x, -a - 1.0); }

}  // namespace fluid_detail

// Interior-point (log-barrier) solver for the concave programs over the
// capacity polytope. Path-following with damped Newton steps; the barrier
// multipliers lambda = mu/slack, nu = mu/x satisfy stationarity exactly at
// each barrier optimum, so the reported KKT residual is the inner gradient
// norm combined with the final mu (complementary slackness level).
inline FluidSolution solve(const Scenario& scenario, const ObjectiveSpec& objective,
                           const SolveOptions& opt = {}) {
    using fluid_detail::Cell;
    const int N = scenario.num_frameworks();
    const int I = scenario.num_servers();
    const int R = scenario.num_resources();

    if (objective.mode == FluidMode::PfA && !(objective.a > 0.0))
        throw std::invalid_argument("solve: parameter a must be positive");
    if (objective.mode != FluidMode::PfA &&
        objective.weights.size() != static_cast<size_t>(N) * I)
        throw std::invalid_argument("solve: criterion weights have wrong size");

    std::vector<Cell> cells;
    for (int n = 0; n < N; ++n)
        for (int i = 0; i < I; ++i)
            if (scenario.allowed(n, i)) cells.push_back({n, i});
    const int V = static_cast<int>(cells.size());

    // B per active cell, indexed [v][r].
    std::vector<std::vector<double>> B(V);
    for (int v = 0; v < V; ++v) B[v] = scenario.normalized_demand(cells[v].n, cells[v].i);

    auto weight = [&](int n, int i) {
        return objective.weights[static_cast<size_t>(n) * I + i];
    };

    // Strictly feasible start: split each server's headroom across the
    // frameworks allowed on it.
    std::vector<int> active_on(I, 0);
    for (const Cell& c : cells) ++active_on[c.i];
    Eigen::VectorXd x(V);
    for (int v = 0; v < V; ++v) {
        double maxb = 0.0;
        for (int r = 0; r < R; ++r) maxb = std::max(maxb, B[v][r]);
        x[v] = opt.init_scale / (active_on[cells[v].i] * std::max(maxb, 1e-300));
    }
    if (!opt.x0.empty()) {
        if (opt.x0.size() != static_cast<size_t>(N) * I)
            throw std::invalid_argument("solve: warm start has wrong size");
        Eigen::VectorXd w(V);
        for (int v = 0; v < V; ++v)
            w[v] = std::max(opt.x0[static_cast<size_t>(cells[v].n) * I + cells[v].i], 1e-9);
        // Shrink uniformly until every capacity constraint has slack.
        std::vector<double> used(static_cast<size_t>(I) * R, 0.0);
        for (int v = 0; v < V; ++v)
            for (int r = 0; r < R; ++r)
                used[static_cast<size_t>(cells[v].i) * R + r] += w[v] * B[v][r];
        double worst = 0.0;
        for (double uv : used) worst = std::max(worst, uv);
        if (worst > 0.0) w *= std::min(1.0, 0.999 / worst);
        x = w;
    }

    auto totals_of = [&](const Eigen::VectorXd& xv) {
        std::vector<double> t(N, 0.0);
        for (int v = 0; v < V; ++v) t[cells[v].n] += xv[v];
        return t;
    };
    auto scores_of = [&](const std::vector<double>& totals, const Eigen::VectorXd& xv) {
        // U_n for weight-based modes.
        std::vector<double> u(N, 0.0);
        for (int v = 0; v < V; ++v)
            u[cells[v].n] += weight(cells[v].n, cells[v].i) * xv[v];
        for (int n = 0; n < N; ++n) u[n] /= scenario.priority(n);
        (void)totals;
        return u;
    };

    // f, per-cell gradient, and per-framework curvature kappa_n such that the
    // Hessian of f is sum_n kappa_n a_n a_n^T with a_n the per-cell linear
    // coefficients (1 for PfA, u/phi for the weight-based modes).
    auto evaluate_f = [&](const Eigen::VectorXd& xv, Eigen::VectorXd* grad,
                          std::vector<double>* kappa) -> double {
        std::vector<double> totals = totals_of(xv);
        double f = 0.0;
        std::vector<double> dfn(N), curv(N);
        if (objective.mode == FluidMode::PfA) {
            for (int n = 0; n < N; ++n) {
                double phi = scenario.priority(n);
                f += phi * fluid_detail::g_a(objective.a, totals[n]);
                dfn[n] = phi * fluid_detail::dg_a(objective.a, totals[n]);
                curv[n] = phi * fluid_detail::d2g_a(objective.a, totals[n]);
            }
            if (grad)
                for (int v = 0; v < V; ++v) (*grad)[v] = dfn[cells[v].n];
        } else {
            std::vector<double> U = scores_of(totals, xv);
            for (int n = 0; n < N; ++n) {
                double phi = scenario.priority(n);
                // Hessian of f is sum_n kappa_n a_n a_n^T with a = u/phi, so
                // kappa_n = phi_n g''(U_n).
                if (objective.mode == FluidMode::MmfG) {
                    f += phi * objective.g.g(U[n]);
                    dfn[n] = objective.g.dg(U[n]);  // grad is dfn * u_{n,i}
                    curv[n] = phi * objective.g.d2g(U[n]);
                } else {  // UPf
                    f += phi * std::log(U[n]);
                    dfn[n] = 1.0 / U[n];
                    curv[n] = -phi / (U[n] * U[n]);
                }
            }
            if (grad)
                for (int v = 0; v < V; ++v)
                    (*grad)[v] = dfn[cells[v].n] * weight(cells[v].n, cells[v].i);
        }
        if (kappa) *kappa = curv;
        return f;
    };

    auto slacks_of = [&](const Eigen::VectorXd& xv) {
        std::vector<double> s(static_cast<size_t>(I) * R, 1.0);
        for (int v = 0; v < V; ++v)
            for (int r = 0; r < R; ++r)
                s[static_cast<size_t>(cells[v].i) * R + r] -= xv[v] * B[v][r];
        return s;
    };

    // Extended precision: near convergence the improvement per step is below
    // double resolution of f, which would stall the backtracking line search.
    auto objective_ld = [&](const Eigen::VectorXd& xv) -> long double {
        std::vector<double> totals = totals_of(xv);
        long double f = 0.0L;
        if (objective.mode == FluidMode::PfA) {
            for (int n = 0; n < N; ++n)
                f += static_cast<long double>(scenario.priority(n)) *
                     fluid_detail::g_a(objective.a, totals[n]);
        } else {
            std::vector<double> U = scores_of(totals, xv);
            for (int n = 0; n < N; ++n) {
                long double phi = scenario.priority(n);
                f += objective.mode == FluidMode::MmfG
                         ? phi * static_cast<long double>(objective.g.g(U[n]))
                         : phi * std::log(static_cast<long double>(U[n]));
            }
        }
        return f;
    };

    auto barrier_value = [&](const Eigen::VectorXd& xv, double mu) -> long double {
        long double f = objective_ld(xv);
        std::vector<double> s = slacks_of(xv);
        for (double sv : s) {
            if (sv <= 0.0) return -std::numeric_limits<long double>::infinity();
            f += static_cast<long double>(mu) * std::log(static_cast<long double>(sv));
        }
        for (int v = 0; v < V; ++v) {
            if (xv[v] <= 0.0) return -std::numeric_limits<long double>::infinity();
            f += static_cast<long double>(mu) * std::log(static_cast<long double>(xv[v]));
        }
        return f;
    };

    FluidSolution sol;
    double grad_norm = std::numeric_limits<double>::infinity();

    double mu = opt.mu_init;
    bool last = false;
    while (true) {
        double tol = last ? opt.inner_tol : std::max(opt.inner_tol, 0.1 * mu);
        for (int it = 0; it < opt.max_newton; ++it) {
            Eigen::VectorXd grad(V);
            std::vector<double> kappa;
            evaluate_f(x, &grad, &kappa);
            std::vector<double> s = slacks_of(x);

            // grad of the barrier terms
            for (int v = 0; v < V; ++v) {
                double acc = 0.0;
                for (int r = 0; r < R; ++r)
                    acc += B[v][r] / s[static_cast<size_t>(cells[v].i) * R + r];
                grad[v] += -mu * acc + mu / x[v];
            }
            grad_norm = grad.lpNorm<Eigen::Infinity>();
            if (grad_norm <= tol) break;

            // Negated Hessian (positive definite).
            Eigen::MatrixXd H = Eigen::MatrixXd::Zero(V, V);
            for (int v = 0; v < V; ++v)
                for (int w = 0; w <= v; ++w) {
                    if (cells[v].n != cells[w].n) continue;
                    double av = objective.mode == FluidMode::PfA
                                    ? 1.0
                                    : weight(cells[v].n, cells[v].i) /
                                          scenario.priority(cells[v].n);
                    double aw = objective.mode == FluidMode::PfA
                                    ? 1.0
                                    : weight(cells[w].n, cells[w].i) /
                                          scenario.priority(cells[w].n);
                    double hval = -kappa[cells[v].n] * av * aw;
                    H(v, w) += hval;
                    if (v != w) H(w, v) += hval;
                }
            for (int v = 0; v < V; ++v)
                for (int w = 0; w <= v; ++w) {
                    if (cells[v].i != cells[w].i) continue;
                    double acc = 0.0;
                    for (int r = 0; r < R; ++r) {
                        double sv = s[static_cast<size_t>(cells[v].i) * R + r];
                        acc += B[v][r] * B[w][r] / (sv * sv);
                    }
                    H(v, w) += mu * acc;
                    if (v != w) H(w, v) += mu * acc;
                }
            for (int v = 0; v < V; ++v) H(v, v) += mu / (x[v] * x[v]) + 1e-14;

            // Jacobi-scaled solve with one refinement step; the raw system is
            // severely ill-conditioned once barrier slacks approach 1e-9.
            Eigen::VectorXd scale = H.diagonal().cwiseSqrt();
            Eigen::MatrixXd Hs = scale.cwiseInverse().asDiagonal() * H *
                                 scale.cwiseInverse().asDiagonal();
            auto ldlt = Hs.ldlt();
            Eigen::VectorXd gs = grad.cwiseQuotient(scale);
            Eigen::VectorXd y = ldlt.solve(gs);
            y += ldlt.solve(gs - Hs * y);
            Eigen::VectorXd d = y.cwiseQuotient(scale);

            // Fraction-to-boundary on x > 0 and slack > 0.
            double alpha = 1.0;
            for (int v = 0; v < V; ++v)
                if (d[v] < 0.0) alpha = std::min(alpha, -0.995 * x[v] / d[v]);
            std::vector<double> ds(static_cast<size_t>(I) * R, 0.0);
            for (int v = 0; v < V; ++v)
                for (int r = 0; r < R; ++r)
                    ds[static_cast<size_t>(cells[v].i) * R + r] -= d[v] * B[v][r];
            for (size_t k = 0; k < ds.size(); ++k)
                if (ds[k] < 0.0) alpha = std::min(alpha, -0.995 * s[k] / ds[k]);

            double f0 = barrier_value(x, mu);
            int bt = 0;
            while (bt < 60 && barrier_value(x + alpha * d, mu) < f0) {
                alpha *= 0.5;
                ++bt;
            }
            if (bt == 60) break;  // stalled; accept current iterate
            x += alpha * d;
        }
        if (last) break;
        mu *= opt.mu_factor;
        if (mu <= opt.mu_final) {
            mu = opt.mu_final;
            last = true;
        }
    }

    // Assemble the solution and multipliers.
    sol.x.assign(static_cast<size_t>(N) * I, 0.0);
    for (int v = 0; v < V; ++v)
        sol.x[static_cast<size_t>(cells[v].n) * I + cells[v].i] = x[v];
    sol.totals = totals_of(x);
    sol.objective = evaluate_f(x, nullptr, nullptr);

    std::vector<double> s = slacks_of(x);
    sol.lambda.resize(static_cast<size_t>(I) * R);
    for (size_t k = 0; k < sol.lambda.size(); ++k) sol.lambda[k] = mu / s[k];
    sol.nu.assign(static_cast<size_t>(N) * I, 0.0);
    for (int v = 0; v < V; ++v)
        sol.nu[static_cast<size_t>(cells[v].n) * I + cells[v].i] = mu / x[v];

    sol.kkt_residual = std::max(grad_norm, mu);

    // Multiplier recovery. The barrier estimates lambda = mu/s are exact only
    // on the central path; when the final Newton iterates stall at numerical
    // resolution the primal point is near-optimal while mu/s is not. Fitting
    // multipliers of the near-active constraints by least squares then gives
    // a smaller true KKT residual for the returned (x, lambda, nu) triple.
    {
        Eigen::VectorXd fgrad(V);
        evaluate_f(x, &fgrad, nullptr);
        for (double thr : {1e-7, 1e-6, 1e-5, 1e-4}) {
            std::vector<int> cap, low;
            for (int k = 0; k < I * R; ++k)
                if (s[k] <= thr) cap.push_back(k);
            for (int v = 0; v < V; ++v)
                if (x[v] <= thr) low.push_back(v);
            std::vector<int> cols;  // 0..cap-1 capacity, then lower bounds
            for (size_t c = 0; c < cap.size() + low.size(); ++c)
                cols.push_back(static_cast<int>(c));
            const size_t ncap = cap.size();
            auto column = [&](int c, Eigen::VectorXd& out) {
                out.setZero();
                if (static_cast<size_t>(c) < ncap) {
                    int i = cap[c] / R, r = cap[c] % R;
                    for (int v = 0; v < V; ++v)
                        if (cells[v].i == i) out[v] = B[v][r];
                } else {
                    out[low[c - ncap]] = -1.0;
                }
            };
            Eigen::VectorXd z;
            // Nonnegative fit: drop clamped columns and re-solve.
            for (int pass = 0; pass < 4 && !cols.empty(); ++pass) {
                Eigen::MatrixXd M(V, cols.size());
                Eigen::VectorXd col(V);
                for (size_t c = 0; c < cols.size(); ++c) {
                    column(cols[c], col);
                    M.col(c) = col;
                }
                Eigen::MatrixXd A = M.transpose() * M;
                A.diagonal().array() += 1e-12;
                z = A.ldlt().solve(M.transpose() * fgrad);
                std::vector<int> keep;
                for (size_t c = 0; c < cols.size(); ++c)
                    if (z[c] > 0.0) keep.push_back(cols[c]);
                if (keep.size() == cols.size()) break;
                cols = keep;
            }
            if (cols.empty()) continue;
            Eigen::VectorXd resid = fgrad, col(V);
            double comp = 0.0;
            for (size_t c = 0; c < cols.size(); ++c) {
                column(cols[c], col);
                resid -= z[c] * col;
                comp = std::max(comp, static_cast<size_t>(cols[c]) < ncap
                                          ? z[c] * s[cap[cols[c]]]
                                          : z[c] * x[low[cols[c] - ncap]]);
            }
            double res = std::max(resid.lpNorm<Eigen::Infinity>(), comp);
            if (res < sol.kkt_residual) {
                sol.kkt_residual = res;
                std::fill(sol.lambda.begin(), sol.lambda.end(), 0.0);
                std::fill(sol.nu.begin(), sol.nu.end(), 0.0);
                for (size_t c = 0; c < cols.size(); ++c) {
                    if (static_cast<size_t>(cols[c]) < ncap) {
                        sol.lambda[cap[cols[c]]] = z[c];
                    } else {
                        const Cell& cl = cells[low[cols[c] - ncap]];
                        sol.nu[static_cast<size_t>(cl.n) * I + cl.i] = z[c];
                    }
                }
            }
        }
    }

    sol.converged = sol.kkt_residual <= 1e-6;
    if (!sol.converged)
        sol.error = "non-convergence: best KKT residual " + std::to_string(sol.kkt_residual);

    bool uses_log = objective.mode != FluidMode::MmfG;
    if (uses_log) {
        for (int n = 0; n < N; ++n)
            if (sol.totals[n] <= opt.log_floor) {
                sol.converged = false;
                sol.error = "infeasible-for-log: framework " +
                            std::to_string(scenario.frameworks[n].id) +
                            " pinned at zero allocation";
            }
    }
    return sol;
}

// The alpha-fair concave family g(u) = ((1+u)^(1-alpha) - 1)/(1-alpha),
// shifted so g(0) = 0. Concavity grows with alpha; the maximizer of
// sum phi g(U) approaches the lexicographic max-min point as alpha -> inf.
inline ConcaveG alpha_fair_g(double alpha) {
    if (!(alpha > 0.0) || alpha == 1.0)
        throw std::invalid_argument("alpha_fair_g: alpha must be positive and != 1");
    return {[alpha](double u) {
                return (std::pow(1.0 + u, 1.0 - alpha) - 1.0) / (1.0 - alpha);
            },
            [alpha](double u) { return std::pow(1.0 + u, -alpha); },
            [alpha](double u) { return -alpha * std::pow(1.0 + u, -alpha - 1.0); }};
}

// Max-min refinement by continuation: re-solve the weighted concave program
// with increasingly concave alpha-fair g, warm-starting each stage from the
// previous optimum. Returns the last stage's solution.
inline FluidSolution solve_mmf_continuation(const Scenario& scenario,
                                            const std::vector<double>& weights,
                                            double alpha_max = 16.0,
                                            SolveOptions opt = {}) {
    const int N = scenario.num_frameworks();
    const int I = scenario.num_servers();
    FluidSolution sol;
    std::vector<double> w = weights;
    auto min_score = [&](const std::vector<double>& x) {
        double lo = std::numeric_limits<double>::infinity();
        for (int n = 0; n < N; ++n) {
            double u = 0.0;
            for (int i = 0; i < I; ++i)
                u += weights[static_cast<size_t>(n) * I + i] *
                     x[static_cast<size_t>(n) * I + i];
            lo = std::min(lo, u / scenario.priority(n));
        }
        return lo;
    };
    double best_lo = -std::numeric_limits<double>::infinity();
    for (double alpha = 2.0; alpha <= alpha_max; alpha *= 2.0) {
        ObjectiveSpec obj{FluidMode::MmfG, 1.0, w, alpha_fair_g(alpha)};
        FluidSolution stage = solve(scenario, obj, opt);
        double lo = min_score(stage.x);
        // Once g' underflows below the barrier level the stage optimum
        // drifts off the max-min point; keep the last improving stage.
        if (lo < best_lo * (1.0 - 1e-6)) break;
        best_lo = std::max(best_lo, lo);
        sol = stage;
        opt.x0 = sol.x;
        opt.mu_init = 1e-3;  // later stages start near the previous optimum
        // Rescale so the smallest score sits near 1; keeps g' away from the
        // underflow range for as long as possible.
        double wl = min_score(sol.x) > 0.0 ? min_score(sol.x) : 1.0;
        for (size_t k = 0; k < w.size(); ++k) w[k] = weights[k] / wl;
    }
    return sol;
}

// Utilization sum_n x_{n,i} B_{n,i,r} of server i, resource r, for a raw
// row-major allocation matrix.
inline double utilization(const Scenario& s, const std::vector<double>& x, int i, int r) {
    double used = 0.0;
    for (int n = 0; n < s.num_frameworks(); ++n)
        used += x[static_cast<size_t>(n) * s.num_servers() + i] * s.normalized_demand(n, i, r);
    return used;
}

// Per-server full-booking verdict: does each server have at least one
// resource with utilization >= 1 - tol?
inline std::vector<bool> check_full_booking(const Scenario& s, const std::vector<double>& x,
                                            double tol) {
    std::vector<bool> booked(s.num_servers(), false);
    for (int i = 0; i < s.num_servers(); ++i)
        for (int r = 0; r < s.num_resources(); ++r)
            if (utilization(s, x, i, r) >= 1.0 - tol) booked[i] = true;
    return booked;
}

// Phi(x, x*) = sum_n phi_n (x_n - x*_n) / (x*_n)^a. Nonpositive for every
// feasible x when x* solves the proportional-fairness program.
inline double prop_gap(const Scenario& s, const std::vector<double>& x,
                       const std::vector<double>& x_star, double a) {
    const int I = s.num_servers();
    double phi_sum = 0.0;
    for (int n = 0; n < s.num_frameworks(); ++n) {
        double xn = 0.0, xn_star = 0.0;
        for (int i = 0; i < I; ++i) {
            xn += x[static_cast<size_t>(n) * I + i];
            xn_star += x_star[static_cast<size_t>(n) * I + i];
        }
        if (xn_star <= 0.0)
            throw std::invalid_argument("prop_gap: reference allocation has x*_n = 0");
        phi_sum += s.priority(n) * (xn - xn_star) / std::pow(xn_star, a);
    }
    return phi_sum;
}

struct UmmfVerdict {
    bool fair = true;
    // (larger-score framework, smaller-score framework, server)
    std::vector<std::tuple<int, int, int>> violations;
};

// U-max-min fairness check: a framework with a strictly larger score may not
// hold allocation on a fully booked server where a smaller-score framework
// has tasks.
inline UmmfVerdict check_ummf(const Scenario& s, const std::vector<double>& x,
                              const std::vector<double>& u, double tol) {
    const int N = s.num_frameworks();
    const int I = s.num_servers();
    std::vector<double> score(N, 0.0);
    for (int n = 0; n < N; ++n) {
        for (int i = 0; i < I; ++i)
            score[n] += u[static_cast<size_t>(n) * I + i] * x[static_cast<size_t>(n) * I + i];
        score[n] /= s.priority(n);
    }
    std::vector<bool> booked(I, false);
    for (int i = 0; i < I; ++i)
        for (int r = 0; r < s.num_resources(); ++r)
            if (utilization(s, x, i, r) >= 1.0 - tol) booked[i] = true;

    UmmfVerdict verdict;
    for (int l = 0; l < N; ++l)
        for (int m = 0; m < N; ++m) {
            if (l == m || score[l] <= score[m] + tol) continue;
            for (int i = 0; i < I; ++i) {
                if (!booked[i]) continue;
                if (x[static_cast<size_t>(m) * I + i] > 0.0 &&
                    x[static_cast<size_t>(l) * I + i] > tol) {
                    verdict.fair = false;
                    verdict.violations.emplace_back(l, m, i);
                }
            }
        }
    return verdict;
}

// Scenario predicates reported alongside the oracle verdicts.
inline bool all_b_positive(const Scenario& s) {
    for (int n = 0; n < s.num_frameworks(); ++n)
        for (int i = 0; i < s.num_servers(); ++i)
            for (int r = 0; r < s.num_resources(); ++r)
                if (!(s.normalized_demand(n, i, r) > 0.0)) return false;
    return true;
}

// Uniqueness hypothesis: frameworks sharing any server must have identical
// demands, identical server sets, and identical criterion weights.
inline bool ummf_uniqueness_predicate(const Scenario& s, const std::vector<double>& u) {
    const int N = s.num_frameworks();
    const int I = s.num_servers();
    for (int m = 0; m < N; ++m)
        for (int l = m + 1; l < N; ++l) {
            bool share = false;
            for (int j = 0; j < I; ++j)
                if (s.allowed(m, j) && s.allowed(l, j)) share = true;
            if (!share) continue;
            for (int r = 0; r < s.num_resources(); ++r)
                if (s.demand(m, r) != s.demand(l, r)) return false;
            for (int i = 0; i < I; ++i) {
                if (s.allowed(m, i) != s.allowed(l, i)) return false;
                if (u[static_cast<size_t>(m) * I + i] != u[static_cast<size_t>(l) * I + i])
                    return false;
            }
        }
    return true;
}

// Uniform random feasible allocation: random positive direction, scaled to
// the polytope boundary, pulled back by a uniform factor.
inline std::vector<double> sample_feasible(const Scenario& s, SplitMix64& rng) {
    const int N = s.num_frameworks();
    const int I = s.num_servers();
    std::vector<double> dir(static_cast<size_t>(N) * I, 0.0);
    for (int n = 0; n < N; ++n)
        for (int i = 0; i < I; ++i)
            if (s.allowed(n, i)) dir[static_cast<size_t>(n) * I + i] = rng.next_double();
    double t = std::numeric_limits<double>::infinity();
    for (int i = 0; i < I; ++i)
        for (int r = 0; r < s.num_resources(); ++r) {
            double denom = utilization(s, dir, i, r);
            if (denom > 0.0) t = std::min(t, 1.0 / denom);
        }
    if (!std::isfinite(t)) t = 0.0;
    double pull = rng.next_double();
    for (double& v : dir) v *= t * pull;
    return dir;
}

// Exhaustive lexicographic max-min oracle over integer allocations. Tiny
// instances only; the enumeration guard rejects anything larger.
inline std::vector<double> brute_force_mmf(const Scenario& s, const std::vector<double>& u,
                                           double max_points = 1e6) {
    const int N = s.num_frameworks();
    const int I = s.num_servers();
    const int R = s.num_resources();

    struct Cell {
        int n, i;
        long max_count;
    };
    std::vector<Cell> cells;
    double points = 1.0;
    for (int n = 0; n < N; ++n)
        for (int i = 0; i < I; ++i) {
            if (!s.allowed(n, i)) continue;
            double cap = std::numeric_limits<double>::infinity();
            for (int r = 0; r < R; ++r)
                if (s.demand(n, r) > 0.0)
                    cap = std::min(cap, s.capacity(i, r) / s.demand(n, r));
            long m = static_cast<long>(std::floor(cap + 1e-9));
            cells.push_back({n, i, m});
            points *= static_cast<double>(m + 1);
            if (points > max_points)
                throw std::invalid_argument(
                    "brute_force_mmf: enumeration guard exceeded (> 1e6 points)");
        }

    std::vector<long> counts(cells.size(), 0), best_counts;
    std::vector<double> residual;
    for (int i = 0; i < I; ++i)
        for (int r = 0; r < R; ++r) residual.push_back(s.capacity(i, r));

    std::vector<double> best_scores;
    double best_total = -1.0;

    auto scores_sorted = [&](const std::vector<long>& c, double* total) {
        std::vector<double> sc(N, 0.0);
        double t = 0.0;
        for (size_t k = 0; k < cells.size(); ++k) {
            sc[cells[k].n] +=
                u[static_cast<size_t>(cells[k].n) * I + cells[k].i] * c[k];
            t += static_cast<double>(c[k]);
        }
        for (int n = 0; n < N; ++n) sc[n] /= s.priority(n);
        std::sort(sc.begin(), sc.end());
        *total = t;
        return sc;
    };

    std::function<void(size_t)> visit = [&](size_t k) {
        if (k == cells.size()) {
            double total = 0.0;
            std::vector<double> sc = scores_sorted(counts, &total);
            bool better = false, worse = false;
            if (best_scores.empty()) {
                better = true;
            } else {
                for (int n = 0; n < N && !better && !worse; ++n) {
                    if (sc[n] > best_scores[n] + 1e-12) better = true;
                    else if (sc[n] < best_scores[n] - 1e-12) worse = true;
                }
                if (!better && !worse) {
                    if (total > best_total + 1e-12) better = true;
                    else if (total >= best_total - 1e-12 && counts < best_counts) better = true;
                }
            }
            if (better) {
                best_scores = sc;
                best_total = total;
                best_counts = counts;
            }
            return;
        }
        const Cell& c = cells[k];
        long fit = c.max_count;
        for (int r = 0; r < R; ++r)
            if (s.demand(c.n, r) > 0.0)
                fit = std::min(fit, static_cast<long>(std::floor(
                                        residual[static_cast<size_t>(c.i) * R + r] /
                                            s.demand(c.n, r) +
                                        1e-9)));
        for (long t = 0; t <= fit; ++t) {
            counts[k] = t;
            for (int r = 0; r < R; ++r)
                residual[static_cast<size_t>(c.i) * R + r] -= t * s.demand(c.n, r);
            visit(k + 1);
            for (int r = 0; r < R; ++r)
                residual[static_cast<size_t>(c.i) * R + r] += t * s.demand(c.n, r);
        }
        counts[k] = 0;
    };
    visit(0);

    std::vector<double> x(static_cast<size_t>(N) * I, 0.0);
    for (size_t k = 0; k < cells.size(); ++k)
        x[static_cast<size_t>(cells[k].n) * I + cells[k].i] =
            static_cast<double>(best_counts[k]);
    return x;
}

}  // namespace fairsched
