// Equality-form LP feasibility by phase-1 simplex on a dense tableau.
// Pricing uses Dantzig's rule (most negative reduced cost) while the
// objective makes progress and falls back to Bland's smallest-index rule
// during degenerate stretches, which keeps the anti-cycling guarantee
// without Bland's crawl on large tableaus. Infeasible problems come back
// with a Farkas certificate y:
//   y^T A >= 0 componentwise and y^T b < 0.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qcorr {

struct LpProblem {
    std::size_t num_vars = 0;
    // equality constraints  a x = b ; row-major, rows() x num_vars
    std::vector<double> a;
    std::vector<double> b;
    // optional lower bounds, default 0 for every variable
    std::vector<double> lower;

    std::size_t rows() const { return b.size(); }

    double& at(std::size_t r, std::size_t c) { return a[r * num_vars + c]; }
    double at(std::size_t r, std::size_t c) const { return a[r * num_vars + c]; }
};

struct LpResult {
    bool feasible = false;
    std::vector<double> x;       // feasible point (num_vars), when feasible
    std::vector<double> farkas;  // dual certificate (rows), when infeasible
    std::size_t iterations = 0;
};

namespace lpdetail {

constexpr double kPivotEps = 1e-9;
constexpr double kFeasTol = 1e-8;

} // namespace lpdetail

inline LpResult lp_feasible(const LpProblem& p) {
    const std::size_t m = p.rows();
    const std::size_t n = p.num_vars;
    if (p.a.size() != m * n) throw std::invalid_argument("lp_feasible: A size != rows x vars");
    if (!p.lower.empty() && p.lower.size() != n)
        throw std::invalid_argument("lp_feasible: lower bound size mismatch");

    // shift lower bounds to zero and flip rows so the rhs is nonnegative
    std::vector<double> rhs(p.b);
    if (!p.lower.empty())
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) rhs[i] -= p.at(i, j) * p.lower[j];
    std::vector<double> row_sign(m, 1.0);
    for (std::size_t i = 0; i < m; ++i)
        if (rhs[i] < 0.0) row_sign[i] = -1.0;

    // tableau: [A | I | b], one extra row of phase-1 reduced costs
    const std::size_t cols = n + m + 1;
    std::vector<double> t((m + 1) * cols, 0.0);
    auto tab = [&](std::size_t r, std::size_t c) -> double& { return t[r * cols + c]; };

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) tab(i, j) = row_sign[i] * p.at(i, j);
        tab(i, n + i) = 1.0;
        tab(i, cols - 1) = row_sign[i] * rhs[i];
    }
    // reduced costs r_j = c_j - 1^T A_j with artificial basis; objective = sum b
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += tab(i, j);
        tab(m, j) = -s;
    }
    double objective = 0.0;
    for (std::size_t i = 0; i < m; ++i) objective += tab(i, cols - 1);

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    LpResult result;
    const std::size_t max_iter = 200 * (m + n) + 10000;
    const std::size_t stall_limit = 200;
    std::size_t stall = 0;
    double last_objective = objective;
    while (true) {
        // objective value tracks degenerate stalls
        double obj_now = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] >= n) obj_now += tab(i, cols - 1);
        if (obj_now < last_objective - 1e-12) {
            stall = 0;
            last_objective = obj_now;
        } else if (++stall > stall_limit) {
            stall = stall_limit + 1;  // saturate: stay on Bland's rule
        }
        const bool bland = stall > stall_limit;

        std::size_t enter = cols - 1;
        if (bland) {
            for (std::size_t j = 0; j < n + m; ++j)
                if (tab(m, j) < -lpdetail::kPivotEps) { enter = j; break; }
        } else {
            double best = -lpdetail::kPivotEps;
            for (std::size_t j = 0; j < n + m; ++j)
                if (tab(m, j) < best) {
                    best = tab(m, j);
                    enter = j;
                }
        }
        if (enter == cols - 1) break;  // optimal

        // ratio test; Bland tie-break on smallest basis variable index
        std::size_t leave = m;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double aij = tab(i, enter);
            if (aij <= lpdetail::kPivotEps) continue;
            const double ratio = tab(i, cols - 1) / aij;
            if (leave == m || ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m)
            throw std::runtime_error("lp_feasible: phase-1 unbounded (should not happen)");

        // pivot
        const double piv = tab(leave, enter);
        double* lrow = &t[leave * cols];
        for (std::size_t c = 0; c < cols; ++c) lrow[c] /= piv;
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == leave) continue;
            const double f = tab(r, enter);
            if (f == 0.0) continue;
            double* row = &t[r * cols];
            for (std::size_t c = 0; c < cols; ++c) row[c] -= f * lrow[c];
        }
        basis[leave] = enter;
        ++result.iterations;
        if (result.iterations > max_iter)
            throw std::runtime_error("lp_feasible: iteration limit exceeded");
    }

    objective = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n) objective += tab(i, cols - 1);

    if (objective <= lpdetail::kFeasTol) {
        result.feasible = true;
        result.x.assign(n, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) result.x[basis[i]] = tab(i, cols - 1);
        if (!p.lower.empty())
            for (std::size_t j = 0; j < n; ++j) result.x[j] += p.lower[j];
        return result;
    }

    // Farkas certificate from the phase-1 multipliers pi_i = 1 - r_{artificial i}
    result.feasible = false;
    result.farkas.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double pi = 1.0 - tab(m, n + i);
        result.farkas[i] = -row_sign[i] * pi;
    }
    return result;
}

} // namespace qcorr
