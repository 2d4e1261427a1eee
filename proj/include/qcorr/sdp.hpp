// Dense primal-dual interior-point solver for small SDPs in inequality form:
//
//   minimize   objective . x
//   subject to F_b(x) = C_b + sum_i x_i A_{b,i}  PSD  for every block b,
//
// with Hermitian blocks and sparse coefficient matrices. HKM scaling with a
// Mehrotra predictor-corrector; one Schur factorization per iteration. The
// caller supplies a strictly feasible starting point (or zero, when the
// constant blocks are already positive definite).
//
// The Schur complement H_ij = Re Tr(A_i X A_j S^-1) is dense; an optional
// elimination hint (`schur_groups`) declares consecutive variable ranges
// where distinct non-final ranges never co-occur in a block, so their H
// off-diagonal blocks vanish and block elimination replaces one large
// Cholesky by several small ones.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <tuple>
#include <vector>

#include "qcorr/detail/dense_real.hpp"
#include "qcorr/eig.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

struct SparseHermitian {
    struct Entry {
        std::size_t row, col;
        cplx value;
    };
    std::vector<Entry> entries;  // full matrix, both triangles

    void add(std::size_t r, std::size_t c, cplx v) { entries.push_back({r, c, v}); }
};

struct LmiBlock {
    std::size_t dim = 0;
    ComplexMatrix constant;               // C_b
    std::vector<std::size_t> vars;        // global variable indices
    std::vector<SparseHermitian> coeffs;  // parallel to vars
};

struct SdpProblem {
    std::size_t num_vars = 0;
    std::vector<double> objective;
    std::vector<LmiBlock> blocks;
    std::vector<double> initial_x;  // optional strictly feasible start
};

enum class SdpStatus { optimal, stalled, unbounded, infeasible_start };

inline const char* to_string(SdpStatus s) {
    switch (s) {
        case SdpStatus::optimal: return "optimal";
        case SdpStatus::stalled: return "stalled";
        case SdpStatus::unbounded: return "unbounded";
        case SdpStatus::infeasible_start: return "infeasible_start";
    }
    return "unknown";
}

struct SdpOptions {
    double gap_tol = 1e-8;     // relative complementarity gap
    double feas_tol = 1e-8;    // residual on Tr(A_i X) = c_i
    double accept_tol = 1e-6;  // a run that stalls inside this band still counts
    std::size_t max_iterations = 100;
    double step_fraction = 0.98;
    int verbosity = 0;
    // optional: consecutive (start, length) variable ranges; only the last
    // range couples to the others in the Schur matrix
    std::vector<std::pair<std::size_t, std::size_t>> schur_groups;
};

struct SdpResult {
    SdpStatus status = SdpStatus::stalled;
    double value = 0.0;  // objective . x
    std::vector<double> x;
    std::vector<ComplexMatrix> slacks;  // F_b(x)
    std::vector<ComplexMatrix> duals;   // X_b
    double gap = 0.0;                   // absolute <X, S>
    double dual_residual = 0.0;         // max_i |c_i - Tr(A_i X)|
    std::size_t iterations = 0;
};

namespace sdpdetail {

// complex Cholesky S = L L^dagger, lower triangular; false if not PD
inline bool chol_complex(const ComplexMatrix& s, ComplexMatrix& l) {
    const std::size_t n = s.rows();
    l = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = s(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (d <= 0.0 || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx v = s(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * std::conj(l(j, k));
            l(i, j) = v / ljj;
        }
    }
    return true;
}

// S^-1 from the Cholesky factor: S^-1 = L^-dagger L^-1
inline ComplexMatrix inverse_from_chol(const ComplexMatrix& l) {
    const std::size_t n = l.rows();
    ComplexMatrix linv(n, n);  // L^-1, lower triangular
    for (std::size_t j = 0; j < n; ++j) {
        linv(j, j) = 1.0 / l(j, j);
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = 0.0;
            for (std::size_t k = j; k < i; ++k) s += l(i, k) * linv(k, j);
            linv(i, j) = -s / l(i, i);
        }
    }
    ComplexMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            cplx s = 0.0;
            for (std::size_t k = i; k < n; ++k) s += std::conj(linv(k, i)) * linv(k, j);
            inv(i, j) = s;
            inv(j, i) = std::conj(s);
        }
    return inv;
}

// largest step alpha with M + alpha dM PSD, given M > 0 (huge value if unbounded)
inline double max_step(const ComplexMatrix& m, const ComplexMatrix& dm) {
    ComplexMatrix l;
    if (!chol_complex(m, l)) return 0.0;
    const std::size_t n = m.rows();
    // G = L^-1 dM L^-dagger
    ComplexMatrix g = dm;
    // forward solve L Y = dM (columns)
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = g(i, c);
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * g(k, c);
            g(i, c) = s / l(i, i);
        }
    // right solve Z L^dagger = Y  =>  rows of Z via conjugated forward solve
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = g(r, j);
            for (std::size_t k = 0; k < j; ++k) s -= g(r, k) * std::conj(l(j, k));
            g(r, j) = s / l(j, j);
        }
    ComplexMatrix h = (g + adjoint(g)) * cplx(0.5);
    const double lmin = herm_eig(h, 1e-4).eigenvalues.front();
    if (lmin >= -1e-14) return 1e100;
    return -1.0 / lmin;
}

// Schur-complement factorization respecting the group elimination hint.
struct SchurSolver {
    std::size_t m = 0;
    std::vector<std::pair<std::size_t, std::size_t>> groups;  // last = hub
    std::vector<double>* h = nullptr;     // m x m, lower triangle valid
    std::vector<std::vector<double>> yt;  // per private group: hub_len x glen

    // factors in place; returns false if H is not positive definite
    bool factor(std::vector<double>& hmat, std::size_t mvars,
                const std::vector<std::pair<std::size_t, std::size_t>>& groups_in) {
        m = mvars;
        h = &hmat;
        groups = groups_in;
        if (groups.empty()) groups = {{0, m}};
        const auto [hub_start, hub_len] = groups.back();
        double* a = hmat.data();
        yt.assign(groups.size() - 1, {});
        for (std::size_t gi = 0; gi + 1 < groups.size(); ++gi) {
            const auto [s, len] = groups[gi];
            if (!detail::cholesky(a + s * m + s, m, len)) return false;
            // panel B = H[hub, g]; Yt = B L^-T stored separately (keeps H intact)
            auto& y = yt[gi];
            y.resize(hub_len * len);
            for (std::size_t r = 0; r < hub_len; ++r)
                for (std::size_t c = 0; c < len; ++c)
                    y[r * len + c] = a[(hub_start + r) * m + s + c];
            detail::trsm_right_ltrans(y.data(), len, a + s * m + s, m, hub_len, len);
            detail::syrk_sub_lower(a + hub_start * m + hub_start, m, y.data(), len,
                                   hub_len, len);
        }
        return detail::cholesky(a + hub_start * m + hub_start, m, hub_len);
    }

    void solve(std::vector<double>& rhs) const {
        const double* a = h->data();
        const auto [hub_start, hub_len] = groups.back();
        std::vector<std::vector<double>> z(groups.size() - 1);
        for (std::size_t gi = 0; gi + 1 < groups.size(); ++gi) {
            const auto [s, len] = groups[gi];
            z[gi].assign(rhs.begin() + s, rhs.begin() + s + len);
            detail::forward_subst(a + s * m + s, m, len, z[gi].data());
            const auto& y = yt[gi];
            for (std::size_t r = 0; r < hub_len; ++r) {
                double acc = 0.0;
                for (std::size_t c = 0; c < len; ++c) acc += y[r * len + c] * z[gi][c];
                rhs[hub_start + r] -= acc;
            }
        }
        detail::forward_subst(a + hub_start * m + hub_start, m, hub_len, &rhs[hub_start]);
        detail::backward_subst(a + hub_start * m + hub_start, m, hub_len, &rhs[hub_start]);
        for (std::size_t gi = 0; gi + 1 < groups.size(); ++gi) {
            const auto [s, len] = groups[gi];
            auto& w = z[gi];
            const auto& y = yt[gi];
            for (std::size_t r = 0; r < hub_len; ++r) {
                const double v = rhs[hub_start + r];
                if (v == 0.0) continue;
                for (std::size_t c = 0; c < len; ++c) w[c] -= v * y[r * len + c];
            }
            detail::backward_subst(a + s * m + s, m, len, w.data());
            std::copy(w.begin(), w.end(), rhs.begin() + s);
        }
    }
};

inline void validate_problem(const SdpProblem& p) {
    if (p.objective.size() != p.num_vars)
        throw std::invalid_argument("sdp_min: objective size != num_vars");
    if (!p.initial_x.empty() && p.initial_x.size() != p.num_vars)
        throw std::invalid_argument("sdp_min: initial_x size != num_vars");
    for (const auto& b : p.blocks) {
        if (b.constant.rows() != b.dim || b.constant.cols() != b.dim)
            throw std::invalid_argument("sdp_min: constant block dimension mismatch");
        if (!is_hermitian(b.constant, 1e-12))
            throw std::invalid_argument("sdp_min: constant block not Hermitian");
        if (b.vars.size() != b.coeffs.size())
            throw std::invalid_argument("sdp_min: vars/coeffs size mismatch");
        for (std::size_t k = 0; k < b.vars.size(); ++k) {
            if (b.vars[k] >= p.num_vars)
                throw std::invalid_argument("sdp_min: variable index out of range");
            // Hermiticity of sparse coefficients: entries must pair up
            ComplexMatrix dense(b.dim, b.dim);
            for (const auto& e : b.coeffs[k].entries) {
                if (e.row >= b.dim || e.col >= b.dim)
                    throw std::invalid_argument("sdp_min: coefficient entry out of range");
                dense(e.row, e.col) += e.value;
            }
            if (!is_hermitian(dense, 1e-12))
                throw std::invalid_argument("sdp_min: coefficient matrix not Hermitian");
        }
    }
}

} // namespace sdpdetail

inline SdpResult sdp_min(const SdpProblem& p, const SdpOptions& opts = {}) {
    sdpdetail::validate_problem(p);
    const std::size_t m = p.num_vars;
    const std::size_t nblocks = p.blocks.size();

    double total_dim = 0.0;
    for (const auto& b : p.blocks) total_dim += static_cast<double>(b.dim);

    double cnorm = 1.0;
    for (double ci : p.objective) cnorm = std::max(cnorm, std::abs(ci));

    SdpResult res;
    res.x = p.initial_x.empty() ? std::vector<double>(m, 0.0) : p.initial_x;

    // dual blocks X start at the identity
    res.duals.resize(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b) res.duals[b] = identity(p.blocks[b].dim);

    std::vector<ComplexMatrix> s(nblocks), sinv(nblocks), schol(nblocks);

    // every exit refreshes the objective; a stall inside accept_tol is still
    // a solved problem (gap and residual are from the last completed pass)
    auto finish = [&](SdpStatus status) -> SdpResult& {
        res.value = 0.0;
        for (std::size_t i = 0; i < m; ++i) res.value += p.objective[i] * res.x[i];
        res.slacks = s;
        if (status == SdpStatus::stalled &&
            res.gap <= opts.accept_tol * (1.0 + std::abs(res.value)) &&
            res.dual_residual <= opts.accept_tol * cnorm)
            status = SdpStatus::optimal;
        res.status = status;
        return res;
    };

    auto build_slacks = [&](const std::vector<double>& x) {
        for (std::size_t b = 0; b < nblocks; ++b) {
            const auto& blk = p.blocks[b];
            ComplexMatrix sb = blk.constant;
            for (std::size_t k = 0; k < blk.vars.size(); ++k) {
                const double xv = x[blk.vars[k]];
                if (xv == 0.0) continue;
                for (const auto& e : blk.coeffs[k].entries) sb(e.row, e.col) += xv * e.value;
            }
            s[b] = std::move(sb);
        }
    };

    build_slacks(res.x);
    for (std::size_t b = 0; b < nblocks; ++b)
        if (!sdpdetail::chol_complex(s[b], schol[b])) {
            res.status = SdpStatus::infeasible_start;
            res.slacks = s;
            return res;
        }

    std::vector<double> hmat(m * m);
    std::vector<double> rhs(m), dx_aff(m), dx(m);
    std::vector<ComplexMatrix> ds_aff(nblocks), dx_mat_aff(nblocks), ds(nblocks),
        dx_mat(nblocks);

    auto assemble_ds = [&](const std::vector<double>& step) {
        for (std::size_t b = 0; b < nblocks; ++b) {
            const auto& blk = p.blocks[b];
            ComplexMatrix d(blk.dim, blk.dim);
            for (std::size_t k = 0; k < blk.vars.size(); ++k) {
                const double xv = step[blk.vars[k]];
                if (xv == 0.0) continue;
                for (const auto& e : blk.coeffs[k].entries) d(e.row, e.col) += xv * e.value;
            }
            ds[b] = std::move(d);
        }
    };

    const double tau = opts.step_fraction;

    for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
        // factor slacks, invert
        for (std::size_t b = 0; b < nblocks; ++b) {
            if (!sdpdetail::chol_complex(s[b], schol[b])) return finish(SdpStatus::stalled);
            sinv[b] = sdpdetail::inverse_from_chol(schol[b]);
        }

        // complementarity and dual residual
        double gap = 0.0;
        for (std::size_t b = 0; b < nblocks; ++b)
            gap += trace_product_re(res.duals[b], s[b]);
        const double mu = gap / total_dim;

        std::vector<double> trax(m, 0.0), asinv(m, 0.0);
        for (std::size_t b = 0; b < nblocks; ++b) {
            const auto& blk = p.blocks[b];
            for (std::size_t k = 0; k < blk.vars.size(); ++k) {
                double tx = 0.0, ts = 0.0;
                for (const auto& e : blk.coeffs[k].entries) {
                    tx += (e.value * res.duals[b](e.col, e.row)).real();
                    ts += (e.value * sinv[b](e.col, e.row)).real();
                }
                trax[blk.vars[k]] += tx;
                asinv[blk.vars[k]] += ts;
            }
        }
        double dual_res = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            dual_res = std::max(dual_res, std::abs(p.objective[i] - trax[i]));

        res.value = 0.0;
        for (std::size_t i = 0; i < m; ++i) res.value += p.objective[i] * res.x[i];
        res.gap = gap;
        res.dual_residual = dual_res;

        if (opts.verbosity > 0)
            std::fprintf(stderr, "sdp iter %3zu  obj % .9e  gap %.3e  dres %.3e\n",
                         res.iterations, res.value, gap, dual_res);

        if (gap <= opts.gap_tol * (1.0 + std::abs(res.value)) &&
            dual_res <= opts.feas_tol * cnorm)
            return finish(SdpStatus::optimal);
        if (std::abs(res.value) > 1e13 * cnorm) return finish(SdpStatus::unbounded);

        // Schur matrix H_ij = Re Tr(A_i X A_j S^-1), lower triangle
        std::fill(hmat.begin(), hmat.end(), 0.0);
        for (std::size_t b = 0; b < nblocks; ++b) {
            const auto& blk = p.blocks[b];
            const auto& xb = res.duals[b];
            const auto& si = sinv[b];
            const std::size_t nv = blk.vars.size();
            for (std::size_t ki = 0; ki < nv; ++ki) {
                const std::size_t gi = blk.vars[ki];
                for (std::size_t kj = 0; kj < nv; ++kj) {
                    const std::size_t gj = blk.vars[kj];
                    if (gj > gi) continue;
                    double acc = 0.0;
                    for (const auto& ei : blk.coeffs[ki].entries)
                        for (const auto& ej : blk.coeffs[kj].entries)
                            acc += (ei.value * xb(ei.col, ej.row) * ej.value *
                                    si(ej.col, ei.row))
                                       .real();
                    hmat[gi * m + gj] += acc;
                }
            }
        }

        sdpdetail::SchurSolver solver;
        if (!solver.factor(hmat, m, opts.schur_groups)) return finish(SdpStatus::stalled);

        // predictor (affine scaling) direction
        for (std::size_t i = 0; i < m; ++i) rhs[i] = -p.objective[i];
        dx_aff = rhs;
        solver.solve(dx_aff);
        assemble_ds(dx_aff);
        ds_aff = ds;
        for (std::size_t b = 0; b < nblocks; ++b) {
            ComplexMatrix t = res.duals[b] * ds_aff[b] * sinv[b];
            ComplexMatrix d = -res.duals[b] - (t + adjoint(t)) * cplx(0.5);
            dx_mat_aff[b] = std::move(d);
        }

        double alpha_s = 1.0, alpha_x = 1.0;
        for (std::size_t b = 0; b < nblocks; ++b) {
            alpha_s = std::min(alpha_s, sdpdetail::max_step(s[b], ds_aff[b]));
            alpha_x = std::min(alpha_x, sdpdetail::max_step(res.duals[b], dx_mat_aff[b]));
        }

        double mu_aff = 0.0;
        for (std::size_t b = 0; b < nblocks; ++b) {
            ComplexMatrix xs = res.duals[b] + dx_mat_aff[b] * cplx(alpha_x);
            ComplexMatrix ss = s[b] + ds_aff[b] * cplx(alpha_s);
            mu_aff += trace_product_re(xs, ss);
        }
        mu_aff /= total_dim;
        double sigma = std::pow(std::max(0.0, mu_aff / mu), 3.0);
        sigma = std::clamp(sigma, 1e-12, 1.0 - 1e-8);

        // corrector
        for (std::size_t i = 0; i < m; ++i) rhs[i] = sigma * mu * asinv[i] - p.objective[i];
        for (std::size_t b = 0; b < nblocks; ++b) {
            const auto& blk = p.blocks[b];
            const ComplexMatrix g = dx_mat_aff[b] * ds_aff[b] * sinv[b];
            for (std::size_t k = 0; k < blk.vars.size(); ++k) {
                double acc = 0.0;
                for (const auto& e : blk.coeffs[k].entries)
                    acc += (e.value * g(e.col, e.row)).real();
                rhs[blk.vars[k]] -= acc;
            }
        }
        dx = rhs;
        solver.solve(dx);
        assemble_ds(dx);
        for (std::size_t b = 0; b < nblocks; ++b) {
            ComplexMatrix t = (res.duals[b] * ds[b] + dx_mat_aff[b] * ds_aff[b]) * sinv[b];
            ComplexMatrix d =
                sinv[b] * cplx(sigma * mu) - res.duals[b] - (t + adjoint(t)) * cplx(0.5);
            dx_mat[b] = std::move(d);
        }

        alpha_s = 1e100;
        alpha_x = 1e100;
        for (std::size_t b = 0; b < nblocks; ++b) {
            alpha_s = std::min(alpha_s, sdpdetail::max_step(s[b], ds[b]));
            alpha_x = std::min(alpha_x, sdpdetail::max_step(res.duals[b], dx_mat[b]));
        }
        alpha_s = std::min(1.0, tau * alpha_s);
        alpha_x = std::min(1.0, tau * alpha_x);
        if (alpha_s < 1e-10 && alpha_x < 1e-10) return finish(SdpStatus::stalled);

        for (std::size_t i = 0; i < m; ++i) res.x[i] += alpha_s * dx[i];
        for (std::size_t b = 0; b < nblocks; ++b) {
            res.duals[b] += dx_mat[b] * cplx(alpha_x);
            res.duals[b] = (res.duals[b] + adjoint(res.duals[b])) * cplx(0.5);
        }
        build_slacks(res.x);
    }

    return finish(SdpStatus::stalled);
}

} // namespace qcorr
