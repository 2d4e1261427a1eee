// Small dense real kernels for the interior-point Schur systems: blocked
// in-place Cholesky, triangular solves, and tiled rank-k updates. Row-major
// with explicit leading dimension so the solvers can work on sub-blocks of
// one large buffer.
//
// Inner loops are written in saxpy form (broadcast times contiguous row) over
// transposed panel copies: each output lane carries its own accumulator, so
// the compiler can vectorize under strict FP semantics.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qcorr::detail {

inline constexpr std::size_t kPanel = 64;

// C[0:n, 0:n] -= A[0:n, 0:k] * A[0:n, 0:k]^T, lower triangle only.
inline void syrk_sub_lower(double* c, std::size_t ldc, const double* a, std::size_t lda,
                           std::size_t n, std::size_t k) {
    std::vector<double> at(kPanel * n);
    for (std::size_t k0 = 0; k0 < k; k0 += kPanel) {
        const std::size_t kb = std::min(kPanel, k - k0);
        for (std::size_t l = 0; l < kb; ++l)
            for (std::size_t i = 0; i < n; ++i) at[l * n + i] = a[i * lda + k0 + l];
        for (std::size_t i = 0; i < n; ++i) {
            const double* ai = a + i * lda + k0;
            double* ci = c + i * ldc;
            const std::size_t jmax = i + 1;
            for (std::size_t l = 0; l < kb; ++l) {
                const double ail = ai[l];
                const double* atl = at.data() + l * n;
                for (std::size_t j = 0; j < jmax; ++j) ci[j] -= ail * atl[j];
            }
        }
    }
}

// C[0:rows, 0:cols] -= A[0:rows, 0:k] * B[0:cols, 0:k]^T
inline void gemm_nt_sub(double* c, std::size_t ldc, const double* a, std::size_t lda,
                        const double* b, std::size_t ldb, std::size_t rows,
                        std::size_t cols, std::size_t k) {
    std::vector<double> bt(kPanel * cols);
    for (std::size_t k0 = 0; k0 < k; k0 += kPanel) {
        const std::size_t kb = std::min(kPanel, k - k0);
        for (std::size_t l = 0; l < kb; ++l)
            for (std::size_t j = 0; j < cols; ++j) bt[l * cols + j] = b[j * ldb + k0 + l];
        for (std::size_t i = 0; i < rows; ++i) {
            const double* ai = a + i * lda + k0;
            double* ci = c + i * ldc;
            for (std::size_t l = 0; l < kb; ++l) {
                const double ail = ai[l];
                const double* btl = bt.data() + l * cols;
                for (std::size_t j = 0; j < cols; ++j) ci[j] -= ail * btl[j];
            }
        }
    }
}

// In-place unblocked Cholesky (lower) of the leading n x n block.
inline bool chol_unblocked(double* a, std::size_t lda, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * lda + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * lda + k] * a[j * lda + k];
        if (d <= 0.0 || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        a[j * lda + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * lda + j];
            const double* ri = a + i * lda;
            const double* rj = a + j * lda;
            for (std::size_t k = 0; k < j; ++k) s -= ri[k] * rj[k];
            a[i * lda + j] = s / ljj;
        }
    }
    return true;
}

// B[0:rows, 0:nb] <- B * L^{-T} for one small (nb <= kPanel) diagonal block.
inline void trsm_small_right_ltrans(double* b, std::size_t ldb, const double* l,
                                    std::size_t ldl, std::size_t rows, std::size_t nb) {
    double lt[kPanel * kPanel];
    for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t k = 0; k <= j; ++k) lt[k * nb + j] = l[j * ldl + k];
    for (std::size_t i = 0; i < rows; ++i) {
        double* bi = b + i * ldb;
        for (std::size_t k = 0; k < nb; ++k) {
            const double x = bi[k] / lt[k * nb + k];
            bi[k] = x;
            const double* ltk = lt + k * nb;
            for (std::size_t j = k + 1; j < nb; ++j) bi[j] -= x * ltk[j];
        }
    }
}

// B[0:rows, 0:n] <- B * L^{-T}, blocked over column panels.
inline void trsm_right_ltrans(double* b, std::size_t ldb, const double* l, std::size_t ldl,
                              std::size_t rows, std::size_t n) {
    for (std::size_t k0 = 0; k0 < n; k0 += kPanel) {
        const std::size_t kb = std::min(kPanel, n - k0);
        trsm_small_right_ltrans(b + k0, ldb, l + k0 * ldl + k0, ldl, rows, kb);
        const std::size_t rest = n - k0 - kb;
        if (rest)
            gemm_nt_sub(b + k0 + kb, ldb, b + k0, ldb, l + (k0 + kb) * ldl + k0, ldl,
                        rows, rest, kb);
    }
}

// Blocked in-place Cholesky (lower) of the n x n block at `a`.
inline bool cholesky(double* a, std::size_t lda, std::size_t n) {
    for (std::size_t k0 = 0; k0 < n; k0 += kPanel) {
        const std::size_t kb = std::min(kPanel, n - k0);
        double* akk = a + k0 * lda + k0;
        if (!chol_unblocked(akk, lda, kb)) return false;
        const std::size_t rest = n - k0 - kb;
        if (rest == 0) continue;
        double* apanel = a + (k0 + kb) * lda + k0;
        trsm_small_right_ltrans(apanel, lda, akk, lda, rest, kb);
        syrk_sub_lower(a + (k0 + kb) * lda + (k0 + kb), lda, apanel, lda, rest, kb);
    }
    return true;
}

// y <- L^{-1} y, lower triangular factor at `l`.
inline void forward_subst(const double* l, std::size_t ldl, std::size_t n, double* y) {
    for (std::size_t i = 0; i < n; ++i) {
        double s = y[i];
        const double* li = l + i * ldl;
        for (std::size_t k = 0; k < i; ++k) s -= li[k] * y[k];
        y[i] = s / li[i];
    }
}

// y <- L^{-T} y
inline void backward_subst(const double* l, std::size_t ldl, std::size_t n, double* y) {
    for (std::size_t i = n; i-- > 0;) {
        double s = y[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= l[k * ldl + i] * y[k];
        y[i] = s / l[i * ldl + i];
    }
}

} // namespace qcorr::detail
