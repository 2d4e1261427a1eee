// Hermitian eigendecomposition by cyclic Jacobi rotations, applied directly
// to the complex matrix. Quadratic convergence; plenty for n <= ~60.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcorr/matrix.hpp"

namespace qcorr {

struct EigResult {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns, same order
};

namespace detail {

inline double offdiag_norm_sq(const ComplexMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j) s += std::norm(m(i, j));
    return 2.0 * s;
}

} // namespace detail

// Diagonalizes a Hermitian matrix: h = V diag(w) V^dagger.
// Throws std::invalid_argument if h is not Hermitian within herm_tol.
inline EigResult herm_eig(const ComplexMatrix& h, double herm_tol = 1e-10) {
    if (h.rows() != h.cols()) throw std::invalid_argument("herm_eig: matrix not square");
    if (!is_hermitian(h, herm_tol)) throw std::invalid_argument("herm_eig: matrix not Hermitian");

    const std::size_t n = h.rows();
    ComplexMatrix a = h;
    // enforce exact Hermitian symmetry so rotations stay consistent
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) a(j, i) = std::conj(a(i, j));
    }
    ComplexMatrix v = identity(n);

    const double scale = std::max(1.0, max_abs(a));
    const double tol = 1e-30 * scale * scale * static_cast<double>(n * n);
    const int max_sweeps = 64;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (detail::offdiag_norm_sq(a) <= tol) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = std::abs(a(p, q));
                if (apq <= 1e-300) { a(p, q) = 0.0; a(q, p) = 0.0; continue; }
                const cplx phase = a(p, q) / apq;  // a_pq = |a_pq| * phase
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // unitary G: G_pp = c, G_pq = s*phase, G_qp = -s*conj(phase), G_qq = c
                const cplx gpq = s * phase;
                const cplx gqp = -s * std::conj(phase);
                // A <- G^dagger A G, acting on rows/cols p and q
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c + akq * gqp;
                    a(k, q) = akp * gpq + akq * c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * c;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigResult r;
    r.eigenvalues.resize(n);
    r.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        r.eigenvalues[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) r.eigenvectors(i, j) = v(i, order[j]);
    }
    return r;
}

inline double min_eigenvalue(const ComplexMatrix& h, double herm_tol = 1e-10) {
    return herm_eig(h, herm_tol).eigenvalues.front();
}

} // namespace qcorr
