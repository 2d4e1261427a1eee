// The positivity-preserving NOT channel for qudits, anti-states, and the
// uneven no-correlation mixture. Also the naive Heisenberg-Weyl NOT
// generalization, kept only to demonstrate its failure of positivity.
//
// NOT channel on one qudit:  N_d(rho) = sum_a K_a rho^* K_a^dagger  with
// K_a = M_a / sqrt(d-1) over the antisymmetric Gell-Mann elements and the
// conjugation taken entrywise in the computational basis. Basis action:
// N_d(M_0) = M_0 and N_d(M_j) = -M_j/(d-1); the 1/(d-1) is what keeps the
// map positive for d >= 3.

#pragma once

#include <cmath>
#include <numbers>

#include "qcorr/density.hpp"
#include "qcorr/gellmann.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

struct KrausSet {
    std::size_t d = 0;
    std::vector<ComplexMatrix> operators;  // d(d-1)/2 of them, M_a / sqrt(d-1)
};

struct HWPair {
    std::size_t d = 0;
    ComplexMatrix shift;  // X |k> = |k+1 mod d>
    ComplexMatrix clock;  // Z = diag(1, w, w^2, ...)
    cplx omega;
};

inline KrausSet kraus_ops(std::size_t d) {
    if (d < 2) throw std::invalid_argument("kraus_ops: d must be >= 2");
    KrausSet ks;
    ks.d = d;
    const double scale = 1.0 / std::sqrt(static_cast<double>(d - 1));
    for (auto& m : antisymmetric_subset(gellmann_basis(d)))
        ks.operators.push_back(std::move(m) * cplx(scale));
    return ks;
}

// Single-qudit NOT channel (conjugation included).
inline ComplexMatrix not_channel(const ComplexMatrix& rho_local, std::size_t d) {
    if (rho_local.rows() != d || rho_local.cols() != d)
        throw std::invalid_argument("not_channel: input must be d x d");
    const KrausSet ks = kraus_ops(d);
    const ComplexMatrix conj_rho = conjugate(rho_local);
    ComplexMatrix out(d, d);
    for (const auto& k : ks.operators) out += k * conj_rho * adjoint(k);
    return out;
}

namespace detail {

// Applies sum_a (I x K_a x I) sigma (I x K_a x I)^dagger on one tensor factor.
inline ComplexMatrix apply_local_kraus(const ComplexMatrix& sigma,
                                       const std::vector<std::size_t>& dims,
                                       std::size_t site, const KrausSet& ks) {
    std::vector<ComplexMatrix> factors(dims.size());
    ComplexMatrix out(sigma.rows(), sigma.cols());
    for (const auto& k : ks.operators) {
        for (std::size_t s = 0; s < dims.size(); ++s)
            factors[s] = (s == site) ? k : identity(dims[s]);
        const ComplexMatrix op = kron(factors);
        out += op * sigma * adjoint(op);
    }
    return out;
}

} // namespace detail

// Applies the NOT channel to every tensor factor. Full correlations flip
// sign and shrink by 1/(d-1)^N; weight-n entries scale by (-1)^n/(d-1)^n.
inline DensityMatrix anti_state(const DensityMatrix& rho) {
    if (!rho.equal_local_dims())
        throw std::invalid_argument("anti_state: subsystem dimensions must all be equal");
    const std::size_t d = rho.dims().front();
    const KrausSet ks = kraus_ops(d);
    // one global conjugation, then the Kraus sum per site; the per-site sums
    // commute, so sequential application realizes the product channel
    ComplexMatrix out = conjugate(rho.matrix());
    for (std::size_t site = 0; site < rho.num_parties(); ++site)
        out = detail::apply_local_kraus(out, rho.dims(), site, ks);
    return DensityMatrix(std::move(out), rho.dims());
}

inline double nc_mixing_probability(std::size_t d, std::size_t n) {
    return 1.0 / (1.0 + std::pow(static_cast<double>(d - 1), static_cast<double>(n)));
}

// p rho + (1-p) anti_state(rho) with p = 1/(1+(d-1)^N). Valid for odd N only;
// even N has no anti-state with opposite correlations, so it is rejected.
inline DensityMatrix nc_state(const DensityMatrix& rho) {
    const std::size_t n = rho.num_parties();
    if (n % 2 == 0)
        throw std::invalid_argument(
            "nc_state: construction requires an odd number of parties; for even N "
            "mixing a state with its anti-state does not cancel the top correlations");
    if (!rho.equal_local_dims())
        throw std::invalid_argument("nc_state: subsystem dimensions must all be equal");
    const std::size_t d = rho.dims().front();
    const double p = nc_mixing_probability(d, n);
    const DensityMatrix anti = anti_state(rho);
    ComplexMatrix mix = rho.matrix() * cplx(p) + anti.matrix() * cplx(1.0 - p);
    return DensityMatrix(std::move(mix), rho.dims());
}

// Heisenberg-Weyl pair with Z X = omega X Z.
inline HWPair hw_pair(std::size_t d) {
    if (d < 2) throw std::invalid_argument("hw_pair: d must be >= 2");
    HWPair hw;
    hw.d = d;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(d);
    hw.omega = std::polar(1.0, step);
    hw.shift = ComplexMatrix(d, d);
    hw.clock = ComplexMatrix(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        hw.shift((k + 1) % d, k) = 1.0;
        hw.clock(k, k) = std::polar(1.0, step * static_cast<double>(k));
    }
    return hw;
}

struct NaiveMapResult {
    ComplexMatrix matrix;
    double min_eigenvalue;
};

// The would-be NOT map in the Heisenberg-Weyl basis: decompose the input over
// X^m Z^n, multiply the coefficient of every term with m >= 1 by omega^m and
// of every pure-Z term by omega^n, and reassemble. Not positive in general.
inline NaiveMapResult naive_hw_map(const ComplexMatrix& rho_local, std::size_t d) {
    if (rho_local.rows() != d || rho_local.cols() != d)
        throw std::invalid_argument("naive_hw_map: input must be d x d");
    const HWPair hw = hw_pair(d);

    // powers of X and Z
    std::vector<ComplexMatrix> xp(d), zp(d);
    xp[0] = identity(d);
    zp[0] = identity(d);
    for (std::size_t k = 1; k < d; ++k) {
        xp[k] = xp[k - 1] * hw.shift;
        zp[k] = zp[k - 1] * hw.clock;
    }

    ComplexMatrix out(d, d);
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) {
            const ComplexMatrix basis_op = xp[m] * zp[n];
            // coefficient in the orthogonal basis, Tr(B^dagger B) = d
            cplx coeff = 0.0;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    coeff += std::conj(basis_op(i, j)) * rho_local(i, j);
            coeff /= static_cast<double>(d);
            const double step = 2.0 * std::numbers::pi / static_cast<double>(d);
            cplx phase = 1.0;
            if (m >= 1)
                phase = std::polar(1.0, step * static_cast<double>(m));
            else if (n >= 1)
                phase = std::polar(1.0, step * static_cast<double>(n));
            out += basis_op * (coeff * phase);
        }

    NaiveMapResult r{out, 0.0};
    // Hermiticity survives the map: adjoint partner terms pick up conjugate
    // phases. Symmetrize only to clean up rounding before the eigensolve.
    ComplexMatrix herm = (r.matrix + adjoint(r.matrix)) * cplx(0.5);
    r.min_eigenvalue = min_eigenvalue(herm);
    return r;
}

} // namespace qcorr
