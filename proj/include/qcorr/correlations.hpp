// Correlation tensors in the generalized Gell-Mann basis.
//
// T(mu_1 ... mu_n) = Tr(rho * M_{mu_1} x ... x M_{mu_n}), mu in 0..d^2-1,
// index 0 the identity. Reconstruction uses the weight-dependent expansion
//   rho = sum_tuples w * T * (M_{mu_1} x ... x M_{mu_n}),
//   w = (d/2)^weight / d^n,  weight = number of nonzero indices,
// which is forced by Tr(Mi Mj) = 2 delta_ij and Tr(M0^2) = d.

#pragma once

#include <bit>
#include <cmath>

#include "qcorr/density.hpp"
#include "qcorr/gellmann.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

class CorrelationTensor {
public:
    CorrelationTensor(std::size_t d, std::size_t n)
        : d_(d), n_(n), values_(pow_size(d * d, n), 0.0) {}

    std::size_t local_dim() const { return d_; }
    std::size_t parties() const { return n_; }
    std::size_t size() const { return values_.size(); }

    // tuple is big-endian: first party first
    double& at(const std::vector<std::size_t>& tuple) { return values_[flatten(tuple)]; }
    double at(const std::vector<std::size_t>& tuple) const { return values_[flatten(tuple)]; }

    double& operator[](std::size_t flat) { return values_[flat]; }
    double operator[](std::size_t flat) const { return values_[flat]; }

    std::size_t flatten(const std::vector<std::size_t>& tuple) const {
        if (tuple.size() != n_) throw std::invalid_argument("CorrelationTensor: bad tuple arity");
        std::size_t idx = 0;
        for (std::size_t mu : tuple) {
            if (mu >= d_ * d_) throw std::out_of_range("CorrelationTensor: index out of range");
            idx = idx * (d_ * d_) + mu;
        }
        return idx;
    }

    void unflatten(std::size_t flat, std::vector<std::size_t>& tuple) const {
        tuple.resize(n_);
        for (std::size_t k = n_; k-- > 0;) {
            tuple[k] = flat % (d_ * d_);
            flat /= d_ * d_;
        }
    }

    std::size_t weight_of(std::size_t flat) const {
        std::size_t w = 0;
        for (std::size_t k = 0; k < n_; ++k) {
            if (flat % (d_ * d_) != 0) ++w;
            flat /= d_ * d_;
        }
        return w;
    }

private:
    static std::size_t pow_size(std::size_t base, std::size_t exp) {
        std::size_t r = 1;
        while (exp--) r *= base;
        return r;
    }

    std::size_t d_, n_;
    std::vector<double> values_;
};

namespace detail {

// Kronecker product of basis elements for one index tuple.
inline ComplexMatrix basis_kron(const GellMannBasis& basis,
                                const std::vector<std::size_t>& tuple) {
    ComplexMatrix op = basis[tuple[0]];
    for (std::size_t k = 1; k < tuple.size(); ++k) op = kron(op, basis[tuple[k]]);
    return op;
}

} // namespace detail

inline CorrelationTensor corr_tensor(const DensityMatrix& rho) {
    if (!rho.equal_local_dims())
        throw std::invalid_argument("corr_tensor: subsystem dimensions must all be equal");
    const std::size_t d = rho.dims().front();
    const std::size_t n = rho.num_parties();
    const GellMannBasis basis = gellmann_basis(d);

    CorrelationTensor t(d, n);
    std::vector<std::size_t> tuple;
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        t.unflatten(flat, tuple);
        const ComplexMatrix op = detail::basis_kron(basis, tuple);
        t[flat] = trace_product_re(rho.matrix(), op);
    }
    return t;
}

inline DensityMatrix reconstruct(const CorrelationTensor& t) {
    const std::size_t d = t.local_dim();
    const std::size_t n = t.parties();
    const GellMannBasis basis = gellmann_basis(d);

    double dn = 1.0;
    for (std::size_t k = 0; k < n; ++k) dn *= static_cast<double>(d);

    std::size_t side = 1;
    for (std::size_t k = 0; k < n; ++k) side *= d;

    ComplexMatrix rho(side, side);
    std::vector<std::size_t> tuple;
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        const double value = t[flat];
        if (value == 0.0) continue;
        t.unflatten(flat, tuple);
        const double w = std::pow(0.5 * static_cast<double>(d),
                                  static_cast<double>(t.weight_of(flat))) / dn;
        const ComplexMatrix op = detail::basis_kron(basis, tuple);
        for (std::size_t i = 0; i < rho.entries().size(); ++i)
            rho.entries()[i] += w * value * op.entries()[i];
    }
    return DensityMatrix(std::move(rho), std::vector<std::size_t>(n, d));
}

enum class SigmaConvention { per_placement, total };

// Sum of squared correlations between n_obs observers.
// per_placement: one fixed placement, the first n_obs slots non-identity.
// total: summed over all C(n, n_obs) placements.
inline double sigma(const CorrelationTensor& t, std::size_t n_obs,
                    SigmaConvention convention = SigmaConvention::per_placement) {
    const std::size_t n = t.parties();
    if (n_obs < 1 || n_obs > n) throw std::out_of_range("sigma: n_obs out of range");

    std::vector<double> by_placement_mask;  // accumulated T^2 per nonzero-slot mask
    by_placement_mask.assign(std::size_t{1} << n, 0.0);

    std::vector<std::size_t> tuple;
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        const double v = t[flat];
        if (v == 0.0) continue;
        t.unflatten(flat, tuple);
        std::size_t mask = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (tuple[k] != 0) mask |= std::size_t{1} << k;
        by_placement_mask[mask] += v * v;
    }

    double sum = 0.0;
    const std::size_t first_mask = (std::size_t{1} << n_obs) - 1;  // slots 0..n_obs-1
    for (std::size_t mask = 1; mask < by_placement_mask.size(); ++mask) {
        const std::size_t bits = static_cast<std::size_t>(std::popcount(mask));
        if (bits != n_obs) continue;
        if (convention == SigmaConvention::per_placement && mask != first_mask) continue;
        sum += by_placement_mask[mask];
    }
    return sum;
}

// Full contraction of the tensor with one traceless-observable coefficient
// vector per party (length d^2-1 each, identity component excluded):
// equals Tr(rho * A_1 x ... x A_n) for A_i = sum_j (m_i)_j M_j.
inline double corr_value(const CorrelationTensor& t,
                         const std::vector<std::vector<double>>& observables) {
    const std::size_t d2 = t.local_dim() * t.local_dim();
    if (observables.size() != t.parties())
        throw std::invalid_argument("corr_value: need one coefficient vector per party");
    for (const auto& m : observables)
        if (m.size() != d2 - 1)
            throw std::invalid_argument("corr_value: coefficient vector length must be d^2-1");

    double sum = 0.0;
    std::vector<std::size_t> tuple;
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        const double v = t[flat];
        if (v == 0.0) continue;
        t.unflatten(flat, tuple);
        double prod = v;
        bool full_weight = true;
        for (std::size_t k = 0; k < tuple.size(); ++k) {
            if (tuple[k] == 0) { full_weight = false; break; }
            prod *= observables[k][tuple[k] - 1];
        }
        if (full_weight) sum += prod;
    }
    return sum;
}

} // namespace qcorr
