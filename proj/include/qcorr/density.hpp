// Density matrices over a list of subsystem dimensions (zero-based indexing,
// leftmost tensor factor first), with partial trace and partial transpose.

#pragma once

#include <cstdint>
#include <numeric>
#include <set>
#include <string>

#include "qcorr/eig.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

namespace tol {
inline constexpr double hermiticity = 1e-10;
inline constexpr double unit_trace = 1e-10;
inline constexpr double psd_min_eig = -1e-9;  // pilot mixing tests need this slack
} // namespace tol

namespace detail {

inline std::size_t dims_product(const std::vector<std::size_t>& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                           std::multiplies<std::size_t>());
}

// big-endian strides: index(|i_1 ... i_N>) = sum_k i_k * stride[k]
inline std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> s(dims.size());
    std::size_t acc = 1;
    for (std::size_t k = dims.size(); k-- > 0;) {
        s[k] = acc;
        acc *= dims[k];
    }
    return s;
}

inline void unflatten(std::size_t idx, const std::vector<std::size_t>& dims,
                      std::vector<std::size_t>& out) {
    out.resize(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
}

} // namespace detail

class DensityMatrix {
public:
    // Validates Hermiticity, unit trace and positive semidefiniteness.
    DensityMatrix(ComplexMatrix m, std::vector<std::size_t> dims)
        : mat_(std::move(m)), dims_(std::move(dims)) {
        if (mat_.rows() != mat_.cols())
            throw std::invalid_argument("DensityMatrix: matrix not square");
        if (detail::dims_product(dims_) != mat_.rows())
            throw std::invalid_argument("DensityMatrix: dims product != matrix side");
        if (!is_hermitian(mat_, tol::hermiticity))
            throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-10");
        if (std::abs(trace(mat_) - cplx(1.0)) > tol::unit_trace)
            throw std::invalid_argument("DensityMatrix: trace != 1 within 1e-10");
        if (min_eigenvalue(mat_) < tol::psd_min_eig)
            throw std::invalid_argument("DensityMatrix: not PSD (min eigenvalue < -1e-9)");
    }

    const ComplexMatrix& matrix() const { return mat_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim() const { return mat_.rows(); }
    std::size_t num_parties() const { return dims_.size(); }

    bool equal_local_dims() const {
        for (std::size_t d : dims_)
            if (d != dims_.front()) return false;
        return true;
    }

private:
    ComplexMatrix mat_;
    std::vector<std::size_t> dims_;
};

// Traces out every subsystem not listed in `keep`; kept subsystems retain
// their original relative order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<std::size_t>& keep) {
    const auto& dims = rho.dims();
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    for (std::size_t k : keep)
        if (k >= dims.size()) throw std::out_of_range("partial_trace: subsystem index out of range");

    std::vector<std::size_t> kept, traced;
    for (std::size_t k = 0; k < dims.size(); ++k)
        (keep.count(k) ? kept : traced).push_back(k);

    std::vector<std::size_t> kept_dims, traced_dims;
    for (std::size_t k : kept) kept_dims.push_back(dims[k]);
    for (std::size_t k : traced) traced_dims.push_back(dims[k]);

    const std::size_t dk = detail::dims_product(kept_dims);
    const std::size_t dt = detail::dims_product(traced_dims);
    const auto strides = detail::strides_of(dims);

    ComplexMatrix out(dk, dk);
    std::vector<std::size_t> mi, mj, mt;
    for (std::size_t i = 0; i < dk; ++i) {
        detail::unflatten(i, kept_dims, mi);
        for (std::size_t j = 0; j < dk; ++j) {
            detail::unflatten(j, kept_dims, mj);
            cplx sum = 0.0;
            for (std::size_t t = 0; t < dt; ++t) {
                detail::unflatten(t, traced_dims, mt);
                std::size_t row = 0, col = 0;
                for (std::size_t k = 0; k < kept.size(); ++k) {
                    row += mi[k] * strides[kept[k]];
                    col += mj[k] * strides[kept[k]];
                }
                for (std::size_t k = 0; k < traced.size(); ++k) {
                    row += mt[k] * strides[traced[k]];
                    col += mt[k] * strides[traced[k]];
                }
                sum += rho.matrix()(row, col);
            }
            out(i, j) = sum;
        }
    }
    return DensityMatrix(std::move(out), kept_dims);
}

// Transposes the chosen tensor factors. Result need not be PSD, hence plain matrix.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m,
                                       const std::vector<std::size_t>& dims,
                                       const std::set<std::size_t>& subset) {
    if (m.rows() != m.cols() || detail::dims_product(dims) != m.rows())
        throw std::invalid_argument("partial_transpose: dims do not match matrix");
    for (std::size_t k : subset)
        if (k >= dims.size()) throw std::out_of_range("partial_transpose: subsystem index out of range");

    const std::size_t n = m.rows();
    const auto strides = detail::strides_of(dims);
    ComplexMatrix out(n, n);
    std::vector<std::size_t> mi, mj;
    for (std::size_t i = 0; i < n; ++i) {
        detail::unflatten(i, dims, mi);
        for (std::size_t j = 0; j < n; ++j) {
            detail::unflatten(j, dims, mj);
            std::size_t row = 0, col = 0;
            for (std::size_t k = 0; k < dims.size(); ++k) {
                const bool swap = subset.count(k) > 0;
                row += (swap ? mj[k] : mi[k]) * strides[k];
                col += (swap ? mi[k] : mj[k]) * strides[k];
            }
            out(row, col) = m(i, j);
        }
    }
    return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, const std::set<std::size_t>& subset) {
    return partial_transpose(rho.matrix(), rho.dims(), subset);
}

} // namespace qcorr
