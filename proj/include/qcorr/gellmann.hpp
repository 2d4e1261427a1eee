// Generalized Gell-Mann operator basis for dimension d: the d^2-1 Hermitian
// traceless generators of SU(d), normalized to Tr(Mi Mj) = 2 delta_ij.
//
// Canonical ordering (fixed so tensor indices are stable across runs):
//   all symmetric elements, lexicographic in (j,k);
//   all antisymmetric elements, same order;
//   the d-1 diagonal elements by level l.
// Index 0 is reserved for the d x d identity throughout the toolkit; the
// identity is stored separately from the basis list.

#pragma once

#include <cmath>

#include "qcorr/matrix.hpp"

namespace qcorr {

enum class GellMannKind { symmetric, antisymmetric, diagonal };

struct GellMannBasis {
    std::size_t d = 0;
    std::vector<ComplexMatrix> elements;          // d^2-1 entries
    std::vector<GellMannKind> kinds;
    std::vector<std::pair<std::size_t, std::size_t>> index_pairs;  // (j,k) for off-diagonal, (l,l) for diagonal
    ComplexMatrix identity_element;               // the reserved index-0 operator

    // Element by toolkit index mu in 0..d^2-1, where mu = 0 is the identity.
    const ComplexMatrix& operator[](std::size_t mu) const {
        if (mu == 0) return identity_element;
        return elements.at(mu - 1);
    }
};

inline GellMannBasis gellmann_basis(std::size_t d) {
    if (d < 2) throw std::invalid_argument("gellmann_basis: d must be >= 2");

    GellMannBasis basis;
    basis.d = d;
    basis.identity_element = identity(d);

    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = j + 1; k < d; ++k) {
            ComplexMatrix m(d, d);
            m(j, k) = 1.0;
            m(k, j) = 1.0;
            basis.elements.push_back(std::move(m));
            basis.kinds.push_back(GellMannKind::symmetric);
            basis.index_pairs.emplace_back(j, k);
        }
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = j + 1; k < d; ++k) {
            ComplexMatrix m(d, d);
            m(j, k) = cplx(0.0, -1.0);
            m(k, j) = cplx(0.0, 1.0);
            basis.elements.push_back(std::move(m));
            basis.kinds.push_back(GellMannKind::antisymmetric);
            basis.index_pairs.emplace_back(j, k);
        }
    for (std::size_t l = 1; l < d; ++l) {
        ComplexMatrix m(d, d);
        const double norm = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
        for (std::size_t i = 0; i < l; ++i) m(i, i) = norm;
        m(l, l) = -norm * static_cast<double>(l);
        basis.elements.push_back(std::move(m));
        basis.kinds.push_back(GellMannKind::diagonal);
        basis.index_pairs.emplace_back(l, l);
    }
    return basis;
}

// The d(d-1)/2 antisymmetric elements -i(|j><k| - |k><j|), j < k.
inline std::vector<ComplexMatrix> antisymmetric_subset(const GellMannBasis& basis) {
    std::vector<ComplexMatrix> out;
    for (std::size_t i = 0; i < basis.elements.size(); ++i)
        if (basis.kinds[i] == GellMannKind::antisymmetric) out.push_back(basis.elements[i]);
    return out;
}

} // namespace qcorr
