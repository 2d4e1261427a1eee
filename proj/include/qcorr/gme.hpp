// Genuine-multipartite-entanglement certification through the PPT-mixture
// witness SDP:
//
//   minimize Tr(W rho)  over W with, for every bipartition M,
//   W = P_M + Q_M^{T_M},  0 <= P_M <= I,  0 <= Q_M <= I.
//
// The monotone is max(0, -optimum); any positive value certifies that rho is
// no PPT mixture, hence genuinely multipartite entangled. States with value 0
// are not claimed separable. The solver returns the optimal witness and the
// per-bipartition decomposition so the certificate can be re-verified
// independently of the SDP.

#pragma once

#include <set>

#include "qcorr/density.hpp"
#include "qcorr/sdp.hpp"

namespace qcorr {

struct Bipartition {
    std::set<std::size_t> side_a;  // canonical: contains party 0
    std::set<std::size_t> side_b;
};

inline std::vector<Bipartition> bipartitions(std::size_t n) {
    if (n < 2) throw std::invalid_argument("bipartitions: need at least two parties");
    std::vector<Bipartition> out;
    // subsets containing party 0, excluding the full set: 2^(n-1) - 1 of them
    const std::size_t limit = std::size_t{1} << (n - 1);
    for (std::size_t bits = 0; bits + 1 < limit; ++bits) {
        Bipartition bp;
        bp.side_a.insert(0);
        for (std::size_t k = 1; k < n; ++k)
            if (bits & (std::size_t{1} << (k - 1)))
                bp.side_a.insert(k);
            else
                bp.side_b.insert(k);
        out.push_back(std::move(bp));
    }
    return out;
}

struct WitnessResult {
    double value = 0.0;      // monotone, max(0, -objective)
    double objective = 0.0;  // min Tr(W rho)
    bool gme = false;        // value above the certification threshold
    ComplexMatrix witness_matrix;
    std::vector<Bipartition> parts;
    std::vector<ComplexMatrix> p_parts;  // P_M = W - Q_M^{T_M}
    std::vector<ComplexMatrix> q_parts;  // Q_M
    std::size_t sdp_iterations = 0;
    double sdp_gap = 0.0;
};

// an order of magnitude above the solver gap tolerance, so the sampling
// statistic does not pick up solver noise
inline constexpr double gme_threshold = 1e-4;

namespace gmedetail {

// Packs the real parameters of a Hermitian matrix variable: diagonal first,
// then the real parts of the upper triangle, then (for complex problems) the
// imaginary parts.
struct HermitianPack {
    std::size_t offset = 0;
    std::size_t dim = 0;
    bool with_imag = true;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // lex (i<j)

    HermitianPack(std::size_t offset_, std::size_t dim_, bool with_imag_)
        : offset(offset_), dim(dim_), with_imag(with_imag_) {
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j) pairs.emplace_back(i, j);
    }

    std::size_t count() const {
        return dim + pairs.size() * (with_imag ? 2 : 1);
    }

    SparseHermitian basis(std::size_t local) const {
        SparseHermitian e;
        if (local < dim) {
            e.add(local, local, 1.0);
        } else if (local < dim + pairs.size()) {
            const auto [i, j] = pairs[local - dim];
            e.add(i, j, 1.0);
            e.add(j, i, 1.0);
        } else {
            const auto [i, j] = pairs[local - dim - pairs.size()];
            e.add(i, j, cplx(0.0, 1.0));
            e.add(j, i, cplx(0.0, -1.0));
        }
        return e;
    }

    ComplexMatrix unpack(const std::vector<double>& x) const {
        ComplexMatrix m(dim, dim);
        for (std::size_t k = 0; k < count(); ++k)
            for (const auto& en : basis(k).entries) m(en.row, en.col) += x[offset + k] * en.value;
        return m;
    }
};

inline SparseHermitian transpose_entries(const SparseHermitian& e,
                                         const std::vector<std::size_t>& dims,
                                         const std::set<std::size_t>& subset) {
    const auto strides = detail::strides_of(dims);
    SparseHermitian out;
    std::vector<std::size_t> mr, mc;
    for (const auto& en : e.entries) {
        detail::unflatten(en.row, dims, mr);
        detail::unflatten(en.col, dims, mc);
        std::size_t r = 0, c = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            const bool swap = subset.count(k) > 0;
            r += (swap ? mc[k] : mr[k]) * strides[k];
            c += (swap ? mr[k] : mc[k]) * strides[k];
        }
        out.add(r, c, en.value);
    }
    return out;
}

} // namespace gmedetail

struct GmeOptions {
    SdpOptions sdp;
    bool force_complex = false;  // skip the real-variable reduction
};

inline WitnessResult gme_witness(const DensityMatrix& rho, const GmeOptions& opts = {}) {
    const std::size_t n = rho.num_parties();
    if (n < 2) throw std::invalid_argument("gme_witness: need at least two parties");
    const std::size_t dim = rho.dim();

    // a real density matrix admits a real optimal witness: conjugating any
    // feasible point preserves feasibility and the objective
    bool real_input = !opts.force_complex;
    for (const auto& v : rho.matrix().entries())
        if (std::abs(v.imag()) > 1e-14) { real_input = false; break; }

    const auto parts = bipartitions(n);
    const std::size_t nparts = parts.size();

    SdpProblem p;
    SdpOptions sdp_opts = opts.sdp;

    std::vector<gmedetail::HermitianPack> qpacks;
    std::size_t offset = 0;
    for (std::size_t mi = 0; mi < nparts; ++mi) {
        qpacks.emplace_back(offset, dim, !real_input);
        sdp_opts.schur_groups.emplace_back(offset, qpacks.back().count());
        offset += qpacks.back().count();
    }
    const gmedetail::HermitianPack wpack(offset, dim, !real_input);
    sdp_opts.schur_groups.emplace_back(offset, wpack.count());
    offset += wpack.count();

    p.num_vars = offset;
    p.objective.assign(p.num_vars, 0.0);
    for (std::size_t k = 0; k < wpack.count(); ++k) {
        double c = 0.0;
        for (const auto& en : wpack.basis(k).entries)
            c += (en.value * rho.matrix()(en.col, en.row)).real();
        p.objective[wpack.offset + k] = c;
    }

    // strictly feasible start: W = I/2, Q_M = I/4
    p.initial_x.assign(p.num_vars, 0.0);
    for (std::size_t i = 0; i < dim; ++i) p.initial_x[wpack.offset + i] = 0.5;
    for (const auto& qp : qpacks)
        for (std::size_t i = 0; i < dim; ++i) p.initial_x[qp.offset + i] = 0.25;

    for (std::size_t mi = 0; mi < nparts; ++mi) {
        const auto& qp = qpacks[mi];
        LmiBlock pos_p, box_p, pos_q, box_q;  // P >= 0, P <= I, Q >= 0, Q <= I
        pos_p.dim = box_p.dim = pos_q.dim = box_q.dim = dim;
        pos_p.constant = ComplexMatrix(dim, dim);
        box_p.constant = identity(dim);
        pos_q.constant = ComplexMatrix(dim, dim);
        box_q.constant = identity(dim);
        for (std::size_t k = 0; k < wpack.count(); ++k) {
            const auto e = wpack.basis(k);
            SparseHermitian neg;
            for (const auto& en : e.entries) neg.add(en.row, en.col, -en.value);
            pos_p.vars.push_back(wpack.offset + k);
            pos_p.coeffs.push_back(e);
            box_p.vars.push_back(wpack.offset + k);
            box_p.coeffs.push_back(std::move(neg));
        }
        for (std::size_t k = 0; k < qp.count(); ++k) {
            const auto e = qp.basis(k);
            const auto pt = gmedetail::transpose_entries(e, rho.dims(), parts[mi].side_a);
            SparseHermitian neg_pt;
            for (const auto& en : pt.entries) neg_pt.add(en.row, en.col, -en.value);
            SparseHermitian neg;
            for (const auto& en : e.entries) neg.add(en.row, en.col, -en.value);
            pos_p.vars.push_back(qp.offset + k);
            pos_p.coeffs.push_back(neg_pt);
            box_p.vars.push_back(qp.offset + k);
            box_p.coeffs.push_back(pt);
            pos_q.vars.push_back(qp.offset + k);
            pos_q.coeffs.push_back(e);
            box_q.vars.push_back(qp.offset + k);
            box_q.coeffs.push_back(std::move(neg));
        }
        p.blocks.push_back(std::move(pos_p));
        p.blocks.push_back(std::move(box_p));
        p.blocks.push_back(std::move(pos_q));
        p.blocks.push_back(std::move(box_q));
    }

    const SdpResult sr = sdp_min(p, sdp_opts);
    if (sr.status != SdpStatus::optimal)
        throw std::runtime_error(std::string("gme_witness: SDP did not converge (status ") +
                                 to_string(sr.status) + ", iterations " +
                                 std::to_string(sr.iterations) + ", gap " +
                                 std::to_string(sr.gap) + ")");

    WitnessResult wr;
    wr.objective = sr.value;
    wr.value = std::max(0.0, -sr.value);
    wr.gme = wr.value > gme_threshold;
    wr.witness_matrix = wpack.unpack(sr.x);
    wr.parts = parts;
    for (std::size_t mi = 0; mi < nparts; ++mi) {
        wr.p_parts.push_back(sr.slacks[4 * mi]);      // P_M = W - Q_M^{T_M}
        wr.q_parts.push_back(sr.slacks[4 * mi + 2]);  // Q_M
    }
    wr.sdp_iterations = sr.iterations;
    wr.sdp_gap = sr.gap;
    return wr;
}

} // namespace qcorr
