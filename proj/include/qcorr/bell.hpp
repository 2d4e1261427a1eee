// Born-rule probability tables for local projective measurements and the
// local-polytope membership test: a table is local iff some distribution over
// joint deterministic strategies reproduces it, a pure LP feasibility
// question. Infeasibility comes back as a Farkas certificate, which is a
// Bell inequality violated by the table.
//
// Index conventions (party 0 always most significant):
//   settings combo x = sum_i x_i * s^(n-1-i), outcomes a = sum_i a_i * d^(n-1-i);
//   table entry P(a|x) at values[x * d^n + a].
//   A deterministic strategy assigns one outcome function per party; per
//   party the function is encoded base d with setting 0 most significant,
//   and the joint strategy index is party-major.

#pragma once

#include <cmath>

#include "qcorr/density.hpp"
#include "qcorr/eig.hpp"
#include "qcorr/lp.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct MeasurementSet {
    std::size_t d = 0, parties = 0, settings = 0;
    // bases[party][setting] holds d orthonormal columns, one per outcome
    std::vector<std::vector<ComplexMatrix>> bases;
    RandomSeed seed{0};
};

struct ProbabilityTable {
    std::size_t parties = 0, settings = 0, outcomes = 0;
    std::vector<double> values;  // size s^n * d^n

    std::size_t num_setting_combos() const {
        std::size_t r = 1;
        for (std::size_t i = 0; i < parties; ++i) r *= settings;
        return r;
    }
    std::size_t num_outcome_combos() const {
        std::size_t r = 1;
        for (std::size_t i = 0; i < parties; ++i) r *= outcomes;
        return r;
    }
    double at(std::size_t x, std::size_t a) const {
        return values[x * num_outcome_combos() + a];
    }
};

namespace belldetail {

// Haar unitary: Ginibre matrix, then modified Gram-Schmidt; the positive-
// diagonal QR normalization keeps the distribution Haar.
inline ComplexMatrix haar_unitary(std::size_t d, GaussianSampler& g) {
    ComplexMatrix a(d, d);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) a(r, c) = g.complex_gaussian();
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
            cplx proj = 0.0;
            for (std::size_t r = 0; r < d; ++r) proj += std::conj(a(r, p)) * a(r, c);
            for (std::size_t r = 0; r < d; ++r) a(r, c) -= proj * a(r, p);
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < d; ++r) nrm += std::norm(a(r, c));
        nrm = std::sqrt(nrm);
        for (std::size_t r = 0; r < d; ++r) a(r, c) /= nrm;
    }
    return a;
}

inline void validate_table(const ProbabilityTable& t) {
    const std::size_t nx = t.num_setting_combos();
    const std::size_t na = t.num_outcome_combos();
    for (double v : t.values)
        if (v < -1e-12) throw std::runtime_error("ProbabilityTable: negative entry");
    for (std::size_t x = 0; x < nx; ++x) {
        double s = 0.0;
        for (std::size_t a = 0; a < na; ++a) s += t.at(x, a);
        if (std::abs(s - 1.0) > 1e-10)
            throw std::runtime_error("ProbabilityTable: slice not normalized");
    }
    // no-signaling: single-party marginals must not depend on remote settings
    for (std::size_t party = 0; party < t.parties; ++party) {
        const std::size_t sp = t.settings, d = t.outcomes;
        for (std::size_t xi = 0; xi < sp; ++xi)
            for (std::size_t ai = 0; ai < d; ++ai) {
                double ref = -1.0;
                for (std::size_t x = 0; x < nx; ++x) {
                    // extract party's setting from x
                    std::size_t rem = x, xp = 0;
                    for (std::size_t q = t.parties; q-- > 0;) {
                        if (q == party) xp = rem % sp;
                        rem /= sp;
                    }
                    if (xp != xi) continue;
                    double marg = 0.0;
                    for (std::size_t a = 0; a < na; ++a) {
                        std::size_t rema = a, ap = 0;
                        for (std::size_t q = t.parties; q-- > 0;) {
                            if (q == party) ap = rema % d;
                            rema /= d;
                        }
                        if (ap == ai) marg += t.at(x, a);
                    }
                    if (ref < 0.0)
                        ref = marg;
                    else if (std::abs(marg - ref) > 1e-10)
                        throw std::runtime_error("ProbabilityTable: signaling marginal");
                }
            }
    }
}

} // namespace belldetail

// One Haar-random basis per (party, setting); party-major draw order.
inline MeasurementSet random_bases(std::size_t d, std::size_t parties, std::size_t settings,
                                   RandomSeed seed) {
    if (settings < 1) throw std::invalid_argument("random_bases: settings must be >= 1");
    MeasurementSet m;
    m.d = d;
    m.parties = parties;
    m.settings = settings;
    m.seed = seed;
    GaussianSampler g(seed);
    m.bases.resize(parties);
    for (std::size_t i = 0; i < parties; ++i) {
        m.bases[i].reserve(settings);
        for (std::size_t x = 0; x < settings; ++x)
            m.bases[i].push_back(belldetail::haar_unitary(d, g));
    }
    return m;
}

inline ProbabilityTable born_table(const DensityMatrix& rho, const MeasurementSet& m) {
    if (rho.num_parties() != m.parties || !rho.equal_local_dims() ||
        rho.dims().front() != m.d)
        throw std::invalid_argument("born_table: dimensions do not match measurement set");
    for (const auto& party : m.bases)
        for (const auto& u : party)
            if (max_abs_diff(adjoint(u) * u, identity(m.d)) > 1e-10)
                throw std::invalid_argument("born_table: basis not unitary");

    ProbabilityTable t;
    t.parties = m.parties;
    t.settings = m.settings;
    t.outcomes = m.d;
    const std::size_t nx = t.num_setting_combos();
    const std::size_t na = t.num_outcome_combos();
    t.values.assign(nx * na, 0.0);

    const std::size_t dim = rho.dim();
    std::vector<std::size_t> xs(m.parties), as(m.parties);
    std::vector<cplx> w(dim);
    for (std::size_t x = 0; x < nx; ++x) {
        std::size_t rem = x;
        for (std::size_t q = m.parties; q-- > 0;) {
            xs[q] = rem % m.settings;
            rem /= m.settings;
        }
        for (std::size_t a = 0; a < na; ++a) {
            std::size_t rema = a;
            for (std::size_t q = m.parties; q-- > 0;) {
                as[q] = rema % m.d;
                rema /= m.d;
            }
            // w = tensor product of the chosen basis columns
            w.assign(dim, cplx(1.0));
            std::size_t block = dim;
            for (std::size_t q = 0; q < m.parties; ++q) {
                block /= m.d;
                const auto& u = m.bases[q][xs[q]];
                for (std::size_t idx = 0; idx < dim; ++idx)
                    w[idx] *= u((idx / block) % m.d, as[q]);
            }
            cplx val = 0.0;
            for (std::size_t r = 0; r < dim; ++r) {
                cplx row = 0.0;
                for (std::size_t c = 0; c < dim; ++c) row += rho.matrix()(r, c) * w[c];
                val += std::conj(w[r]) * row;
            }
            t.values[x * na + a] = val.real();
        }
    }
    belldetail::validate_table(t);
    return t;
}

// A Bell functional: one coefficient per table equation plus one for the
// normalization row. Oriented so the quantum table scores higher than any
// deterministic strategy when it certifies nonlocality.
struct BellCertificate {
    std::vector<double> row_coeffs;  // s^n * d^n entries
    double norm_coeff = 0.0;
};

struct LhvResult {
    bool local = false;
    std::vector<double> model;  // strategy weights, when local
    BellCertificate certificate;
    std::size_t lp_iterations = 0;
};

namespace belldetail {

inline std::size_t pow_st(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

// outcome combo produced by a joint strategy under settings combo x
inline std::size_t strategy_outcome(std::size_t strat, std::size_t x, std::size_t parties,
                                    std::size_t settings, std::size_t d) {
    const std::size_t per_party = pow_st(d, settings);
    std::size_t a = 0;
    // decode party-major: party 0 in the most significant digits
    std::vector<std::size_t> xs(parties);
    std::size_t rem = x;
    for (std::size_t q = parties; q-- > 0;) {
        xs[q] = rem % settings;
        rem /= settings;
    }
    std::size_t srem = strat;
    std::vector<std::size_t> fs(parties);
    for (std::size_t q = parties; q-- > 0;) {
        fs[q] = srem % per_party;
        srem /= per_party;
    }
    for (std::size_t q = 0; q < parties; ++q) {
        // function digits: setting 0 most significant
        std::size_t f = fs[q];
        std::size_t out = 0;
        for (std::size_t x2 = settings; x2-- > 0;) {
            if (x2 == xs[q]) out = f % d;
            f /= d;
        }
        a = a * d + out;
    }
    return a;
}

} // namespace belldetail

inline double certificate_value(const BellCertificate& c, const ProbabilityTable& t) {
    double v = c.norm_coeff;
    for (std::size_t k = 0; k < t.values.size(); ++k) v += c.row_coeffs[k] * t.values[k];
    return v;
}

// maximum of the functional over all joint deterministic strategies
inline double certificate_classical_bound(const BellCertificate& c, std::size_t parties,
                                          std::size_t settings, std::size_t d) {
    const std::size_t nstrat = belldetail::pow_st(belldetail::pow_st(d, settings), parties);
    const std::size_t nx = belldetail::pow_st(settings, parties);
    const std::size_t na = belldetail::pow_st(d, parties);
    double best = -1e300;
    for (std::size_t strat = 0; strat < nstrat; ++strat) {
        double v = c.norm_coeff;
        for (std::size_t x = 0; x < nx; ++x)
            v += c.row_coeffs[x * na +
                              belldetail::strategy_outcome(strat, x, parties, settings, d)];
        best = std::max(best, v);
    }
    return best;
}

// LP over the weights of all (d^s)^n deterministic strategies (Fine's
// theorem form): table entries as equality constraints plus normalization.
inline LhvResult lhv_feasible(const ProbabilityTable& t) {
    const std::size_t parties = t.parties, s = t.settings, d = t.outcomes;
    const std::size_t nx = t.num_setting_combos();
    const std::size_t na = t.num_outcome_combos();
    const std::size_t nstrat = belldetail::pow_st(belldetail::pow_st(d, s), parties);
    const std::size_t rows = nx * na + 1;

    LpProblem p;
    p.num_vars = nstrat;
    p.b = t.values;
    p.b.push_back(1.0);
    p.a.assign(rows * nstrat, 0.0);
    for (std::size_t strat = 0; strat < nstrat; ++strat) {
        for (std::size_t x = 0; x < nx; ++x) {
            const std::size_t a = belldetail::strategy_outcome(strat, x, parties, s, d);
            p.a[(x * na + a) * nstrat + strat] = 1.0;
        }
        p.a[(rows - 1) * nstrat + strat] = 1.0;
    }

    const LpResult lr = lp_feasible(p);
    LhvResult out;
    out.lp_iterations = lr.iterations;
    out.local = lr.feasible;
    if (lr.feasible) {
        out.model = lr.x;
    } else {
        // flip the raw Farkas dual: quantum value > 0 >= every strategy value
        out.certificate.row_coeffs.assign(lr.farkas.begin(), lr.farkas.end() - 1);
        for (auto& v : out.certificate.row_coeffs) v = -v;
        out.certificate.norm_coeff = -lr.farkas.back();
    }
    return out;
}

} // namespace qcorr
