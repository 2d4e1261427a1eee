// State factory: the five named three-qutrit states, generalized GHZ states,
// and Haar-random pure states from a pinned, reproducible sampler.
//
// Computational basis ordering is big-endian: |i_1 ... i_N> maps to index
// sum_k i_k * d^(N-k), leftmost factor first.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qcorr/density.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

struct PureState {
    std::vector<cplx> amplitudes;
    std::vector<std::size_t> dims;

    std::size_t dim() const { return amplitudes.size(); }

    double norm() const {
        double s = 0.0;
        for (const auto& a : amplitudes) s += std::norm(a);
        return std::sqrt(s);
    }
};

struct RandomSeed {
    std::uint64_t seed = 0;
};

// Deterministic sampler: mt19937_64 stream, uniforms u = (x >> 11 + 1) * 2^-53
// in (0, 1], Gaussians by Box-Muller. Same seed, same platform-independent
// bit-exact sequence.
class GaussianSampler {
public:
    explicit GaussianSampler(RandomSeed seed) : rng_(seed.seed) {}

    double uniform() {
        const std::uint64_t x = rng_();
        return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
    }

    // standard complex Gaussian: independent N(0,1) real and imaginary parts
    cplx complex_gaussian() {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double t = 2.0 * std::numbers::pi * uniform();
        return {r * std::cos(t), r * std::sin(t)};
    }

private:
    std::mt19937_64 rng_;
};

namespace detail {

inline PureState from_kets(
    const std::vector<std::pair<std::array<std::size_t, 3>, double>>& terms, double norm) {
    PureState psi;
    psi.dims = {3, 3, 3};
    psi.amplitudes.assign(27, cplx(0.0));
    for (const auto& [ket, coeff] : terms)
        psi.amplitudes[ket[0] * 9 + ket[1] * 3 + ket[2]] = coeff / norm;
    return psi;
}

} // namespace detail

// The five named three-qutrit states: |a> the qutrit GHZ generalization,
// |b>, |c>, |d> Dicke states, |e> the total-spin singlet (Aharonov state).
inline PureState named_state(char name) {
    const double s3 = std::sqrt(3.0), s15 = std::sqrt(15.0), s10 = std::sqrt(10.0),
                 s6 = std::sqrt(6.0);
    switch (name) {
        case 'a':
            return detail::from_kets({{{0, 0, 0}, 1}, {{1, 1, 1}, 1}, {{2, 2, 2}, 1}}, s3);
        case 'b':
            return detail::from_kets({{{0, 0, 1}, 1}, {{0, 1, 0}, 1}, {{1, 0, 0}, 1}}, s3);
        case 'c':
            return detail::from_kets({{{0, 0, 2}, 1}, {{0, 2, 0}, 1}, {{2, 0, 0}, 1},
                                      {{0, 1, 1}, 2}, {{1, 0, 1}, 2}, {{1, 1, 0}, 2}},
                                     s15);
        case 'd':
            return detail::from_kets({{{0, 1, 2}, 1}, {{0, 2, 1}, 1}, {{1, 0, 2}, 1},
                                      {{1, 2, 0}, 1}, {{2, 0, 1}, 1}, {{2, 1, 0}, 1},
                                      {{1, 1, 1}, 2}},
                                     s10);
        case 'e':
            return detail::from_kets({{{0, 1, 2}, 1}, {{0, 2, 1}, -1}, {{1, 0, 2}, -1},
                                      {{1, 2, 0}, 1}, {{2, 0, 1}, 1}, {{2, 1, 0}, -1}},
                                     s6);
        default:
            throw std::invalid_argument("named_state: unknown name (expected a..e)");
    }
}

// (1/sqrt(d)) sum_k |k>^(x)n
inline PureState ghz(std::size_t d, std::size_t n) {
    if (d < 2) throw std::invalid_argument("ghz: d must be >= 2");
    if (n < 2) throw std::invalid_argument("ghz: n must be >= 2");
    PureState psi;
    psi.dims.assign(n, d);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= d;
    psi.amplitudes.assign(total, cplx(0.0));
    std::size_t idx = 0, stride = 0;
    // |k...k> has index k * (d^(n-1) + ... + 1)
    for (std::size_t p = 0; p < n; ++p) stride = stride * d + 1;
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t k = 0; k < d; ++k, idx += stride) psi.amplitudes[idx] = amp;
    return psi;
}

// d^n i.i.d. standard complex Gaussians, normalized: Haar measure on the sphere.
inline PureState haar_random_pure(std::size_t d, std::size_t n, RandomSeed seed) {
    if (d < 2) throw std::invalid_argument("haar_random_pure: d must be >= 2");
    if (n < 1) throw std::invalid_argument("haar_random_pure: n must be >= 1");
    PureState psi;
    psi.dims.assign(n, d);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= d;
    psi.amplitudes.resize(total);
    GaussianSampler g(seed);
    for (auto& a : psi.amplitudes) a = g.complex_gaussian();
    const double nrm = psi.norm();
    for (auto& a : psi.amplitudes) a /= nrm;
    return psi;
}

// |psi><psi|
inline DensityMatrix density(const PureState& psi) {
    const std::size_t n = psi.dim();
    if (n == 0 || detail::dims_product(psi.dims) != n)
        throw std::invalid_argument("density: invalid pure state");
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
    return DensityMatrix(std::move(m), psi.dims);
}

} // namespace qcorr
