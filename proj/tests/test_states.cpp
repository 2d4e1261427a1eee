#include <catch2/catch_amalgamated.hpp>

#include "qcorr/density.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

std::size_t ket_index(std::initializer_list<std::size_t> digits, std::size_t d = 3) {
    std::size_t idx = 0;
    for (std::size_t x : digits) idx = idx * d + x;
    return idx;
}

// Lubkin's mean purity of one side of a Haar-random bipartite pure state
double haar_mean_purity(double da, double db) { return (da + db) / (da * db + 1.0); }

} // namespace

TEST_CASE("named state |a> is the qutrit GHZ") {
    const auto psi = named_state('a');
    REQUIRE(psi.norm() == Catch::Approx(1.0).margin(1e-12));
    const double s = 1.0 / std::sqrt(3.0);
    for (std::size_t i = 0; i < 27; ++i) {
        const bool diag = i == ket_index({0, 0, 0}) || i == ket_index({1, 1, 1}) ||
                          i == ket_index({2, 2, 2});
        REQUIRE(std::abs(psi.amplitudes[i] - (diag ? cplx(s) : cplx(0.0))) < 1e-15);
    }
}

TEST_CASE("named state |d> amplitudes") {
    const auto psi = named_state('d');
    const double s = 1.0 / std::sqrt(10.0);
    REQUIRE(std::abs(psi.amplitudes[ket_index({1, 1, 1})] - cplx(2.0 * s)) < 1e-15);
    for (auto digits : {std::initializer_list<std::size_t>{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}})
        REQUIRE(std::abs(psi.amplitudes[ket_index(digits)] - cplx(s)) < 1e-15);
}

TEST_CASE("named state |e> sign pattern on the six permutations of 012") {
    const auto psi = named_state('e');
    const double s = 1.0 / std::sqrt(6.0);
    REQUIRE(psi.amplitudes[ket_index({0, 1, 2})] == cplx(s));
    REQUIRE(psi.amplitudes[ket_index({0, 2, 1})] == cplx(-s));
    REQUIRE(psi.amplitudes[ket_index({1, 0, 2})] == cplx(-s));
    REQUIRE(psi.amplitudes[ket_index({1, 2, 0})] == cplx(s));
    REQUIRE(psi.amplitudes[ket_index({2, 0, 1})] == cplx(s));
    REQUIRE(psi.amplitudes[ket_index({2, 1, 0})] == cplx(-s));
}

TEST_CASE("named_state rejects unknown names") {
    REQUIRE_THROWS_AS(named_state('f'), std::invalid_argument);
}

TEST_CASE("ghz(3,3) equals named_state('a')") {
    const auto g = ghz(3, 3);
    const auto a = named_state('a');
    for (std::size_t i = 0; i < 27; ++i)
        REQUIRE(std::abs(g.amplitudes[i] - a.amplitudes[i]) < 1e-15);
}

TEST_CASE("ghz(2,3) is (|000>+|111>)/sqrt(2)") {
    const auto g = ghz(2, 3);
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < 8; ++i) {
        const cplx want = (i == 0 || i == 7) ? cplx(s) : cplx(0.0);
        REQUIRE(std::abs(g.amplitudes[i] - want) < 1e-15);
    }
    REQUIRE_THROWS_AS(ghz(1, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(ghz(3, 1), std::invalid_argument);
}

TEST_CASE("ghz(4,3) has maximally mixed single-party reduction") {
    const auto rho = density(ghz(4, 3));
    const auto red = partial_trace(rho, {0});
    REQUIRE(max_abs_diff(red.matrix(), identity(4) * cplx(0.25)) < 1e-12);
}

TEST_CASE("haar samples are unit norm and seed-reproducible") {
    const auto psi = haar_random_pure(3, 3, RandomSeed{123});
    REQUIRE(psi.norm() == Catch::Approx(1.0).margin(1e-12));
    const auto psi2 = haar_random_pure(3, 3, RandomSeed{123});
    for (std::size_t i = 0; i < psi.amplitudes.size(); ++i)
        REQUIRE(psi.amplitudes[i] == psi2.amplitudes[i]);
    const auto psi3 = haar_random_pure(3, 3, RandomSeed{124});
    REQUIRE(std::abs(psi.amplitudes[0] - psi3.amplitudes[0]) > 0.0);
}

TEST_CASE("haar mean single-party purity matches the bipartite formula") {
    // two qutrits: E[Tr rho_A^2] = (3+3)/(3*3+1) = 3/5
    double acc2 = 0.0;
    const int samples = 10000;
    for (int s = 0; s < samples; ++s) {
        const auto rho = density(haar_random_pure(3, 2, RandomSeed{static_cast<uint64_t>(s)}));
        const auto red = partial_trace(rho, {0});
        acc2 += trace_product_re(red.matrix(), red.matrix());
    }
    REQUIRE(acc2 / samples == Catch::Approx(haar_mean_purity(3, 3)).margin(0.01));

    // three qutrits, one party against the rest: (3+9)/(3*9+1) = 3/7
    double acc3 = 0.0;
    const int samples3 = 2000;
    for (int s = 0; s < samples3; ++s) {
        const auto rho = density(haar_random_pure(3, 3, RandomSeed{static_cast<uint64_t>(s)}));
        const auto red = partial_trace(rho, {0});
        acc3 += trace_product_re(red.matrix(), red.matrix());
    }
    REQUIRE(acc3 / samples3 == Catch::Approx(haar_mean_purity(3, 9)).margin(0.01));
}

TEST_CASE("haar purity statistic is invariant under a fixed unitary") {
    // rotate every sample by the same unitary (here a permutation + phases);
    // the empirical purity must agree within Monte-Carlo error
    ComplexMatrix u(9, 9);
    for (std::size_t k = 0; k < 9; ++k)
        u((k + 3) % 9, k) = std::polar(1.0, 0.37 * static_cast<double>(k));
    double plain = 0.0, rotated = 0.0;
    const int samples = 4000;
    for (int s = 0; s < samples; ++s) {
        auto psi = haar_random_pure(3, 2, RandomSeed{static_cast<uint64_t>(900000 + s)});
        auto rho = density(psi);
        plain += trace_product_re(partial_trace(rho, {0}).matrix(),
                                  partial_trace(rho, {0}).matrix());
        PureState rot = psi;
        for (std::size_t i = 0; i < 9; ++i) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < 9; ++j) acc += u(i, j) * psi.amplitudes[j];
            rot.amplitudes[i] = acc;
        }
        auto rrho = density(rot);
        rotated += trace_product_re(partial_trace(rrho, {0}).matrix(),
                                    partial_trace(rrho, {0}).matrix());
    }
    REQUIRE(plain / samples == Catch::Approx(rotated / samples).margin(0.01));
}

TEST_CASE("density builds the outer product") {
    const auto rho = density(named_state('a'));
    std::size_t nonzero = 0;
    for (const auto& x : rho.matrix().entries())
        if (std::abs(x) > 1e-15) {
            ++nonzero;
            REQUIRE(std::abs(x - cplx(1.0 / 3.0)) < 1e-12);
        }
    REQUIRE(nonzero == 9);

    PureState zero;
    zero.dims = {2};
    zero.amplitudes = {1.0, 0.0};
    const auto r0 = density(zero);
    REQUIRE(r0.matrix()(0, 0) == cplx(1.0));
    REQUIRE(r0.matrix()(1, 1) == cplx(0.0));

    // purity 1 for any pure input
    const auto rh = density(haar_random_pure(2, 3, RandomSeed{5}));
    REQUIRE(trace_product_re(rh.matrix(), rh.matrix()) == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("|a> and |e> have maximally mixed single-party reductions") {
    for (char name : {'a', 'e'}) {
        const auto rho = density(named_state(name));
        for (std::size_t party = 0; party < 3; ++party) {
            const auto red = partial_trace(rho, {party});
            REQUIRE(max_abs_diff(red.matrix(), identity(3) * cplx(1.0 / 3.0)) < 1e-12);
        }
    }
}
