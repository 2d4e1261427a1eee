#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qcorr/eig.hpp"
#include "qcorr/matrix.hpp"

using namespace qcorr;

namespace {

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(n, n);
    for (auto& x : m.entries()) x = cplx(g(rng), g(rng));
    return m;
}

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    ComplexMatrix m = random_matrix(n, rng);
    return (m + adjoint(m)) * cplx(0.5);
}

} // namespace

TEST_CASE("kron of identities") {
    REQUIRE(max_abs_diff(kron(identity(2), identity(3)), identity(6)) == 0.0);
}

TEST_CASE("kron mixed-product identity on random 2x2 inputs") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_matrix(2, rng), b = random_matrix(2, rng);
        auto c = random_matrix(2, rng), d = random_matrix(2, rng);
        REQUIRE(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);
    }
}

TEST_CASE("kron of sigma_z with sigma_z is diag(1,-1,-1,1)") {
    const ComplexMatrix zz = kron(pauli_z(), pauli_z());
    ComplexMatrix want(4, 4);
    want(0, 0) = 1.0;
    want(1, 1) = -1.0;
    want(2, 2) = -1.0;
    want(3, 3) = 1.0;
    REQUIRE(max_abs_diff(zz, want) == 0.0);
}

TEST_CASE("herm_eig of identity") {
    const auto r = herm_eig(identity(3));
    for (double w : r.eigenvalues) REQUIRE(w == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("herm_eig of sigma_x gives -1, 1 ascending") {
    const auto r = herm_eig(pauli_x());
    REQUIRE(r.eigenvalues[0] == Catch::Approx(-1.0).margin(1e-12));
    REQUIRE(r.eigenvalues[1] == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;  // strictly upper triangular
    REQUIRE_THROWS_AS(herm_eig(m), std::invalid_argument);
}

TEST_CASE("herm_eig reconstruction residual and unitarity up to size 27") {
    std::mt19937_64 rng(11);
    for (std::size_t n : {2, 5, 9, 16, 27}) {
        const ComplexMatrix h = random_hermitian(n, rng);
        const auto r = herm_eig(h);
        // h = V diag(w) V^dagger
        ComplexMatrix vw = r.eigenvectors;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) vw(i, j) *= r.eigenvalues[j];
        REQUIRE(max_abs_diff(vw * adjoint(r.eigenvectors), h) < 1e-9);
        REQUIRE(max_abs_diff(adjoint(r.eigenvectors) * r.eigenvectors, identity(n)) < 1e-9);
        REQUIRE(std::is_sorted(r.eigenvalues.begin(), r.eigenvalues.end()));
    }
}

TEST_CASE("trace and product helpers") {
    std::mt19937_64 rng(3);
    const auto a = random_hermitian(4, rng);
    const auto b = random_hermitian(4, rng);
    const cplx t = trace(a * b);
    REQUIRE(trace_product_re(a, b) == Catch::Approx(t.real()).margin(1e-12));
    REQUIRE(std::abs(t.imag()) < 1e-12);
}
