#include <catch2/catch_amalgamated.hpp>

#include "qcorr/gellmann.hpp"

using namespace qcorr;

TEST_CASE("gellmann_basis rejects d < 2") {
    REQUIRE_THROWS_AS(gellmann_basis(1), std::invalid_argument);
}

TEST_CASE("d=2 reduces to the Pauli matrices in order x, y, z") {
    const auto basis = gellmann_basis(2);
    REQUIRE(basis.elements.size() == 3);

    ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx(0, 1) = 1.0;
    sx(1, 0) = 1.0;
    sy(0, 1) = cplx(0.0, -1.0);
    sy(1, 0) = cplx(0.0, 1.0);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    REQUIRE(max_abs_diff(basis.elements[0], sx) == 0.0);
    REQUIRE(max_abs_diff(basis.elements[1], sy) == 0.0);
    REQUIRE(max_abs_diff(basis.elements[2], sz) == 0.0);
    REQUIRE(basis.kinds[0] == GellMannKind::symmetric);
    REQUIRE(basis.kinds[1] == GellMannKind::antisymmetric);
    REQUIRE(basis.kinds[2] == GellMannKind::diagonal);
}

TEST_CASE("d=3 diagonal elements") {
    const auto basis = gellmann_basis(3);
    REQUIRE(basis.elements.size() == 8);

    ComplexMatrix g1(3, 3), g2(3, 3);
    g1(0, 0) = 1.0;
    g1(1, 1) = -1.0;
    const double s = 1.0 / std::sqrt(3.0);
    g2(0, 0) = s;
    g2(1, 1) = s;
    g2(2, 2) = -2.0 * s;
    REQUIRE(max_abs_diff(basis.elements[6], g1) < 1e-15);
    REQUIRE(max_abs_diff(basis.elements[7], g2) < 1e-15);
}

TEST_CASE("basis properties for d = 2..6") {
    for (std::size_t d = 2; d <= 6; ++d) {
        const auto basis = gellmann_basis(d);
        const std::size_t m = d * d - 1;
        REQUIRE(basis.elements.size() == m);

        for (std::size_t i = 0; i < m; ++i) {
            REQUIRE(is_hermitian(basis.elements[i], 1e-15));
            REQUIRE(std::abs(trace(basis.elements[i])) <= 1e-12);
            for (std::size_t j = i; j < m; ++j) {
                const double want = (i == j) ? 2.0 : 0.0;
                REQUIRE(trace_product_re(basis.elements[i], basis.elements[j]) ==
                        Catch::Approx(want).margin(1e-12));
            }
        }
    }
}

TEST_CASE("d=5 Gram matrix is 2 I_24") {
    const auto basis = gellmann_basis(5);
    REQUIRE(basis.elements.size() == 24);
    for (std::size_t i = 0; i < 24; ++i)
        for (std::size_t j = 0; j < 24; ++j) {
            const double want = (i == j) ? 2.0 : 0.0;
            REQUIRE(trace_product_re(basis.elements[i], basis.elements[j]) ==
                    Catch::Approx(want).margin(1e-12));
        }
}

TEST_CASE("antisymmetric subset has d(d-1)/2 elements") {
    REQUIRE(antisymmetric_subset(gellmann_basis(2)).size() == 1);
    REQUIRE(antisymmetric_subset(gellmann_basis(3)).size() == 3);
    REQUIRE(antisymmetric_subset(gellmann_basis(4)).size() == 6);

    // the single d=2 element is sigma_y
    ComplexMatrix sy(2, 2);
    sy(0, 1) = cplx(0.0, -1.0);
    sy(1, 0) = cplx(0.0, 1.0);
    REQUIRE(max_abs_diff(antisymmetric_subset(gellmann_basis(2))[0], sy) == 0.0);
}

TEST_CASE("squared antisymmetric elements sum to (d-1) I") {
    for (std::size_t d = 2; d <= 6; ++d) {
        ComplexMatrix sum(d, d);
        for (const auto& m : antisymmetric_subset(gellmann_basis(d))) sum += m * m;
        REQUIRE(max_abs_diff(sum, identity(d) * cplx(static_cast<double>(d - 1))) < 1e-12);
    }
}

TEST_CASE("index 0 is the identity, stored separately") {
    const auto basis = gellmann_basis(3);
    REQUIRE(max_abs_diff(basis[0], identity(3)) == 0.0);
    REQUIRE(max_abs_diff(basis[1], basis.elements[0]) == 0.0);
    REQUIRE(max_abs_diff(basis[8], basis.elements[7]) == 0.0);
}
