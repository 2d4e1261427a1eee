#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qcorr/correlations.hpp"
#include "qcorr/notmap.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

DensityMatrix maximally_mixed(std::size_t d, std::size_t n) {
    std::size_t side = 1;
    for (std::size_t k = 0; k < n; ++k) side *= d;
    return DensityMatrix(identity(side) * cplx(1.0 / static_cast<double>(side)),
                         std::vector<std::size_t>(n, d));
}

} // namespace

TEST_CASE("corr_tensor of the maximally mixed three-qutrit state") {
    const auto t = corr_tensor(maximally_mixed(3, 3));
    REQUIRE(t.at({0, 0, 0}) == Catch::Approx(1.0).margin(1e-12));
    for (std::size_t flat = 1; flat < t.size(); ++flat)
        REQUIRE(std::abs(t[flat]) < 1e-12);
}

TEST_CASE("corr_tensor of |0><0| for a single qubit") {
    PureState psi;
    psi.dims = {2};
    psi.amplitudes = {1.0, 0.0};
    const auto t = corr_tensor(density(psi));
    REQUIRE(t.at({0}) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(t.at({1}) == Catch::Approx(0.0).margin(1e-12));  // sigma_x
    REQUIRE(t.at({2}) == Catch::Approx(0.0).margin(1e-12));  // sigma_y
    REQUIRE(t.at({3}) == Catch::Approx(1.0).margin(1e-12));  // sigma_z
}

TEST_CASE("corr_tensor rejects unequal local dimensions") {
    const DensityMatrix rho(identity(6) * cplx(1.0 / 6.0), {2, 3});
    REQUIRE_THROWS_AS(corr_tensor(rho), std::invalid_argument);
}

TEST_CASE("Table 1 sigma values, per-placement convention") {
    struct Row {
        char name;
        double s1, s2, s3;      // original state
        double n1, n2, n3;      // no-correlation state
    };
    const Row rows[] = {
        {'a', 0.0, 8.0 / 9.0, 160.0 / 27.0, 0.0, 8.0 / 81.0, 0.0},
        {'b', 4.0 / 9.0, 32.0 / 27.0, 128.0 / 27.0, 4.0 / 81.0, 32.0 / 243.0, 0.0},
        {'c', 52.0 / 225.0, 704.0 / 675.0, 3584.0 / 675.0, 52.0 / 2025.0, 704.0 / 6075.0, 0.0},
        {'d', 16.0 / 75.0, 232.0 / 225.0, 3616.0 / 675.0, 16.0 / 675.0, 232.0 / 2025.0, 0.0},
        {'e', 0.0, 8.0 / 9.0, 160.0 / 27.0, 0.0, 8.0 / 81.0, 0.0},
    };
    for (const auto& row : rows) {
        const auto rho = density(named_state(row.name));
        const auto t = corr_tensor(rho);
        const auto tn = corr_tensor(nc_state(rho));
        CAPTURE(row.name);
        REQUIRE(sigma(t, 1) == Catch::Approx(row.s1).margin(1e-10));
        REQUIRE(sigma(t, 2) == Catch::Approx(row.s2).margin(1e-10));
        REQUIRE(sigma(t, 3) == Catch::Approx(row.s3).margin(1e-10));
        REQUIRE(sigma(tn, 1) == Catch::Approx(row.n1).margin(1e-10));
        REQUIRE(sigma(tn, 2) == Catch::Approx(row.n2).margin(1e-10));
        REQUIRE(sigma(tn, 3) == Catch::Approx(row.n3).margin(1e-10));
    }
}

TEST_CASE("sigma total convention counts all placements") {
    // permutation-symmetric states: total = C(3, n_obs) * per_placement
    const auto t = corr_tensor(density(named_state('b')));
    REQUIRE(sigma(t, 1, SigmaConvention::total) ==
            Catch::Approx(3.0 * sigma(t, 1)).margin(1e-10));
    REQUIRE(sigma(t, 2, SigmaConvention::total) ==
            Catch::Approx(3.0 * sigma(t, 2)).margin(1e-10));
    REQUIRE(sigma(t, 3, SigmaConvention::total) ==
            Catch::Approx(sigma(t, 3)).margin(1e-12));
    REQUIRE_THROWS_AS(sigma(t, 0), std::out_of_range);
    REQUIRE_THROWS_AS(sigma(t, 4), std::out_of_range);
}

TEST_CASE("reconstruction weights for three qutrits are 1/27, 1/18, 1/12, 1/8") {
    // reconstruct a tensor holding a single unit entry per weight and compare
    // against the scaled basis element expansion
    const auto basis = gellmann_basis(3);
    CorrelationTensor t(3, 3);
    t.at({0, 0, 0}) = 1.0;  // required for unit trace
    const auto rho = reconstruct(t);
    REQUIRE(max_abs_diff(rho.matrix(), identity(27) * cplx(1.0 / 27.0)) < 1e-14);

    // weight-1: rho = I/27 + (1/18) M1 x I x I for tensor entry T(1,0,0)=eps
    CorrelationTensor t1(3, 3);
    t1.at({0, 0, 0}) = 1.0;
    t1.at({8, 0, 0}) = 0.3;  // diagonal element keeps the matrix PSD
    const auto rho1 = reconstruct(t1);
    const ComplexMatrix want1 =
        identity(27) * cplx(1.0 / 27.0) +
        kron({basis[8], identity(3), identity(3)}) * cplx(0.3 / 18.0);
    REQUIRE(max_abs_diff(rho1.matrix(), want1) < 1e-14);

    // weight factors (d/2)^w / d^n for d=3, n=3
    REQUIRE(std::pow(1.5, 0) / 27.0 == Catch::Approx(1.0 / 27.0));
    REQUIRE(std::pow(1.5, 1) / 27.0 == Catch::Approx(1.0 / 18.0));
    REQUIRE(std::pow(1.5, 2) / 27.0 == Catch::Approx(1.0 / 12.0));
    REQUIRE(std::pow(1.5, 3) / 27.0 == Catch::Approx(1.0 / 8.0));
}

TEST_CASE("roundtrip corr_tensor -> reconstruct is exact") {
    for (char name : {'b', 'e'}) {
        const auto rho = density(named_state(name));
        const auto back = reconstruct(corr_tensor(rho));
        REQUIRE(max_abs_diff(back.matrix(), rho.matrix()) < 1e-12);
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rho = density(haar_random_pure(3, 3, RandomSeed{seed}));
        const auto t = corr_tensor(rho);
        const auto back = reconstruct(t);
        REQUIRE(max_abs_diff(back.matrix(), rho.matrix()) < 1e-12);
        const auto t2 = corr_tensor(back);
        for (std::size_t flat = 0; flat < t.size(); ++flat)
            REQUIRE(std::abs(t[flat] - t2[flat]) < 1e-12);
    }
}

TEST_CASE("mixing linearity of the tensor map") {
    const auto r1 = density(haar_random_pure(3, 3, RandomSeed{100}));
    const auto r2 = density(haar_random_pure(3, 3, RandomSeed{200}));
    const double p = 0.3;
    const DensityMatrix mix(r1.matrix() * cplx(p) + r2.matrix() * cplx(1.0 - p),
                            r1.dims());
    const auto t1 = corr_tensor(r1);
    const auto t2 = corr_tensor(r2);
    const auto tm = corr_tensor(mix);
    for (std::size_t flat = 0; flat < tm.size(); ++flat)
        REQUIRE(tm[flat] == Catch::Approx(p * t1[flat] + (1 - p) * t2[flat]).margin(1e-12));
}

TEST_CASE("corr_value contracts the tensor like a direct trace") {
    // GHZ qubits, all parties measuring sigma_z: direct trace gives 0
    const auto rho = density(ghz(2, 3));
    const auto t = corr_tensor(rho);
    std::vector<double> z{0.0, 0.0, 1.0};
    REQUIRE(corr_value(t, {z, z, z}) == Catch::Approx(0.0).margin(1e-12));
    // oracle: direct trace of sigma_z x sigma_z x sigma_z against rho
    const auto basis = gellmann_basis(2);
    const auto op = kron({basis[3], basis[3], basis[3]});
    REQUIRE(trace_product_re(rho.matrix(), op) == Catch::Approx(0.0).margin(1e-12));

    // random observables against the direct trace on a random state
    std::mt19937_64 rng(321);
    std::normal_distribution<double> g;
    const auto rnd = density(haar_random_pure(3, 3, RandomSeed{77}));
    const auto tr = corr_tensor(rnd);
    const auto b3 = gellmann_basis(3);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::vector<double>> obs(3, std::vector<double>(8));
        std::vector<ComplexMatrix> ops;
        for (auto& v : obs) {
            ComplexMatrix a(3, 3);
            for (std::size_t j = 0; j < 8; ++j) {
                v[j] = g(rng);
                a += b3.elements[j] * cplx(v[j]);
            }
            ops.push_back(a);
        }
        const double direct = trace_product_re(rnd.matrix(), kron(ops));
        REQUIRE(corr_value(tr, obs) == Catch::Approx(direct).margin(1e-10));
    }

    // zero vectors give zero
    std::vector<double> zero(8, 0.0);
    REQUIRE(corr_value(tr, {zero, zero, zero}) == 0.0);
    REQUIRE_THROWS_AS(corr_value(tr, {zero, zero}), std::invalid_argument);
    REQUIRE_THROWS_AS(corr_value(tr, {zero, zero, std::vector<double>(7)}),
                      std::invalid_argument);
}
