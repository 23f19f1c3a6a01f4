#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "discordlab/states.hpp"
#include "oracles.hpp"

using namespace discordlab;

TEST_CASE("bds_eigenvalues in equation order") {
    const auto flat = bds_eigenvalues({0.0, 0.0, 0.0});
    for (double l : flat) CHECK(l == doctest::Approx(0.25).epsilon(1e-15));

    const auto ev = bds_eigenvalues({1.0, -0.6, 0.6});
    CHECK(std::abs(ev[0] - 0.2) <= 1e-12);
    CHECK(std::abs(ev[1] - 0.0) <= 1e-12);
    CHECK(std::abs(ev[2] - 0.8) <= 1e-12);
    CHECK(std::abs(ev[3] - 0.0) <= 1e-12);
}

TEST_CASE("bds_eigenvalues agrees with the numeric eigensolver") {
    detail::SplitMix64 rng(23, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto p = oracle::random_bds(rng);
        auto formula = bds_eigenvalues(p);
        std::sort(formula.begin(), formula.end(), std::greater<>());
        const auto numeric = eig_hermitian(bds_to_density(p).matrix());
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(formula[i] - numeric[i]) <= 1e-12);
    }
}

TEST_CASE("bds_to_density known constructions") {
    CHECK(max_abs_diff(bds_to_density({0, 0, 0}).matrix(),
                       0.25 * ComplexMatrix::identity(4)) == 0.0);

    // Bell Phi+ projector at the (1, -1, 1) corner of the tetrahedron.
    const auto bell = bds_to_density({1.0, -1.0, 1.0}).matrix();
    ComplexMatrix phi_plus(4);
    phi_plus(0, 0) = phi_plus(3, 3) = 0.5;
    phi_plus(0, 3) = phi_plus(3, 0) = 0.5;
    CHECK(max_abs_diff(bell, phi_plus) <= 1e-15);

    // Termwise expansion at c = (1, -0.6, 0.6).
    const auto m = bds_to_density({1.0, -0.6, 0.6}).matrix();
    CHECK(std::real(m(0, 0)) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(std::real(m(1, 1)) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(std::real(m(2, 2)) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(std::real(m(3, 3)) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(std::real(m(0, 3)) == doctest::Approx(0.4).epsilon(1e-14));  // (c1-c2)/4
    CHECK(std::real(m(1, 2)) == doctest::Approx(0.1).epsilon(1e-14));  // (c1+c2)/4
}

TEST_CASE("bds_to_density rejects the (1,1,1) sign pattern") {
    CHECK_THROWS_AS(bds_to_density({1.0, 1.0, 1.0}), InvalidStateError);
}

TEST_CASE("perturbed state reduces to BDS at epsilon = 0") {
    const auto plain = bds_to_density({1.0, -0.6, 0.6}).matrix();
    const auto pert = perturbed_bds_to_density({1.0, -0.6, 0.6, 0.0}).matrix();
    CHECK(max_abs_diff(plain, pert) == 0.0);
}

TEST_CASE("perturbed state entries at epsilon = 0.02") {
    const auto m = perturbed_bds_to_density({1.0, -0.6, 0.6, 0.02}).matrix();
    CHECK(std::real(m(0, 0)) == doctest::Approx(0.41).epsilon(1e-14));
    CHECK(std::real(m(1, 1)) == doctest::Approx(0.10).epsilon(1e-14));
    CHECK(std::real(m(2, 2)) == doctest::Approx(0.10).epsilon(1e-14));
    CHECK(std::real(m(3, 3)) == doctest::Approx(0.39).epsilon(1e-14));
    CHECK(std::real(m(0, 3)) == doctest::Approx(0.39).epsilon(1e-14));
    CHECK(std::real(m(1, 2)) == doctest::Approx(0.10).epsilon(1e-14));

    // The diagonal products split: 0.041 vs 0.039.
    const double p00p22 = std::real(m(0, 0)) * std::real(m(2, 2));
    const double p11p33 = std::real(m(1, 1)) * std::real(m(3, 3));
    CHECK(p00p22 == doctest::Approx(0.041).epsilon(1e-12));
    CHECK(p11p33 == doctest::Approx(0.039).epsilon(1e-12));
}

TEST_CASE("perturbed state rejects PSD-breaking epsilon") {
    CHECK_THROWS_AS(perturbed_bds_to_density({1.0, -0.6, 0.6, 0.9}),
                    InvalidStateError);
}

TEST_CASE("x-state construction and inversion") {
    const XStateParams mixed{0.25, 0.25, 0.25, 0.25, 0.0, 0.0};
    CHECK(max_abs_diff(xstate_to_density(mixed).matrix(),
                       0.25 * ComplexMatrix::identity(4)) == 0.0);

    const XStateParams bell{0.5, 0.0, 0.0, 0.5, 0.0, 0.5};
    const auto bell_rho = xstate_to_density(bell);
    CHECK(max_abs_diff(bell_rho.matrix(),
                       bds_to_density({1.0, -1.0, 1.0}).matrix()) <= 1e-15);

    const auto round =
        density_to_xparams(bds_to_density({1.0, -0.6, 0.6}));
    CHECK(round.p00 == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(round.p11 == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(round.p22 == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(round.p33 == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(round.r12 == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(round.r03 == doctest::Approx(0.4).epsilon(1e-14));

    const auto pert =
        density_to_xparams(perturbed_bds_to_density({1.0, -0.6, 0.6, 0.02}));
    CHECK(pert.p00 == doctest::Approx(0.41).epsilon(1e-14));
    CHECK(pert.p33 == doctest::Approx(0.39).epsilon(1e-14));
    CHECK(pert.r03 == doctest::Approx(0.39).epsilon(1e-14));
    CHECK(pert.r12 == doctest::Approx(0.10).epsilon(1e-14));
}

TEST_CASE("x-state invariant violations throw") {
    CHECK_THROWS_AS(validate_xstate({0.5, 0.5, 0.2, -0.2, 0.0, 0.0}),
                    InvalidStateError);
    CHECK_THROWS_AS(validate_xstate({0.5, 0.2, 0.2, 0.2, 0.0, 0.0}),
                    InvalidStateError);  // sums to 1.1
    CHECK_THROWS_AS(validate_xstate({0.5, 0.0, 0.0, 0.5, 0.1, 0.0}),
                    InvalidStateError);  // |r12| > sqrt(p11 p22) = 0
    CHECK_THROWS_AS(validate_xstate({0.5, 0.25, 0.2, 0.05, 0.0, 0.2}),
                    InvalidStateError);  // |r03| > sqrt(p00 p33)
}

TEST_CASE("density_to_xparams rejects non-X input naming the entry") {
    ComplexMatrix m(4);
    m(0, 0) = m(1, 1) = 0.3;
    m(2, 2) = m(3, 3) = 0.2;
    m(0, 1) = m(1, 0) = 0.1;
    const auto rho = validate_density(m);
    try {
        density_to_xparams(rho);
        FAIL("expected NotXShapedError");
    } catch (const NotXShapedError& e) {
        CHECK(e.row == 0);
        CHECK(e.col == 1);
        CHECK(e.magnitude == doctest::Approx(0.1).epsilon(1e-12));
    }
}

TEST_CASE("x-state round trip is the identity") {
    for (int trial = 0; trial < 1000; ++trial) {
        const auto p = sample_random_xstate({29, (uint64_t)trial});
        const auto q = density_to_xparams(xstate_to_density(p));
        CHECK(std::abs(p.p00 - q.p00) <= 1e-12);
        CHECK(std::abs(p.p11 - q.p11) <= 1e-12);
        CHECK(std::abs(p.p22 - q.p22) <= 1e-12);
        CHECK(std::abs(p.p33 - q.p33) <= 1e-12);
        CHECK(std::abs(p.r12 - q.r12) <= 1e-12);
        CHECK(std::abs(p.r03 - q.r03) <= 1e-12);
    }
}

TEST_CASE("sampler determinism and stream separation") {
    const auto a = sample_random_xstate({42, 7});
    const auto b = sample_random_xstate({42, 7});
    CHECK(a.p00 == b.p00);
    CHECK(a.p11 == b.p11);
    CHECK(a.p22 == b.p22);
    CHECK(a.p33 == b.p33);
    CHECK(a.r12 == b.r12);
    CHECK(a.r03 == b.r03);

    const auto c = sample_random_xstate({42, 8});
    CHECK(a.p00 != c.p00);
}

TEST_CASE("sampled states are valid with symmetric diagonal") {
    double mean[4] = {0, 0, 0, 0};
    const int n = 10000;
    int exact_capable = 0;
    for (int i = 0; i < n; ++i) {
        const auto p = sample_random_xstate({1234, (uint64_t)i});
        CHECK_NOTHROW(validate_xstate(p));
        mean[0] += p.p00;
        mean[1] += p.p11;
        mean[2] += p.p22;
        mean[3] += p.p33;
        if (std::abs(p.p00 * p.p22 - p.p11 * p.p33) <= 1e-9) ++exact_capable;
    }
    for (double& m : mean) m /= n;
    for (double m : mean) CHECK(std::abs(m - 0.25) <= 0.01);
    // p00 p22 = p11 p33 is measure zero under the continuous sampler.
    CHECK(exact_capable == 0);
}
