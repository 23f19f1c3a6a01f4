#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "discordlab/correlations.hpp"
#include "discordlab/states.hpp"
#include "oracles.hpp"

using namespace discordlab;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix4 product_state() {
    ComplexMatrix a(2);
    a(0, 0) = 0.7;
    a(1, 1) = 0.3;
    ComplexMatrix b(2);
    b(0, 0) = 0.6;
    b(1, 1) = 0.4;
    b(0, 1) = 0.2;
    b(1, 0) = 0.2;
    return validate_density(kron(a, b));
}

}  // namespace

TEST_CASE("mutual information on reference states") {
    CHECK(std::abs(mutual_information(product_state())) <= 1e-10);

    const auto bell = bds_to_density({1.0, -1.0, 1.0});
    CHECK(mutual_information(bell) == doctest::Approx(2.0).epsilon(1e-12));

    // Marginals are maximally mixed; S_AB comes from spectrum {0.8, 0.2}.
    const auto bds = bds_to_density({1.0, -0.6, 0.6});
    CHECK(mutual_information(bds) ==
          doctest::Approx(1.2780719051126377).epsilon(1e-12));

    for (int trial = 0; trial < 200; ++trial) {
        const auto rho =
            xstate_to_density(sample_random_xstate({41, (uint64_t)trial}));
        const double i = mutual_information(rho);
        CHECK(i >= -1e-10);
        CHECK(i <= 2.0 + 1e-10);
    }
}

TEST_CASE("measure_on_B: outcomes on product and Bell states") {
    const auto prod = product_state();
    const auto rho_a = partial_trace(prod, Subsystem::A);
    for (double theta : {0.0, 0.3, kPi / 4}) {
        const auto outs = measure_on_B(prod, {theta, 0.9});
        CHECK(outs[0].probability + outs[1].probability ==
              doctest::Approx(1.0).epsilon(1e-12));
        for (const auto& o : outs)
            CHECK(max_abs_diff(o.state, rho_a) <= 1e-12);
    }

    const auto bell = bds_to_density({1.0, -1.0, 1.0});
    const auto outs = measure_on_B(bell, {0.0, 0.0});
    CHECK(outs[0].probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(outs[1].probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::real(outs[0].state(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::real(outs[1].state(1, 1)) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(measure_on_B(bell, {-0.1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(measure_on_B(bell, {0.3, 7.0}), std::invalid_argument);
}

TEST_CASE("objective values at fixed bases") {
    CHECK(std::abs(classical_correlation_at(product_state(), {0.4, 1.0})) <=
          1e-10);

    const auto bell = bds_to_density({1.0, -1.0, 1.0});
    CHECK(classical_correlation_at(bell, {0.0, 0.0}) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // c1 = 1 makes the conditional states pure in the sigma_x basis.
    const auto bds = bds_to_density({1.0, -0.6, 0.6});
    CHECK(classical_correlation_at(bds, {kPi / 4, 0.0}) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("objective equals the oracle's independent construction") {
    detail::SplitMix64 rng(43, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto rho =
            xstate_to_density(sample_random_xstate({43, (uint64_t)trial}));
        const double theta = rng.uniform01() * kPi;
        const double phi = rng.uniform01() * 2.0 * kPi;
        CHECK(std::abs(classical_correlation_at(rho, {theta, phi}) -
                       oracle::classical_objective(rho.matrix(), theta, phi)) <=
              1e-12);
    }
}

TEST_CASE("projector-pair periodicity (pi/2 - theta, phi + pi)") {
    detail::SplitMix64 rng(47, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto rho =
            xstate_to_density(sample_random_xstate({47, (uint64_t)trial}));
        const double theta = rng.uniform01() * 0.5 * kPi;
        const double phi = rng.uniform01() * kPi;
        CHECK(std::abs(classical_correlation_at(rho, {theta, phi}) -
                       classical_correlation_at(
                           rho, {0.5 * kPi - theta, phi + kPi})) <= 1e-12);
    }
}

TEST_CASE("classical correlation optimizer on reference states") {
    const auto zero = classical_correlation(product_state());
    CHECK(std::abs(zero.value) <= 1e-9);

    const auto bell = classical_correlation(bds_to_density({1.0, -1.0, 1.0}));
    CHECK(bell.value == doctest::Approx(1.0).epsilon(1e-9));

    const auto bds = classical_correlation(bds_to_density({1.0, -0.6, 0.6}));
    CHECK(bds.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(bds.optimal_basis.theta - kPi / 4) <= 1e-4);
    CHECK_FALSE(bds.trace.empty());
}

TEST_CASE("optimizer matches the zoomed dense-grid oracle on BDS inputs") {
    detail::SplitMix64 rng(53, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = oracle::random_bds(rng);
        const auto rho = bds_to_density(p);
        const auto opt = classical_correlation(rho);
        const auto brute =
            oracle::brute_force_classical(rho.matrix(), {0.0, 0.5 * kPi});
        CHECK(std::abs(opt.value - brute.value) <= 1e-8);
    }
}

TEST_CASE("optimizer dominance over sampled bases") {
    detail::SplitMix64 rng(59, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const auto rho =
            xstate_to_density(sample_random_xstate({59, (uint64_t)trial}));
        const auto opt = classical_correlation(rho);
        for (int k = 0; k < 25; ++k) {
            const MeasurementBasis b{rng.uniform01() * kPi,
                                     rng.uniform01() * 2.0 * kPi};
            CHECK(classical_correlation_at(rho, b) <= opt.value + 1e-10);
        }
        // The reported basis realizes the reported value on the input state.
        CHECK(std::abs(classical_correlation_at(rho, opt.optimal_basis) -
                       opt.value) <= 1e-9);
    }
}

TEST_CASE("phi = 0 fast path agrees with the full scan, either coherence sign") {
    int negative_product_cases = 0;
    for (int trial = 0; trial < 12; ++trial) {
        const auto p = sample_random_xstate({61, (uint64_t)trial});
        if (p.r03 * p.r12 < 0.0) ++negative_product_cases;
        const auto rho = xstate_to_density(p);
        const auto fast = classical_correlation(rho);
        const auto full = classical_correlation(rho, {.force_full_phi_scan = true});
        CHECK(std::abs(fast.value - full.value) <= 1e-9);

        const auto brute =
            oracle::brute_force_classical(rho.matrix(), {0.0, 0.5 * kPi});
        CHECK(std::abs(fast.value - brute.value) <= 1e-8);
    }
    CHECK(negative_product_cases > 0);  // both signs actually exercised
}

TEST_CASE("local unitaries on A leave I and J unchanged") {
    detail::SplitMix64 rng(67, 0);
    for (int trial = 0; trial < 12; ++trial) {
        const auto rho =
            xstate_to_density(sample_random_xstate({67, (uint64_t)trial}));
        const auto u = kron(oracle::random_unitary2(rng),
                            ComplexMatrix::identity(2));
        const auto rotated = validate_density(u * rho.matrix() * u.adjoint());

        CHECK(std::abs(mutual_information(rho) - mutual_information(rotated)) <=
              1e-9);
        CHECK(std::abs(classical_correlation(rho).value -
                       classical_correlation(rotated).value) <= 1e-9);
    }
}

TEST_CASE("discord breakdown on reference states") {
    const auto zero = quantum_discord(product_state());
    CHECK(std::abs(zero.discord) <= 1e-9);

    const auto bell = quantum_discord(bds_to_density({1.0, -1.0, 1.0}));
    CHECK(bell.discord == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(bell.mutual_info == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(bell.classical == doctest::Approx(1.0).epsilon(1e-6));

    const auto bds = quantum_discord(bds_to_density({1.0, -0.6, 0.6}));
    CHECK(std::abs(bds.discord - 0.2780719051126377) <= 1e-5);
    CHECK(bds.discord == bds.mutual_info - bds.classical);
    CHECK_FALSE(bds.optimizer_trace.empty());
}

TEST_CASE("correlation measures are non-negative on random X states") {
    for (int trial = 0; trial < 1000; ++trial) {
        const auto rho =
            xstate_to_density(sample_random_xstate({71, (uint64_t)trial}));
        const auto d = quantum_discord(rho);
        CHECK(d.mutual_info >= -1e-10);
        CHECK(d.classical >= -1e-10);
        CHECK(d.discord >= -1e-10);
    }
}
