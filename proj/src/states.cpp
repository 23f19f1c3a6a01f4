#include "discordlab/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace discordlab {

std::array<double, 4> bds_eigenvalues(const BellDiagonalParams& p) {
    return {0.25 * (1.0 + p.c1 + p.c2 - p.c3),
            0.25 * (1.0 - p.c1 - p.c2 - p.c3),
            0.25 * (1.0 + p.c1 - p.c2 + p.c3),
            0.25 * (1.0 - p.c1 + p.c2 + p.c3)};
}

namespace {

ComplexMatrix pauli_correlation_sum(double c1, double c2, double c3) {
    const auto s1 = ComplexMatrix::pauli(1);
    const auto s2 = ComplexMatrix::pauli(2);
    const auto s3 = ComplexMatrix::pauli(3);
    ComplexMatrix m = kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
    m = m + c1 * kron(s1, s1);
    m = m + c2 * kron(s2, s2);
    m = m + c3 * kron(s3, s3);
    return m;
}

}  // namespace

DensityMatrix4 bds_to_density(const BellDiagonalParams& p) {
    const auto ev = bds_eigenvalues(p);
    const double lambda_min = *std::min_element(ev.begin(), ev.end());
    if (lambda_min < -1e-12)
        throw InvalidStateError(
            "bds_to_density: eigenvalue " + std::to_string(lambda_min) +
                " below -1e-12",
            {StateViolation::Kind::Positivity, -lambda_min});
    return validate_density(0.25 * pauli_correlation_sum(p.c1, p.c2, p.c3));
}

DensityMatrix4 perturbed_bds_to_density(const PerturbedBDSParams& p) {
    const double c1p = p.c1 - p.epsilon;
    const double c2p = p.c2 + p.epsilon;
    ComplexMatrix m = pauli_correlation_sum(c1p, c2p, p.c3);
    const auto i2 = ComplexMatrix::identity(2);
    const auto s3 = ComplexMatrix::pauli(3);
    m = m + p.epsilon * (kron(i2, s3) + kron(s3, i2));
    return validate_density(0.25 * m);
}

void validate_xstate(const XStateParams& p) {
    const double probs[4] = {p.p00, p.p11, p.p22, p.p33};
    for (double q : probs)
        if (q < 0.0)
            throw InvalidStateError(
                "xstate: negative diagonal entry " + std::to_string(q),
                {StateViolation::Kind::Positivity, -q});
    const double sum_dev = std::abs(p.p00 + p.p11 + p.p22 + p.p33 - 1.0);
    if (sum_dev > kTraceTol)
        throw InvalidStateError(
            "xstate: diagonal sums to 1 off by " + std::to_string(sum_dev),
            {StateViolation::Kind::Trace, sum_dev});
    const double outer_bound = std::sqrt(p.p00 * p.p33) + 1e-12;
    const double inner_bound = std::sqrt(p.p11 * p.p22) + 1e-12;
    if (std::abs(p.r03) > outer_bound)
        throw InvalidStateError(
            "xstate: |r03| exceeds sqrt(p00 p33)",
            {StateViolation::Kind::Positivity, std::abs(p.r03) - outer_bound});
    if (std::abs(p.r12) > inner_bound)
        throw InvalidStateError(
            "xstate: |r12| exceeds sqrt(p11 p22)",
            {StateViolation::Kind::Positivity, std::abs(p.r12) - inner_bound});
}

DensityMatrix4 xstate_to_density(const XStateParams& p) {
    validate_xstate(p);
    ComplexMatrix m(4);
    m(0, 0) = p.p00;
    m(1, 1) = p.p11;
    m(2, 2) = p.p22;
    m(3, 3) = p.p33;
    m(0, 3) = p.r03;
    m(3, 0) = p.r03;
    m(1, 2) = p.r12;
    m(2, 1) = p.r12;
    return validate_density(m);
}

XStateParams density_to_xparams(const DensityMatrix4& rho) {
    const ComplexMatrix& m = rho.matrix();
    // X pattern: main diagonal plus (0,3) and (1,2).
    int worst_i = 0, worst_j = 0;
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const bool on_x = (i == j) || (i + j == 3);
            if (on_x) continue;
            const double mag = std::abs(m(i, j));
            if (mag > worst) {
                worst = mag;
                worst_i = i;
                worst_j = j;
            }
        }
    if (worst > 1e-10)
        throw NotXShapedError("density_to_xparams: entry (" +
                                  std::to_string(worst_i) + "," +
                                  std::to_string(worst_j) + ") has magnitude " +
                                  std::to_string(worst),
                              worst_i, worst_j, worst);
    if (std::abs(std::imag(m(0, 3))) > 1e-10)
        throw NotXShapedError("density_to_xparams: rho_03 not real", 0, 3,
                              std::abs(std::imag(m(0, 3))));
    if (std::abs(std::imag(m(1, 2))) > 1e-10)
        throw NotXShapedError("density_to_xparams: rho_12 not real", 1, 2,
                              std::abs(std::imag(m(1, 2))));

    XStateParams p;
    p.p00 = std::real(m(0, 0));
    p.p11 = std::real(m(1, 1));
    p.p22 = std::real(m(2, 2));
    p.p33 = std::real(m(3, 3));
    p.r03 = std::real(m(0, 3));
    p.r12 = std::real(m(1, 2));
    return p;
}

namespace detail {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

SplitMix64::SplitMix64(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed + 0x9e3779b97f4a7c15ULL * (stream + 1))) {}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    return mix64(z);
}

double SplitMix64::uniform01() {
    // 53-bit mantissa, shifted into (0, 1] so logs stay finite.
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

double SplitMix64::sign() { return (next() >> 63) ? -1.0 : 1.0; }

}  // namespace detail

XStateParams sample_random_xstate(const SampleSeed& seed) {
    detail::SplitMix64 rng(seed.seed, seed.stream);

    // Uniform on the simplex via normalized exponential spacings.
    double e[4];
    double total = 0.0;
    for (double& x : e) {
        x = -std::log(rng.uniform01());
        total += x;
    }
    XStateParams p;
    p.p00 = e[0] / total;
    p.p11 = e[1] / total;
    p.p22 = e[2] / total;
    p.p33 = e[3] / total;

    const double u1 = rng.uniform01();
    const double s1 = rng.sign();
    const double u2 = rng.uniform01();
    const double s2 = rng.sign();
    p.r03 = s1 * u1 * std::sqrt(p.p00 * p.p33);
    p.r12 = s2 * u2 * std::sqrt(p.p11 * p.p22);
    return p;
}

}  // namespace discordlab
