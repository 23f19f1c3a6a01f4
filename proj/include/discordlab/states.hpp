// State families used throughout: Bell-diagonal states, their symmetry-broken
// perturbation, and general real X states, plus a deterministic sampler for
// random X states.

#pragma once

#include <array>
#include <cstdint>

#include "discordlab/matrix.hpp"

namespace discordlab {

// Correlation coefficients of a Bell-diagonal state,
// rho = (I4 + sum_j c_j sigma_j (x) sigma_j) / 4.
struct BellDiagonalParams {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

// Bell-diagonal state plus a local sigma_3 admixture of strength epsilon;
// the primed coefficients are c1' = c1 - eps, c2' = c2 + eps, c3' = c3.
struct PerturbedBDSParams {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double epsilon = 0.0;
};

// Real X state: diagonal (p00, p11, p22, p33), anti-diagonal coherences
// r03 = rho_03 and r12 = rho_12.
struct XStateParams {
    double p00 = 0.25;
    double p11 = 0.25;
    double p22 = 0.25;
    double p33 = 0.25;
    double r12 = 0.0;
    double r03 = 0.0;
};

// Identical (seed, stream) pairs reproduce identical samples on every
// platform; disjoint streams give independent parallel draws.
struct SampleSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// Eigenvalues in equation order:
// { (1+c1+c2-c3)/4, (1-c1-c2-c3)/4, (1+c1-c2+c3)/4, (1-c1+c2+c3)/4 }.
std::array<double, 4> bds_eigenvalues(const BellDiagonalParams& p);

// Construction via the Pauli expansion; throws InvalidStateError when any
// eigenvalue from bds_eigenvalues falls below -1e-12.
DensityMatrix4 bds_to_density(const BellDiagonalParams& p);

// Same expansion with the epsilon term; reduces elementwise to
// bds_to_density at epsilon = 0. Throws InvalidStateError on PSD failure.
DensityMatrix4 perturbed_bds_to_density(const PerturbedBDSParams& p);

// Throws InvalidStateError when the parameters violate normalization or the
// 2x2-block PSD bounds |r03| <= sqrt(p00 p33), |r12| <= sqrt(p11 p22)
// (each with 1e-12 slack).
void validate_xstate(const XStateParams& p);

DensityMatrix4 xstate_to_density(const XStateParams& p);

// Inverse reading of the X pattern. Entries off the X larger than 1e-10 in
// magnitude, or coherences with imaginary part above 1e-10, raise
// NotXShapedError naming the largest offending entry.
XStateParams density_to_xparams(const DensityMatrix4& rho);

// Diagonal uniform on the probability simplex; coherences uniform within
// their PSD bounds with uniform random signs. Deterministic in (seed, stream).
XStateParams sample_random_xstate(const SampleSeed& seed);

namespace detail {

// splitmix64: counter-free scrambler used for portable, stream-splittable
// uniform draws (std::uniform_real_distribution is not bit-stable across
// standard library implementations).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next();
    double uniform01();   // in (0, 1]
    double sign();        // -1.0 or +1.0

  private:
    std::uint64_t state_;
};

}  // namespace detail

}  // namespace discordlab
