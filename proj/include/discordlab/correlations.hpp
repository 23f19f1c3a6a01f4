// Mutual information, classical correlation maximized over local projective
// measurements on subsystem B, and quantum discord.

#pragma once

#include <array>
#include <vector>

#include "discordlab/matrix.hpp"

namespace discordlab {

// Measurement direction on B. The projector pair is built from
//   |pi1> = cos(theta)|0> + e^{i phi} sin(theta)|1>,
//   |pi2> = sin(theta)|0> - e^{i phi} cos(theta)|1>,
// with theta in [0, pi] and phi in [0, 2 pi].
struct MeasurementBasis {
    double theta = 0.0;
    double phi = 0.0;
};

// Outcome k with probability p_k and the conditional state of A. Outcomes
// with p_k <= 1e-12 carry the maximally mixed placeholder and are skipped in
// entropy averages.
struct ConditionalOutcome {
    int k = 1;  // 1 or 2
    double probability = 0.0;
    ComplexMatrix state{2};
};

struct BasisEvaluation {
    MeasurementBasis basis;
    double value = 0.0;
};

struct ClassicalCorrelationResult {
    double value = 0.0;
    MeasurementBasis optimal_basis;
    std::vector<BasisEvaluation> trace;  // every objective evaluation
};

struct CorrelationBreakdown {
    double mutual_info = 0.0;
    double classical = 0.0;
    double discord = 0.0;
    MeasurementBasis optimal_basis;
    std::vector<BasisEvaluation> optimizer_trace;
};

struct OptimizerOptions {
    // Debug switch: scan the full phi grid even for real X states instead of
    // the symmetry-reduced phi = 0 path.
    bool force_full_phi_scan = false;
};

// I = S(rho_A) + S(rho_B) - S(rho_AB), in bits.
double mutual_information(const DensityMatrix4& rho);

// Projective measurement of the given basis on subsystem B.
std::array<ConditionalOutcome, 2> measure_on_B(const DensityMatrix4& rho,
                                               const MeasurementBasis& basis);

// The objective S(rho_A) - sum_k p_k S(rho_A|k) at one basis (no
// maximization).
double classical_correlation_at(const DensityMatrix4& rho,
                                const MeasurementBasis& basis);

// Maximum of classical_correlation_at over the projective family: coarse
// grid (theta step pi/360 on [0, pi/2]; phi step pi/18 when scanned),
// golden-section refinement restarted from the three best grid cells. For
// real X states the phi scan collapses to phi = 0 after normalizing
// r03 r12 >= 0 by a local phase flip (the equivalent measurement on the
// unflipped state has phi = pi/2 and is what gets reported). Degenerate
// maxima are tie-broken toward the largest theta, then the smallest phi, so
// the sigma_z plateau reports theta = pi/2 and a continuously moving optimum
// follows the pi/4 -> pi/2 branch.
ClassicalCorrelationResult classical_correlation(
    const DensityMatrix4& rho, const OptimizerOptions& opts = {});

// D = I - J, measurement on subsystem B.
CorrelationBreakdown quantum_discord(const DensityMatrix4& rho,
                                     const OptimizerOptions& opts = {});

}  // namespace discordlab
