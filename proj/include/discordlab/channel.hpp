// Colored-noise dephasing channel: decoherence envelope, Kraus pair, the
// two-qubit product map, and an independent integro-differential check of the
// envelope.

#pragma once

#include <utility>
#include <vector>

#include "discordlab/matrix.hpp"

namespace discordlab {

// Dimensionless time nu = t / (2 tau).
struct DimensionlessTime {
    explicit DimensionlessTime(double v);
    double nu;
};

// Random-telegraph dephasing reservoir with amplitude a (1/time) and
// correlation time tau (time). The regime is set by 4*a*tau: above 1 the
// envelope oscillates (mu real), below 1 it decays monotonically.
class DephasingChannel {
  public:
    DephasingChannel(double a, double tau);

    double a() const { return a_; }
    double tau() const { return tau_; }
    double four_a_tau() const { return 4.0 * a_ * tau_; }

    // mu = sqrt((4 a tau)^2 - 1); only defined in the oscillatory regime.
    double mu() const;

  private:
    double a_;
    double tau_;
};

// Envelope Lambda(nu) multiplying single-qubit coherences:
//   4 a tau > 1:  e^-nu [cos(mu nu) + sin(mu nu)/mu]
//   4 a tau = 1:  e^-nu (1 + nu)
//   4 a tau < 1:  e^-nu [cosh(k nu) + sinh(k nu)/k],  k = sqrt(1-(4 a tau)^2)
// Always Lambda(0) = 1 and |Lambda| <= 1.
double lambda_envelope(const DephasingChannel& ch, DimensionlessTime nu);

// Kraus pair M1 = sqrt((1+Lambda)/2) I2, M2 = sqrt((1-Lambda)/2) sigma_3.
std::pair<ComplexMatrix, ComplexMatrix> kraus_ops(const DephasingChannel& ch,
                                                  DimensionlessTime nu);

// rho(nu) = sum_ij (Mi (x) Mj) rho0 (Mi (x) Mj)^dag. Trace preserving,
// diagonal entries untouched; a Bell-diagonal input maps to
// (c1, c2, c3) -> (L^2 c1, L^2 c2, c3).
DensityMatrix4 apply_two_qubit(const DephasingChannel& ch,
                               const DensityMatrix4& rho0,
                               DimensionlessTime nu);

struct CoherenceSample {
    double t;
    double value;  // rho_01(t) / rho_01(0)
};

// Independent route to the envelope: integrates the memory-kernel equation
//   d/dt rho01 = -4 a^2 int_0^t e^-((t-t')/tau) rho01(t') dt'
// through its exact ODE reduction y' = -4 a^2 z, z' = -z/tau + y (the kernel
// is exponential, so the reduction is loss-free), advanced with classical
// RK4. Samples are returned at t = 0, dt, 2dt, ..., and agree with
// lambda_envelope(t/2tau) to 1e-6 for dt <= 1e-3 tau.
std::vector<CoherenceSample> volterra_coherence(const DephasingChannel& ch,
                                                double t_max, double dt);

}  // namespace discordlab
