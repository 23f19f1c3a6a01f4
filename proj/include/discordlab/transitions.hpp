// Correlation trajectories under the dephasing map, sudden-vs-continuous
// classification of optimal-basis changes via adaptive grid refinement, the
// Chen et al. basis conditions, the sudden-capability constraint
// p00 p22 = p11 p33, and random-state surveys.
//
// Trajectory points and survey samples are independent, so the hot loops are
// OpenMP-parallel with results merged in index order; the *_serial variants
// run the identical per-item code on one thread and are kept as the reference
// for tests and the benchmark.

#pragma once

#include <array>
#include <vector>

#include "discordlab/channel.hpp"
#include "discordlab/correlations.hpp"
#include "discordlab/states.hpp"

namespace discordlab {

// Optimal-angle labeling tolerance (rad): SigmaX within kLabelTol of pi/4,
// SigmaZ within kLabelTol of 0 or pi/2.
inline constexpr double kLabelTol = 1e-3;
// Adjacent theta* jump that triggers refinement and, if it survives to the
// width floor, is called sudden.
inline constexpr double kSuddenJumpTol = 0.1;
// Jump below which a refined passage counts as continuous.
inline constexpr double kContinuityTol = 0.05;
// Interval width floor for bisection, in nu. A perturbed passage is a
// continuous optimum walk of width W ~ 1e-10 in nu at epsilon = 0.02 (it
// shrinks like epsilon^4), and the walk starts pitchfork-like, so the jump
// across the first floor-width step scales as sqrt(floor/W)/2; the floor has
// to sit ~3 decades below W for that to clear the continuity threshold.
// 1e-13 still leaves bisection far above the double spacing of nu values
// around 1.
inline constexpr double kNuFloor = 1e-13;
// Central-difference step for the discord slopes on either side of an event.
inline constexpr double kSlopeStep = 1e-5;

enum class BasisLabel { SigmaX, SigmaZ, Intermediate };

BasisLabel classify_basis(double theta_star);
const char* to_string(BasisLabel label);

struct TrajectoryPoint {
    double nu = 0.0;
    double discord = 0.0;
    double classical = 0.0;
    double mutual_info = 0.0;
    double theta_star = 0.0;
    BasisLabel basis_label = BasisLabel::SigmaZ;
};

// Evolve state0 through the channel at every nu in nu_grid (strictly
// increasing, starting at 0) and measure the correlations.
std::vector<TrajectoryPoint> evolve_trajectory(
    const DensityMatrix4& state0, const DephasingChannel& ch,
    const std::vector<double>& nu_grid, const OptimizerOptions& opts = {});
std::vector<TrajectoryPoint> evolve_trajectory_serial(
    const DensityMatrix4& state0, const DephasingChannel& ch,
    const std::vector<double>& nu_grid, const OptimizerOptions& opts = {});

enum class TransitionKind { Sudden, Continuous, Indeterminate };

const char* to_string(TransitionKind kind);

struct TransitionEvent {
    // Bracket of the largest adjacent theta* jump left after refinement.
    double nu_left = 0.0;
    double nu_right = 0.0;
    TransitionKind kind = TransitionKind::Indeterminate;
    double theta_jump = 0.0;  // that largest jump, in rad
    int refinement_depth = 0;
    // Discord slopes just outside the bracket (central differences at
    // kSlopeStep).
    double left_slope = 0.0;
    double right_slope = 0.0;
    // Largest adjacent jump after each refinement depth, starting at depth 0.
    std::vector<double> max_jump_by_depth;
};

struct TransitionReport {
    std::vector<TransitionEvent> events;
    double derivative_gap = 0.0;  // max |left - right| slope over events
    // Every scanned point (coarse grid plus refinement midpoints), by nu.
    std::vector<TrajectoryPoint> points;
};

// Scan theta*(nu) on a coarse grid of spacing ~initial_step over [0, nu_max];
// wherever the jump between adjacent points exceeds kSuddenJumpTol, bisect
// (together with the contiguous neighborhood still jumping above
// kContinuityTol) down to the width floor or max_depth. Jumps that stay at or
// above kSuddenJumpTol at the floor are Sudden; passages refined below
// kContinuityTol are Continuous; anything else is flagged Indeterminate
// rather than dropped.
TransitionReport detect_transitions(const DensityMatrix4& state0,
                                    const DephasingChannel& ch, double nu_max,
                                    double initial_step, int max_depth,
                                    const OptimizerOptions& opts = {});

struct ThetaObjectivePoint {
    double theta = 0.0;
    double value = 0.0;
};

// Objective curve J(theta) at phi = 0, for plotting basis scans.
std::vector<ThetaObjectivePoint> scan_basis(const DensityMatrix4& state,
                                            const std::vector<double>& theta_grid);

enum class ChenLabel { SigmaZOptimal, SigmaXOptimal, Both, Neither };

const char* to_string(ChenLabel label);

struct ChenClass {
    ChenLabel label = ChenLabel::Neither;
    // sigma_z condition: (|r12| + |r03|)^2 <= (p00 - p22)(p33 - p11), the
    // diagonal pairing that matches measurement on subsystem B.
    double sigma_z_lhs = 0.0;
    double sigma_z_rhs = 0.0;
    // sigma_x condition: |sqrt(p00 p33) - sqrt(p11 p22)| <= |r12| + |r03|
    double sigma_x_lhs = 0.0;
    double sigma_x_rhs = 0.0;
    // Whether r03 was sign-flipped to restore |r12 + r03| >= |r12 - r03|.
    bool r03_flipped = false;
};

// Optimal-measurement classification for real X states. The two inequalities
// are sufficient conditions; when neither fires, the label is settled by
// checking which basis attains the maximized classical correlation, so
// Neither is issued only for optima strictly between sigma_x and sigma_z.
// The recorded lhs/rhs values are always the raw inequality sides.
ChenClass chen_classify(const XStateParams& p);

// |p00 p22 - p11 p33| <= tol: the diagonal constraint a state must satisfy
// for an abrupt sigma_x <-> sigma_z switch to be possible. Invariant under
// dephasing, which leaves the diagonal untouched.
bool sudden_capable(const XStateParams& p, double tol);

inline constexpr int kSurveyHistogramBins = 64;

struct SurveyReport {
    SampleSeed seed;
    long long n = 0;
    long long n_sudden_capable = 0;
    long long n_sigma_z = 0;
    long long n_sigma_x = 0;
    long long n_both = 0;
    long long n_neither = 0;
    // |p00 p22 - p11 p33| binned uniformly on [0, 0.25].
    std::array<long long, kSurveyHistogramBins> capability_gap_histogram{};
};

// Sample n random X states (sample i uses stream seed.stream + i, so the
// tallies are independent of thread schedule) and count sudden-capable states
// and Chen classes.
SurveyReport random_survey(long long n, const SampleSeed& seed, double tol);
SurveyReport random_survey_serial(long long n, const SampleSeed& seed,
                                  double tol);

}  // namespace discordlab
