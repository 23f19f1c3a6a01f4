#include "discordlab/transitions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace discordlab {

namespace {

constexpr double kPi = std::numbers::pi;

TrajectoryPoint eval_point(const DensityMatrix4& state0,
                           const DephasingChannel& ch, double nu,
                           const OptimizerOptions& opts) {
    const DensityMatrix4 evolved =
        apply_two_qubit(ch, state0, DimensionlessTime(nu));
    const CorrelationBreakdown b = quantum_discord(evolved, opts);
    TrajectoryPoint p;
    p.nu = nu;
    p.discord = b.discord;
    p.classical = b.classical;
    p.mutual_info = b.mutual_info;
    p.theta_star = b.optimal_basis.theta;
    p.basis_label = classify_basis(p.theta_star);
    return p;
}

double discord_at(const DensityMatrix4& state0, const DephasingChannel& ch,
                  double nu, const OptimizerOptions& opts) {
    const DensityMatrix4 evolved =
        apply_two_qubit(ch, state0, DimensionlessTime(nu));
    return quantum_discord(evolved, opts).discord;
}

void check_grid(const std::vector<double>& nu_grid) {
    if (nu_grid.empty() || nu_grid.front() != 0.0)
        throw std::invalid_argument("evolve_trajectory: grid must start at 0");
    for (std::size_t i = 1; i < nu_grid.size(); ++i)
        if (!(nu_grid[i] > nu_grid[i - 1]))
            throw std::invalid_argument(
                "evolve_trajectory: grid must be strictly increasing");
}

std::vector<TrajectoryPoint> evolve_impl(const DensityMatrix4& state0,
                                         const DephasingChannel& ch,
                                         const std::vector<double>& nu_grid,
                                         const OptimizerOptions& opts,
                                         bool parallel) {
    check_grid(nu_grid);
    std::vector<TrajectoryPoint> out(nu_grid.size());
    const long long n = static_cast<long long>(nu_grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
    for (long long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            eval_point(state0, ch, nu_grid[static_cast<std::size_t>(i)], opts);
    (void)parallel;
    return out;
}

}  // namespace

BasisLabel classify_basis(double theta_star) {
    if (std::abs(theta_star - 0.25 * kPi) <= kLabelTol) return BasisLabel::SigmaX;
    if (std::min(theta_star, std::abs(0.5 * kPi - theta_star)) <= kLabelTol)
        return BasisLabel::SigmaZ;
    return BasisLabel::Intermediate;
}

const char* to_string(BasisLabel label) {
    switch (label) {
        case BasisLabel::SigmaX: return "SigmaX";
        case BasisLabel::SigmaZ: return "SigmaZ";
        case BasisLabel::Intermediate: return "Intermediate";
    }
    return "?";
}

const char* to_string(TransitionKind kind) {
    switch (kind) {
        case TransitionKind::Sudden: return "Sudden";
        case TransitionKind::Continuous: return "Continuous";
        case TransitionKind::Indeterminate: return "Indeterminate";
    }
    return "?";
}

const char* to_string(ChenLabel label) {
    switch (label) {
        case ChenLabel::SigmaZOptimal: return "SigmaZOptimal";
        case ChenLabel::SigmaXOptimal: return "SigmaXOptimal";
        case ChenLabel::Both: return "Both";
        case ChenLabel::Neither: return "Neither";
    }
    return "?";
}

std::vector<TrajectoryPoint> evolve_trajectory(const DensityMatrix4& state0,
                                               const DephasingChannel& ch,
                                               const std::vector<double>& nu_grid,
                                               const OptimizerOptions& opts) {
    return evolve_impl(state0, ch, nu_grid, opts, true);
}

std::vector<TrajectoryPoint> evolve_trajectory_serial(
    const DensityMatrix4& state0, const DephasingChannel& ch,
    const std::vector<double>& nu_grid, const OptimizerOptions& opts) {
    return evolve_impl(state0, ch, nu_grid, opts, false);
}

TransitionReport detect_transitions(const DensityMatrix4& state0,
                                    const DephasingChannel& ch, double nu_max,
                                    double initial_step, int max_depth,
                                    const OptimizerOptions& opts) {
    if (!(nu_max > 0.0))
        throw std::invalid_argument("detect_transitions: nu_max must be > 0");
    if (!(initial_step > 0.0))
        throw std::invalid_argument(
            "detect_transitions: initial_step must be > 0");
    if (max_depth < 1)
        throw std::invalid_argument("detect_transitions: max_depth must be >= 1");

    const long long n = std::max<long long>(1, std::llround(nu_max / initial_step));
    std::vector<double> grid(static_cast<std::size_t>(n) + 1);
    for (long long i = 0; i <= n; ++i)
        grid[static_cast<std::size_t>(i)] =
            nu_max * static_cast<double>(i) / static_cast<double>(n);

    std::vector<TrajectoryPoint> pts = evolve_trajectory(state0, ch, grid, opts);

    TransitionReport report;

    // Event regions: maximal runs of adjacent pairs still jumping above the
    // continuity threshold that contain at least one trigger-level jump.
    struct Region {
        std::size_t lo, hi;  // point indices, pairs lo..hi-1
    };
    std::vector<Region> regions;
    const std::size_t npts = pts.size();
    std::size_t i = 0;
    while (i + 1 < npts) {
        const double jump = std::abs(pts[i + 1].theta_star - pts[i].theta_star);
        if (jump <= kContinuityTol) {
            ++i;
            continue;
        }
        std::size_t lo = i;
        bool triggered = false;
        while (i + 1 < npts &&
               std::abs(pts[i + 1].theta_star - pts[i].theta_star) >
                   kContinuityTol) {
            if (std::abs(pts[i + 1].theta_star - pts[i].theta_star) >
                kSuddenJumpTol)
                triggered = true;
            ++i;
        }
        if (triggered) regions.push_back({lo, i});
    }

    for (const Region& reg : regions) {
        std::vector<TrajectoryPoint> local(pts.begin() + reg.lo,
                                           pts.begin() + reg.hi + 1);
        TransitionEvent ev;

        auto max_jump = [&]() {
            double worst = 0.0;
            for (std::size_t k = 0; k + 1 < local.size(); ++k)
                worst = std::max(worst, std::abs(local[k + 1].theta_star -
                                                 local[k].theta_star));
            return worst;
        };
        ev.max_jump_by_depth.push_back(max_jump());

        int depth = 0;
        while (depth < max_depth) {
            std::vector<double> mids;
            for (std::size_t k = 0; k + 1 < local.size(); ++k) {
                const double width = local[k + 1].nu - local[k].nu;
                const double jump =
                    std::abs(local[k + 1].theta_star - local[k].theta_star);
                if (jump > kContinuityTol && width > kNuFloor)
                    mids.push_back(0.5 * (local[k].nu + local[k + 1].nu));
            }
            if (mids.empty()) break;
            ++depth;

            std::vector<TrajectoryPoint> refined(mids.size());
            const long long m = static_cast<long long>(mids.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
            for (long long k = 0; k < m; ++k)
                refined[static_cast<std::size_t>(k)] = eval_point(
                    state0, ch, mids[static_cast<std::size_t>(k)], opts);

            local.insert(local.end(), refined.begin(), refined.end());
            std::sort(local.begin(), local.end(),
                      [](const TrajectoryPoint& a, const TrajectoryPoint& b) {
                          return a.nu < b.nu;
                      });
            ev.max_jump_by_depth.push_back(max_jump());
        }
        ev.refinement_depth = depth;

        // Locate the worst surviving pair.
        double worst = -1.0;
        std::size_t worst_k = 0;
        for (std::size_t k = 0; k + 1 < local.size(); ++k) {
            const double jump =
                std::abs(local[k + 1].theta_star - local[k].theta_star);
            if (jump > worst) {
                worst = jump;
                worst_k = k;
            }
        }
        ev.theta_jump = worst;
        ev.nu_left = local[worst_k].nu;
        ev.nu_right = local[worst_k + 1].nu;

        const double width = ev.nu_right - ev.nu_left;
        if (worst >= kSuddenJumpTol && width <= kNuFloor)
            ev.kind = TransitionKind::Sudden;
        else if (worst < kContinuityTol)
            ev.kind = TransitionKind::Continuous;
        else
            ev.kind = TransitionKind::Indeterminate;

        // One-sided discord slopes straddling the bracket, kept clear of the
        // event itself.
        const double h = kSlopeStep;
        const double xl = std::max(ev.nu_left, 2.0 * h);
        ev.left_slope = (discord_at(state0, ch, xl, opts) -
                         discord_at(state0, ch, xl - 2.0 * h, opts)) /
                        (2.0 * h);
        ev.right_slope = (discord_at(state0, ch, ev.nu_right + 2.0 * h, opts) -
                          discord_at(state0, ch, ev.nu_right, opts)) /
                         (2.0 * h);
        report.derivative_gap = std::max(
            report.derivative_gap, std::abs(ev.left_slope - ev.right_slope));

        report.events.push_back(std::move(ev));

        // Fold refined points back into the full scan.
        pts.insert(pts.end(), local.begin(), local.end());
    }

    std::sort(pts.begin(), pts.end(),
              [](const TrajectoryPoint& a, const TrajectoryPoint& b) {
                  return a.nu < b.nu;
              });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const TrajectoryPoint& a, const TrajectoryPoint& b) {
                              return a.nu == b.nu;
                          }),
              pts.end());
    report.points = std::move(pts);
    return report;
}

std::vector<ThetaObjectivePoint> scan_basis(const DensityMatrix4& state,
                                            const std::vector<double>& theta_grid) {
    std::vector<ThetaObjectivePoint> out(theta_grid.size());
    const long long n = static_cast<long long>(theta_grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < n; ++i) {
        const double theta = theta_grid[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] = {
            theta, classical_correlation_at(state, {theta, 0.0})};
    }
    return out;
}

namespace {

// When one of the optimum values sits within this of the global maximum, the
// corresponding basis is treated as attaining it.
constexpr double kEndpointValueTol = 5e-7;

}  // namespace

ChenClass chen_classify(const XStateParams& p) {
    validate_xstate(p);
    ChenClass out;
    double r03 = p.r03;
    // Standing assumption |r12 + r03| >= |r12 - r03|; a local phase flip of
    // r03 restores it and changes none of the magnitudes below.
    if (p.r12 * r03 < 0.0) {
        r03 = -r03;
        out.r03_flipped = true;
    }

    const double coh = std::abs(p.r12) + std::abs(r03);
    out.sigma_z_lhs = coh * coh;
    // Diagonal differences are paired within the measured qubit's outcome
    // blocks: measuring B groups {p00, p22} and {p33, p11}. (The pairing
    // only matters off the p11 = p22 symmetry plane, where both conventions
    // coincide.)
    out.sigma_z_rhs = (p.p00 - p.p22) * (p.p33 - p.p11);
    out.sigma_x_lhs =
        std::abs(std::sqrt(p.p00 * p.p33) - std::sqrt(p.p11 * p.p22));
    out.sigma_x_rhs = coh;

    bool z_opt = out.sigma_z_lhs <= out.sigma_z_rhs;
    bool x_opt = out.sigma_x_lhs <= out.sigma_x_rhs;

    if (!z_opt && !x_opt) {
        // The inequalities are sufficient conditions only: plenty of states
        // satisfy neither yet still have a sigma_z or sigma_x optimum. Decide
        // the gap region by where the optimum actually lands, so Neither is
        // reserved for genuinely interior optima.
        XStateParams norm = p;
        norm.r03 = r03;
        const DensityMatrix4 rho = xstate_to_density(norm);
        const double best = classical_correlation(rho).value;
        z_opt = best - classical_correlation_at(rho, {0.0, 0.0}) <=
                kEndpointValueTol;
        x_opt = best - classical_correlation_at(
                           rho, {0.25 * std::numbers::pi, 0.0}) <=
                kEndpointValueTol;
    }

    if (z_opt && x_opt)
        out.label = ChenLabel::Both;
    else if (z_opt)
        out.label = ChenLabel::SigmaZOptimal;
    else if (x_opt)
        out.label = ChenLabel::SigmaXOptimal;
    else
        out.label = ChenLabel::Neither;
    return out;
}

bool sudden_capable(const XStateParams& p, double tol) {
    return std::abs(p.p00 * p.p22 - p.p11 * p.p33) <= tol;
}

namespace {

SurveyReport survey_impl(long long n, const SampleSeed& seed, double tol,
                         bool parallel) {
    if (n < 1)
        throw std::invalid_argument("random_survey: n must be >= 1");
    SurveyReport rep;
    rep.seed = seed;
    rep.n = n;

    long long capable = 0, sz = 0, sx = 0, both = 0, neither = 0;
    std::array<long long, kSurveyHistogramBins> hist{};

#ifdef _OPENMP
#pragma omp parallel if (parallel)
#endif
    {
        long long l_capable = 0, l_sz = 0, l_sx = 0, l_both = 0, l_neither = 0;
        std::array<long long, kSurveyHistogramBins> l_hist{};

#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (long long i = 0; i < n; ++i) {
            const XStateParams p = sample_random_xstate(
                {seed.seed, seed.stream + static_cast<std::uint64_t>(i)});
            if (sudden_capable(p, tol)) ++l_capable;
            switch (chen_classify(p).label) {
                case ChenLabel::SigmaZOptimal: ++l_sz; break;
                case ChenLabel::SigmaXOptimal: ++l_sx; break;
                case ChenLabel::Both: ++l_both; break;
                case ChenLabel::Neither: ++l_neither; break;
            }
            const double gap = std::abs(p.p00 * p.p22 - p.p11 * p.p33);
            int bin = static_cast<int>(gap / 0.25 * kSurveyHistogramBins);
            bin = std::clamp(bin, 0, kSurveyHistogramBins - 1);
            ++l_hist[static_cast<std::size_t>(bin)];
        }

#ifdef _OPENMP
#pragma omp critical
#endif
        {
            capable += l_capable;
            sz += l_sz;
            sx += l_sx;
            both += l_both;
            neither += l_neither;
            for (int b = 0; b < kSurveyHistogramBins; ++b)
                hist[static_cast<std::size_t>(b)] +=
                    l_hist[static_cast<std::size_t>(b)];
        }
    }
    (void)parallel;

    rep.n_sudden_capable = capable;
    rep.n_sigma_z = sz;
    rep.n_sigma_x = sx;
    rep.n_both = both;
    rep.n_neither = neither;
    rep.capability_gap_histogram = hist;
    return rep;
}

}  // namespace

SurveyReport random_survey(long long n, const SampleSeed& seed, double tol) {
    return survey_impl(n, seed, tol, true);
}

SurveyReport random_survey_serial(long long n, const SampleSeed& seed,
                                  double tol) {
    return survey_impl(n, seed, tol, false);
}

}  // namespace discordlab
