#include "discordlab/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace discordlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOutcomeFloor = 1e-12;   // p_k below this is a null outcome
constexpr double kThetaGridStep = kPi / 360.0;
constexpr double kPhiGridStep = kPi / 18.0;
// Degenerate-maximum window. Must sit well below the interior-maximum
// prominence of near-critical states (~1e-10 for epsilon = 0.02 passages),
// or tie-breaking would snap a genuinely interior optimum to the sigma_z
// plateau and blur sudden-vs-continuous tracking; it also has to stay above
// evaluation rounding (~1e-16) so exactly degenerate plateaus still tie.
constexpr double kValueTieTol = 1e-14;
constexpr double kGssWidthTol = 1e-9;     // bracket width at termination
constexpr double kRoundImprovementTol = 1e-12;

void check_basis(const MeasurementBasis& b) {
    if (!(b.theta >= 0.0 && b.theta <= kPi))
        throw std::invalid_argument("MeasurementBasis: theta outside [0, pi]");
    if (!(b.phi >= 0.0 && b.phi <= 2.0 * kPi))
        throw std::invalid_argument("MeasurementBasis: phi outside [0, 2 pi]");
}

// |pi1><pi1| and |pi2><pi2| on B.
std::array<ComplexMatrix, 2> basis_projectors(const MeasurementBasis& b) {
    const double c = std::cos(b.theta);
    const double s = std::sin(b.theta);
    const cxd ephi = std::polar(1.0, b.phi);
    const cxd v1[2] = {c, ephi * s};
    const cxd v2[2] = {s, -ephi * c};

    std::array<ComplexMatrix, 2> proj = {ComplexMatrix(2), ComplexMatrix(2)};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            proj[0](i, j) = v1[i] * std::conj(v1[j]);
            proj[1](i, j) = v2[i] * std::conj(v2[j]);
        }
    return proj;
}

std::array<ConditionalOutcome, 2> measure_matrix(const ComplexMatrix& rho,
                                                 const MeasurementBasis& b) {
    const auto proj = basis_projectors(b);
    std::array<ConditionalOutcome, 2> out;
    for (int k = 0; k < 2; ++k) {
        const ComplexMatrix pk = kron(ComplexMatrix::identity(2), proj[k]);
        const ComplexMatrix sandwiched = pk * rho * pk;
        const double p = std::real(sandwiched.trace());
        out[k].k = k + 1;
        out[k].probability = p;
        if (p > kOutcomeFloor) {
            out[k].state = (1.0 / p) * partial_trace(sandwiched, Subsystem::A);
        } else {
            out[k].state = 0.5 * ComplexMatrix::identity(2);
        }
    }
    return out;
}

// Entropy of a 2x2 Hermitian state without the density-matrix ceremony of
// von_neumann_entropy; used only on conditional states that are normalized
// by construction.
double entropy2(const ComplexMatrix& m) {
    const double a = std::real(m(0, 0));
    const double d = std::real(m(1, 1));
    const double w = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
    const double mean = 0.5 * (a + d);
    double s = 0.0;
    for (double lambda : {mean + w, mean - w})
        if (lambda > 0.0) s -= lambda * std::log2(lambda);
    return s;
}

double objective(const ComplexMatrix& rho, double s_a,
                 const MeasurementBasis& b) {
    const auto outcomes = measure_matrix(rho, b);
    double cond = 0.0;
    for (const auto& o : outcomes)
        if (o.probability > kOutcomeFloor)
            cond += o.probability * entropy2(o.state);
    return s_a - cond;
}

bool is_real_x(const ComplexMatrix& m) {
    const double tol = 1e-10;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const bool on_x = (i == j) || (i + j == 3);
            if (!on_x && std::abs(m(i, j)) > tol) return false;
        }
    return std::abs(std::imag(m(0, 3))) <= tol &&
           std::abs(std::imag(m(1, 2))) <= tol;
}

struct Candidate {
    double theta = 0.0;
    double phi = 0.0;
    double value = 0.0;
};

// Golden-section maximization over [lo, hi] at fixed phi; returns the best
// evaluated point (never an extrapolation, so plateaus stay safe).
template <typename F>
Candidate golden_max_theta(F&& f, double lo, double hi, double phi) {
    constexpr double invphi = 0.6180339887498949;
    auto eval = [&](double x) { return f(x, phi); };
    Candidate best{lo, phi, eval(lo)};
    auto consider = [&](double x, double v) {
        if (v > best.value) best = {x, phi, v};
    };
    {
        const double vhi = eval(hi);
        consider(hi, vhi);
    }
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = eval(x1), f2 = eval(x2);
    consider(x1, f1);
    consider(x2, f2);
    int guard = 0;
    while (hi - lo > kGssWidthTol && ++guard < 200) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = eval(x2);
            consider(x2, f2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = eval(x1);
            consider(x1, f1);
        }
    }
    return best;
}

double wrap_phi(double phi) {
    double w = std::fmod(phi, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    return w;
}

}  // namespace

double mutual_information(const DensityMatrix4& rho) {
    const double s_a = von_neumann_entropy(partial_trace(rho, Subsystem::A));
    const double s_b = von_neumann_entropy(partial_trace(rho, Subsystem::B));
    const double s_ab = von_neumann_entropy(rho.matrix());
    return s_a + s_b - s_ab;
}

std::array<ConditionalOutcome, 2> measure_on_B(const DensityMatrix4& rho,
                                               const MeasurementBasis& basis) {
    check_basis(basis);
    return measure_matrix(rho.matrix(), basis);
}

double classical_correlation_at(const DensityMatrix4& rho,
                                const MeasurementBasis& basis) {
    check_basis(basis);
    const double s_a = von_neumann_entropy(partial_trace(rho, Subsystem::A));
    return objective(rho.matrix(), s_a, basis);
}

ClassicalCorrelationResult classical_correlation(const DensityMatrix4& rho,
                                                 const OptimizerOptions& opts) {
    const ComplexMatrix& orig = rho.matrix();
    const double s_a = von_neumann_entropy(partial_trace(orig, Subsystem::A));

    // Real X states: the objective depends on phi only through
    // |e^{i phi} rho03 + e^{-i phi} rho12|^2, maximal at phi = 0 once
    // r03 r12 >= 0. When the product is negative, flipping the sign of r03
    // (the local phase diag(1,i) (x) diag(1,i)) restores that normal form;
    // the same measurement on the original state sits at phi = pi/2.
    bool flipped = false;
    ComplexMatrix work = orig;
    const bool fast_path = !opts.force_full_phi_scan && is_real_x(orig);
    if (fast_path &&
        std::real(orig(0, 3)) * std::real(orig(1, 2)) < 0.0) {
        flipped = true;
        work(0, 3) = -work(0, 3);
        work(3, 0) = -work(3, 0);
    }
    const double report_phi = flipped ? 0.5 * kPi : 0.0;

    ClassicalCorrelationResult result;
    auto eval = [&](double theta, double phi) {
        return objective(work, s_a, {theta, phi});
    };
    // Evaluations are logged against the basis that realizes them on the
    // *input* state.
    auto log_eval = [&](double theta, double phi, double value) {
        result.trace.push_back({{theta, wrap_phi(phi)}, value});
    };

    std::vector<Candidate> candidates;
    const int n_theta = 180;  // theta = i * pi/360, i = 0..180

    if (fast_path) {
        // The projector pair at (pi/2 - theta, phi + pi) is the same pair
        // reordered, so on the phi = 0 section the objective is symmetric
        // about pi/4 and the upper branch [pi/4, pi/2] carries every
        // maximum. Scanning only it keeps the reported theta* on the branch
        // that runs pi/4 -> pi/2 and removes mirror-twin ties.
        std::vector<Candidate> grid;
        grid.reserve(n_theta / 2 + 1);
        for (int i = n_theta / 2; i <= n_theta; ++i) {
            const double theta = i * kThetaGridStep;
            const double v = eval(theta, 0.0);
            log_eval(theta, report_phi, v);
            grid.push_back({theta, report_phi, v});
        }
        candidates = grid;

        // Refine around the three best grid cells.
        std::vector<Candidate> top = grid;
        std::sort(top.begin(), top.end(),
                  [](const Candidate& a, const Candidate& b) {
                      return a.value > b.value;
                  });
        top.resize(std::min<std::size_t>(3, top.size()));
        for (const auto& cell : top) {
            const double lo = std::max(0.25 * kPi, cell.theta - kThetaGridStep);
            const double hi = std::min(0.5 * kPi, cell.theta + kThetaGridStep);
            Candidate c = golden_max_theta(
                [&](double th, double ph) {
                    const double v = eval(th, ph);
                    log_eval(th, report_phi, v);
                    return v;
                },
                lo, hi, 0.0);
            c.phi = report_phi;
            candidates.push_back(c);
        }
    } else {
        const int n_phi = 36;  // phi = j * pi/18, j = 0..35
        std::vector<Candidate> grid;
        grid.reserve((n_theta + 1) * n_phi);
        for (int i = 0; i <= n_theta; ++i)
            for (int j = 0; j < n_phi; ++j) {
                const double theta = i * kThetaGridStep;
                const double phi = j * kPhiGridStep;
                const double v = eval(theta, phi);
                log_eval(theta, phi, v);
                grid.push_back({theta, phi, v});
            }
        candidates = grid;

        std::vector<Candidate> top = grid;
        std::sort(top.begin(), top.end(),
                  [](const Candidate& a, const Candidate& b) {
                      return a.value > b.value;
                  });
        top.resize(std::min<std::size_t>(3, top.size()));
        for (auto cur : top) {
            // Alternate 1-d refinements until a round stops paying.
            for (int round = 0; round < 8; ++round) {
                const double before = cur.value;
                {
                    const double lo = std::max(0.0, cur.theta - kThetaGridStep);
                    const double hi =
                        std::min(0.5 * kPi, cur.theta + kThetaGridStep);
                    Candidate c = golden_max_theta(
                        [&](double th, double ph) {
                            const double v = eval(th, ph);
                            log_eval(th, ph, v);
                            return v;
                        },
                        lo, hi, cur.phi);
                    if (c.value >= cur.value) cur = c;
                }
                {
                    Candidate c = golden_max_theta(
                        [&](double ph, double) {
                            const double v = eval(cur.theta, ph);
                            log_eval(cur.theta, ph, v);
                            return v;
                        },
                        cur.phi - kPhiGridStep, cur.phi + kPhiGridStep, 0.0);
                    if (c.value >= cur.value)
                        cur = {cur.theta, wrap_phi(c.theta), c.value};
                }
                if (cur.value - before < kRoundImprovementTol) break;
            }
            candidates.push_back(cur);
        }
    }

    // Degenerate maxima: largest theta wins, then smallest phi.
    double vmax = candidates.front().value;
    for (const auto& c : candidates) vmax = std::max(vmax, c.value);
    const Candidate* best = nullptr;
    for (const auto& c : candidates) {
        if (c.value < vmax - kValueTieTol) continue;
        if (!best || c.theta > best->theta + 1e-12 ||
            (std::abs(c.theta - best->theta) <= 1e-12 && c.phi < best->phi))
            best = &c;
    }

    result.value = best->value;
    result.optimal_basis = {best->theta, best->phi};
    return result;
}

CorrelationBreakdown quantum_discord(const DensityMatrix4& rho,
                                     const OptimizerOptions& opts) {
    CorrelationBreakdown out;
    out.mutual_info = mutual_information(rho);
    ClassicalCorrelationResult cc = classical_correlation(rho, opts);
    out.classical = cc.value;
    out.discord = out.mutual_info - out.classical;
    out.optimal_basis = cc.optimal_basis;
    out.optimizer_trace = std::move(cc.trace);
    return out;
}

}  // namespace discordlab
