#include "discordlab/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace discordlab {

namespace {

// Half-width of the window around 4*a*tau = 1 treated as critically damped.
constexpr double kCriticalWindow = 1e-12;

}  // namespace

DimensionlessTime::DimensionlessTime(double v) : nu(v) {
    if (!(v >= 0.0))
        throw std::invalid_argument("DimensionlessTime: nu must be >= 0, got " +
                                    std::to_string(v));
}

DephasingChannel::DephasingChannel(double a, double tau) : a_(a), tau_(tau) {
    if (!(a >= 0.0))
        throw std::invalid_argument("DephasingChannel: a must be >= 0");
    if (!(tau > 0.0))
        throw std::invalid_argument("DephasingChannel: tau must be > 0");
}

double DephasingChannel::mu() const {
    const double g = four_a_tau();
    if (g <= 1.0)
        throw std::invalid_argument(
            "DephasingChannel::mu: defined only for 4*a*tau > 1");
    return std::sqrt(g * g - 1.0);
}

double lambda_envelope(const DephasingChannel& ch, DimensionlessTime nu) {
    const double v = nu.nu;
    const double g = ch.four_a_tau();
    const double d = g * g - 1.0;

    if (d > kCriticalWindow) {
        const double mu = std::sqrt(d);
        return std::exp(-v) * (std::cos(mu * v) + std::sin(mu * v) / mu);
    }
    if (d < -kCriticalWindow) {
        // Expanded into pure exponentials so e^-nu cosh(k nu) cannot
        // overflow at large nu.
        const double k = std::sqrt(-d);
        return 0.5 * ((1.0 + 1.0 / k) * std::exp(-(1.0 - k) * v) +
                      (1.0 - 1.0 / k) * std::exp(-(1.0 + k) * v));
    }
    return std::exp(-v) * (1.0 + v);  // mu -> 0 limit
}

std::pair<ComplexMatrix, ComplexMatrix> kraus_ops(const DephasingChannel& ch,
                                                  DimensionlessTime nu) {
    const double lambda = lambda_envelope(ch, nu);
    const double w1 = std::sqrt(std::clamp(0.5 * (1.0 + lambda), 0.0, 1.0));
    const double w2 = std::sqrt(std::clamp(0.5 * (1.0 - lambda), 0.0, 1.0));
    return {w1 * ComplexMatrix::identity(2), w2 * ComplexMatrix::pauli(3)};
}

DensityMatrix4 apply_two_qubit(const DephasingChannel& ch,
                               const DensityMatrix4& rho0,
                               DimensionlessTime nu) {
    const auto [m1, m2] = kraus_ops(ch, nu);
    const ComplexMatrix ops[2] = {m1, m2};

    ComplexMatrix out(4);
    for (const auto& mi : ops)
        for (const auto& mj : ops) {
            const ComplexMatrix k = kron(mi, mj);
            out = out + k * rho0.matrix() * k.adjoint();
        }
    return validate_density(out);
}

std::vector<CoherenceSample> volterra_coherence(const DephasingChannel& ch,
                                                double t_max, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("volterra_coherence: dt must be > 0");
    if (!(t_max > 0.0))
        throw std::invalid_argument("volterra_coherence: t_max must be > 0");

    const double a = ch.a();
    const double inv_tau = 1.0 / ch.tau();
    const double rate = 4.0 * a * a;

    // y = rho01 / rho01(0), z = int_0^t e^-((t-s)/tau) y(s) ds.
    auto fy = [&](double /*y*/, double z) { return -rate * z; };
    auto fz = [&](double y, double z) { return y - inv_tau * z; };

    const long long n = std::llround(std::ceil(t_max / dt - 1e-9));
    std::vector<CoherenceSample> out;
    out.reserve(static_cast<std::size_t>(n) + 1);

    double y = 1.0, z = 0.0;
    out.push_back({0.0, y});
    for (long long i = 0; i < n; ++i) {
        const double k1y = fy(y, z), k1z = fz(y, z);
        const double k2y = fy(y + 0.5 * dt * k1y, z + 0.5 * dt * k1z);
        const double k2z = fz(y + 0.5 * dt * k1y, z + 0.5 * dt * k1z);
        const double k3y = fy(y + 0.5 * dt * k2y, z + 0.5 * dt * k2z);
        const double k3z = fz(y + 0.5 * dt * k2y, z + 0.5 * dt * k2z);
        const double k4y = fy(y + dt * k3y, z + dt * k3z);
        const double k4z = fz(y + dt * k3y, z + dt * k3z);
        y += dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        z += dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
        out.push_back({static_cast<double>(i + 1) * dt, y});
    }
    return out;
}

}  // namespace discordlab
