#include "discordlab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace discordlab {

namespace {

void require_dim(int dim) {
    if (dim != 2 && dim != 4)
        throw std::invalid_argument("ComplexMatrix: dim must be 2 or 4, got " +
                                    std::to_string(dim));
}

void require_same_dim(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.dim() != y.dim())
        throw std::invalid_argument("ComplexMatrix: dimension mismatch");
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) { require_dim(dim); }

cxd ComplexMatrix::trace() const {
    cxd t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

double ComplexMatrix::hermiticity_defect() const {
    double worst = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            worst = std::max(worst,
                             std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix r(dim);
    for (int i = 0; i < dim; ++i) r(i, i) = 1.0;
    return r;
}

ComplexMatrix ComplexMatrix::pauli(int k) {
    ComplexMatrix r(2);
    switch (k) {
        case 1:
            r(0, 1) = 1.0;
            r(1, 0) = 1.0;
            break;
        case 2:
            r(0, 1) = cxd(0.0, -1.0);
            r(1, 0) = cxd(0.0, 1.0);
            break;
        case 3:
            r(0, 0) = 1.0;
            r(1, 1) = -1.0;
            break;
        default:
            throw std::invalid_argument("pauli: index must be 1, 2 or 3");
    }
    return r;
}

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
    require_same_dim(x, y);
    ComplexMatrix r(x.dim());
    for (int i = 0; i < x.dim(); ++i)
        for (int j = 0; j < x.dim(); ++j) r(i, j) = x(i, j) + y(i, j);
    return r;
}

ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
    require_same_dim(x, y);
    ComplexMatrix r(x.dim());
    for (int i = 0; i < x.dim(); ++i)
        for (int j = 0; j < x.dim(); ++j) r(i, j) = x(i, j) - y(i, j);
    return r;
}

ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
    require_same_dim(x, y);
    const int n = x.dim();
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cxd xik = x(i, k);
            if (xik == cxd(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

ComplexMatrix operator*(cxd s, const ComplexMatrix& x) {
    ComplexMatrix r(x.dim());
    for (int i = 0; i < x.dim(); ++i)
        for (int j = 0; j < x.dim(); ++j) r(i, j) = s * x(i, j);
    return r;
}

double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
    require_same_dim(x, y);
    double worst = 0.0;
    for (int i = 0; i < x.dim(); ++i)
        for (int j = 0; j < x.dim(); ++j)
            worst = std::max(worst, std::abs(x(i, j) - y(i, j)));
    return worst;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2)
        throw std::invalid_argument("kron: both operands must be 2x2");
    ComplexMatrix r(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem keep) {
    if (m.dim() != 4)
        throw std::invalid_argument("partial_trace: input must be 4x4");
    ComplexMatrix r(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                r(i, j) += (keep == Subsystem::A) ? m(2 * i + k, 2 * j + k)
                                                  : m(2 * k + i, 2 * k + j);
    return r;
}

namespace {

// Eigenvalues of the Hermitian 2x2 block [[a, b], [conj(b), d]].
std::array<double, 2> herm2_eigenvalues(double a, double d, cxd b) {
    const double mean = 0.5 * (a + d);
    const double w = std::hypot(0.5 * (a - d), std::abs(b));
    return {mean + w, mean - w};
}

double off_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

}  // namespace

std::vector<double> eig_hermitian(const ComplexMatrix& m) {
    const double defect = m.hermiticity_defect();
    if (defect > kHermitianTol)
        throw std::invalid_argument(
            "eig_hermitian: input not Hermitian, defect " +
            std::to_string(defect));

    if (m.dim() == 2) {
        auto ev = herm2_eigenvalues(std::real(m(0, 0)), std::real(m(1, 1)),
                                    m(0, 1));
        return {ev[0], ev[1]};
    }

    // Symmetrize away the sub-tolerance defect, then run cyclic Jacobi
    // sweeps with complex rotations until the off-diagonal norm is gone.
    ComplexMatrix a(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    constexpr int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps && off_norm(a) > kJacobiOffTol;
         ++sweep) {
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const cxd b = a(p, q);
                const double r = std::abs(b);
                if (r == 0.0) continue;
                const double app = std::real(a(p, p));
                const double aqq = std::real(a(q, q));
                // Unitary U with U(p,p)=U(q,q)=c, U(p,q)=-s e^{i beta},
                // U(q,p)=s e^{-i beta} zeroes (U^dag A U)(p,q) when
                // tan(2 theta) = 2r / (app - aqq).
                const double theta = 0.5 * std::atan2(2.0 * r, app - aqq);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                const cxd phase = b / r;  // e^{i beta}

                for (int k = 0; k < 4; ++k) {
                    if (k == p || k == q) continue;
                    const cxd akp = a(k, p);
                    const cxd akq = a(k, q);
                    a(k, p) = akp * c + akq * s * std::conj(phase);
                    a(k, q) = akq * c - akp * s * phase;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                a(p, p) = app * c * c + 2.0 * c * s * r + aqq * s * s;
                a(q, q) = app * s * s - 2.0 * c * s * r + aqq * c * c;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<double> ev = {std::real(a(0, 0)), std::real(a(1, 1)),
                              std::real(a(2, 2)), std::real(a(3, 3))};
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

std::array<double, 4> x_block_eigenvalues(const ComplexMatrix& m) {
    if (m.dim() != 4)
        throw std::invalid_argument("x_block_eigenvalues: input must be 4x4");
    const auto outer = herm2_eigenvalues(std::real(m(0, 0)),
                                         std::real(m(3, 3)), m(0, 3));
    const auto inner = herm2_eigenvalues(std::real(m(1, 1)),
                                         std::real(m(2, 2)), m(1, 2));
    std::array<double, 4> ev = {outer[0], outer[1], inner[0], inner[1]};
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

double von_neumann_entropy(const ComplexMatrix& m) {
    const double tr_dev = std::abs(m.trace() - cxd(1.0, 0.0));
    if (tr_dev > 1e-10)
        throw InvalidStateError(
            "von_neumann_entropy: trace deviates from 1 by " +
                std::to_string(tr_dev),
            {StateViolation::Kind::Trace, tr_dev});

    const auto ev = eig_hermitian(m);
    double s = 0.0;
    for (double lambda : ev) {
        if (lambda < -kPsdTol)
            throw InvalidStateError(
                "von_neumann_entropy: negative eigenvalue " +
                    std::to_string(lambda),
                {StateViolation::Kind::Positivity, -lambda});
        if (lambda <= 0.0) continue;  // clamped: 0 log 0 = 0
        s -= lambda * std::log2(lambda);
    }
    return s;
}

DensityCheck check_density(const ComplexMatrix& m) {
    DensityCheck r;
    if (m.dim() != 4)
        throw std::invalid_argument("check_density: input must be 4x4");

    const double tr_dev = std::abs(m.trace() - cxd(1.0, 0.0));
    if (tr_dev > kTraceTol) {
        r.violation = {StateViolation::Kind::Trace, tr_dev};
        return r;
    }
    const double herm_dev = m.hermiticity_defect();
    if (herm_dev > kHermitianTol) {
        r.violation = {StateViolation::Kind::Hermiticity, herm_dev};
        return r;
    }
    const auto ev = eig_hermitian(m);
    const double lambda_min = ev.back();
    if (lambda_min < -kPsdTol) {
        r.violation = {StateViolation::Kind::Positivity, -lambda_min};
        return r;
    }
    r.ok = true;
    return r;
}

DensityMatrix4 validate_density(const ComplexMatrix& m) {
    const DensityCheck chk = check_density(m);
    if (!chk.ok) {
        const char* what = "";
        switch (chk.violation.kind) {
            case StateViolation::Kind::Trace: what = "trace"; break;
            case StateViolation::Kind::Hermiticity: what = "hermiticity"; break;
            case StateViolation::Kind::Positivity: what = "positivity"; break;
        }
        throw InvalidStateError("validate_density: " + std::string(what) +
                                    " violated by " +
                                    std::to_string(chk.violation.deviation),
                                chk.violation);
    }
    return DensityMatrix4(m);
}

}  // namespace discordlab
