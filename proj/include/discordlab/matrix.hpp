// Dense complex-matrix kernel for the 2x2 and 4x4 Hermitian operators the
// rest of the library is built on: products, tensor products, partial traces,
// Hermitian eigenvalues (cyclic Jacobi), von Neumann entropy, and
// density-matrix validation.

#pragma once

#include <array>
#include <complex>
#include <vector>

#include "discordlab/errors.hpp"

namespace discordlab {

using cxd = std::complex<double>;

// Elementwise Hermiticity / unit-trace tolerance.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
// Numerical PSD tolerance on the smallest eigenvalue.
inline constexpr double kPsdTol = 1e-10;
// Jacobi sweep target for the off-diagonal Frobenius norm.
inline constexpr double kJacobiOffTol = 1e-14;

// Square complex matrix of dimension 2 or 4, row-major, value semantics.
class ComplexMatrix {
  public:
    explicit ComplexMatrix(int dim);

    int dim() const { return dim_; }

    cxd& operator()(int i, int j) { return a_[i * dim_ + j]; }
    const cxd& operator()(int i, int j) const { return a_[i * dim_ + j]; }

    cxd trace() const;
    ComplexMatrix adjoint() const;

    // max |a_ij - conj(a_ji)| over all elements
    double hermiticity_defect() const;
    bool is_hermitian(double tol = kHermitianTol) const {
        return hermiticity_defect() <= tol;
    }

    static ComplexMatrix identity(int dim);
    static ComplexMatrix pauli(int k);  // sigma_1, sigma_2, sigma_3 (2x2)

  private:
    int dim_;
    std::array<cxd, 16> a_{};  // unused tail stays zero for dim=2
};

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(cxd s, const ComplexMatrix& x);
inline ComplexMatrix operator*(double s, const ComplexMatrix& x) {
    return cxd(s, 0.0) * x;
}

// Largest elementwise |x_ij - y_ij|.
double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y);

// Tensor product of two single-qubit operators; subsystem A is the slow
// (left) index, so the composite basis order is |00>,|01>,|10>,|11>.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct DensityCheck {
    bool ok = false;
    StateViolation violation;  // first failed invariant when !ok
};

class DensityMatrix4;

// Checks trace, Hermiticity and positive semidefiniteness (in that order)
// against the tolerances above without throwing.
DensityCheck check_density(const ComplexMatrix& m);

// Validating constructor for two-qubit states; throws InvalidStateError
// carrying the measured deviation of the first violated invariant.
DensityMatrix4 validate_density(const ComplexMatrix& m);

// A 4x4 matrix that passed validate_density: Hermitian, unit trace,
// eigenvalues >= -kPsdTol.
class DensityMatrix4 {
  public:
    const ComplexMatrix& matrix() const { return m_; }
    const cxd& operator()(int i, int j) const { return m_(i, j); }

  private:
    friend DensityMatrix4 validate_density(const ComplexMatrix&);
    explicit DensityMatrix4(const ComplexMatrix& m) : m_(m) {}
    ComplexMatrix m_;
};

enum class Subsystem { A, B };

// Reduced 2x2 operator of a two-qubit operator (trace over the other qubit).
ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem keep);
inline ComplexMatrix partial_trace(const DensityMatrix4& rho, Subsystem keep) {
    return partial_trace(rho.matrix(), keep);
}

// Real eigenvalues of a Hermitian matrix, sorted descending. dim=2 uses the
// closed form; dim=4 runs cyclic Jacobi sweeps to off-norm kJacobiOffTol.
// Throws std::invalid_argument when the input is not Hermitian within
// kHermitianTol.
std::vector<double> eig_hermitian(const ComplexMatrix& m);

// Closed-form spectrum of an X-shaped 4x4 Hermitian matrix via its two 2x2
// blocks (outer indices {0,3}, inner {1,2}), sorted descending. Kept as an
// independent route against the Jacobi path; does not inspect off-X entries.
std::array<double, 4> x_block_eigenvalues(const ComplexMatrix& m);

// -sum(lambda log2 lambda) in bits, with 0 log 0 := 0 and eigenvalues in
// [-kPsdTol, 0) clamped to 0. Requires unit trace (1e-10) and PSD within
// kPsdTol; violations raise InvalidStateError.
double von_neumann_entropy(const ComplexMatrix& m);

}  // namespace discordlab
