#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "dmgeom/error.hpp"

namespace dmgeom {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultValidationTol = 1e-10;
inline constexpr double kDefaultRankTol = 1e-9;
inline constexpr double kStateNormTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;

class DensityMatrix;
class PureState;
class Unitary;

namespace detail {
// Wraps a matrix already known to be Hermitian, unit-trace and PSD.
DensityMatrix make_density_unchecked(ComplexMatrix m);
PureState make_state_normalized(std::size_t n, ComplexVector amplitudes);
}  // namespace detail

/// Hermitian, positive semidefinite, unit-trace N x N matrix.
/// Obtainable only through validate_density() or library operations that
/// produce such matrices by construction.
class DensityMatrix {
public:
    std::size_t n() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }

    double purity() const;

private:
    explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}
    friend DensityMatrix detail::make_density_unchecked(ComplexMatrix m);

    ComplexMatrix matrix_;
};

/// Unit vector on A (x) B with both factors of dimension n. The amplitude of
/// |i>_A |j>_B lives at flat index i*n + j.
class PureState {
public:
    /// Validates |norm - 1| <= tol and that the length is n*n.
    static PureState from_amplitudes(std::size_t n, ComplexVector amplitudes, double tol = kStateNormTol);

    std::size_t n() const noexcept { return n_; }
    std::size_t dim() const noexcept { return n_ * n_; }
    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }

    /// C[i][j] = amplitude of |i>_A |j>_B.
    ComplexMatrix coefficient_matrix() const;
    static PureState from_coefficient_matrix(const ComplexMatrix& c);

private:
    PureState(std::size_t n, ComplexVector a) : n_(n), amplitudes_(std::move(a)) {}
    friend PureState detail::make_state_normalized(std::size_t n, ComplexVector amplitudes);

    std::size_t n_;
    ComplexVector amplitudes_;
};

class Unitary {
public:
    /// Validates that m is square and U^dagger U is within tol of identity entrywise.
    static Unitary from_matrix(ComplexMatrix m, double tol = kUnitaryTol);
    static Unitary identity(std::size_t n);

    std::size_t n() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }

    Unitary transpose() const { return Unitary(matrix_.transpose()); }
    Unitary adjoint() const { return Unitary(matrix_.adjoint()); }
    Unitary operator-() const { return Unitary(-matrix_); }
    friend Unitary operator*(const Unitary& a, const Unitary& b);

    Complex determinant() const;

private:
    explicit Unitary(ComplexMatrix m) : matrix_(std::move(m)) {}

    ComplexMatrix matrix_;
};

struct SpectralDecomposition {
    RealVector eigenvalues;      // descending
    ComplexMatrix eigenvectors;  // column k pairs with eigenvalues[k]
};

/// Accepts m as a density matrix if it is square, finite, Hermitian within
/// tol, has trace within tol of 1 and no eigenvalue below -tol. The result is
/// symmetrized and renormalized to unit trace.
DensityMatrix validate_density(const ComplexMatrix& m, double tol = kDefaultValidationTol);

/// Eigendecomposition with eigenvalues descending. Each eigenvector's first
/// component of modulus > 1e-8 is real and positive; inside a cluster of
/// eigenvalues closer than 1e-10 the vectors are ordered by descending
/// lexicographic comparison of their real parts.
SpectralDecomposition spectral_decompose(const DensityMatrix& rho);

/// Counts entries > tol * max(max_i values_i, 1).
std::size_t numerical_rank(std::span<const double> values, double tol = kDefaultRankTol);
std::size_t numerical_rank(const RealVector& values, double tol = kDefaultRankTol);

/// sqrt(1 - |<psi|phi>|^2) for the normalized rays; 0 iff equal up to phase.
double ray_distance(const PureState& psi, const PureState& phi);
double ray_distance(const ComplexVector& psi, const ComplexVector& phi);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace dmgeom
