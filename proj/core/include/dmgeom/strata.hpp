#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "dmgeom/core.hpp"

namespace dmgeom {

inline constexpr double kDefaultTangentTol = 1e-8;
inline constexpr double kTangentGapRatio = 1e6;
inline constexpr double kGenericSpectrumGap = 1e-8;
inline constexpr double kBallSlack = 1e-10;

struct StratumInfo {
    std::size_t n = 0;
    std::size_t mu = 0;
    std::size_t stabilizer_dim = 0;
    std::size_t stratum_dim = 0;
    bool is_pure = false;
    bool is_full_rank = false;
};

struct ConvexSplit {
    std::vector<double> weights;
    std::vector<DensityMatrix> components;  // each of rank mu - 1
};

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
};

/// Real dimension of the rank-mu stratum of N x N density matrices: mu(2N - mu) - 1.
std::size_t stratum_dimension(std::size_t n, std::size_t mu);

/// Real dimension (N - mu)^2 of the stabilizer U(N - mu).
std::size_t stabilizer_dimension(std::size_t n, std::size_t mu);

StratumInfo classify(const DensityMatrix& rho, double tol = kDefaultRankTol);

/// Numerical dimension of the stratum through rho.
///
/// Spans the rank-preserving first-order motions of rho: the N^2 - 1 unitary
/// directions i[H, rho] over a traceless Hermitian basis, plus mu - 1 spectral
/// directions that move weight between the nonzero eigenvalues. Each direction
/// is flattened to N^2 reals in a Hilbert-Schmidt isometric coordinate system
/// and the rank of the stack is the count of singular values above
/// tol * sigma_max.
///
/// Requires distinct nonzero eigenvalues (NonGenericSpectrum otherwise).
/// Throws AmbiguousRank if the last kept and first dropped singular values
/// are less than kTangentGapRatio apart.
std::size_t tangent_space_rank(const DensityMatrix& rho, double tol = kDefaultTangentTol,
                               double rank_tol = kDefaultRankTol);

/// rho = sum_k w_k tau_k with tau_k = (rho - l_k P_k) / (1 - l_k) and
/// w_k = (1 - l_k) / (mu - 1) over the mu nonzero eigenpairs.
ConvexSplit convex_split(const DensityMatrix& rho, double tol = kDefaultRankTol);

/// Pauli expectation values; sigma_z |0> = +|0>.
BlochVector bloch_vector(const DensityMatrix& rho);
DensityMatrix density_from_bloch(const BlochVector& r);

/// Adjoint action of a qubit unitary on Bloch vectors:
/// R_ab = Tr(sigma_a u sigma_b u^dagger) / 2.
Eigen::Matrix3d bloch_rotation(const Unitary& u);

/// Hermitian -> R^{N^2}: diagonal entries, then sqrt(2) Re and sqrt(2) Im of
/// the strict upper triangle (row-major). Isometric for the Hilbert-Schmidt
/// inner product.
RealVector flatten_hermitian(const ComplexMatrix& h);

/// The N^2 - 1 generalized Gell-Mann matrices (symmetric, antisymmetric, diagonal).
std::vector<ComplexMatrix> traceless_hermitian_basis(std::size_t n);

}  // namespace dmgeom
