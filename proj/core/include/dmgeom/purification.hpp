#pragma once

#include <cstddef>

#include "dmgeom/core.hpp"

namespace dmgeom {

inline constexpr double kDefaultTraceMatchTol = 1e-8;

/// psi = sum_k coefficients[k] * basis_a.col(k) (x) basis_b.col(k), with
/// exactly mu strictly positive, descending coefficients.
struct SchmidtDecomposition {
    std::size_t mu = 0;
    RealVector coefficients;
    ComplexMatrix basis_a;  // N x mu, orthonormal columns
    ComplexMatrix basis_b;  // N x mu, orthonormal columns
};

/// Canonical purification sum_i sqrt(lambda_i) |v_i>_A |i>_B, where v_i are the
/// spectral_decompose eigenvectors and |i>_B is the computational basis.
PureState purify(const DensityMatrix& rho);

/// Tr_B |psi><psi| = C C^dagger for the coefficient matrix C.
DensityMatrix partial_trace_b(const PureState& psi);

/// SVD of the coefficient matrix. The A-side vectors follow the phase
/// convention of spectral_decompose; B-side vectors are conjugated right
/// singular vectors so that the sum reconstructs psi. The rank counts squared
/// coefficients, matching numerical_rank of the reduced density matrix.
SchmidtDecomposition schmidt(const PureState& psi, double tol = kDefaultRankTol);

std::size_t schmidt_number(const PureState& psi, double tol = kDefaultRankTol);

/// (I (x) v)|psi>, i.e. C -> C v^T.
PureState apply_local_b(const PureState& psi, const Unitary& v);

/// (r (x) I)|psi>, i.e. C -> r C.
PureState apply_local_a(const PureState& psi, const Unitary& r);

/// Returns v in SU(N) with (I (x) v)|psi> equal to |phi> up to global phase.
///
/// Both coefficient matrices share the positive polar factor P = sqrt(rho),
/// so C_psi = P W_psi and C_phi = P W_phi with unitary W taken from full SVDs.
/// Then v^T = W_psi^dagger W_phi. Because the SVDs are full, kernel directions
/// of rank-deficient states are matched basis-to-basis, and degenerate
/// coefficients or complex phases need no special handling. The result is
/// divided by the principal N-th root of its determinant.
///
/// Throws PartialTraceMismatch if the two reduced states differ by more than
/// tol in any entry.
Unitary connecting_unitary(const PureState& psi, const PureState& phi, double tol = kDefaultTraceMatchTol);

}  // namespace dmgeom
