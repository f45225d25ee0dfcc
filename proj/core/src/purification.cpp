#include "dmgeom/purification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "internal.hpp"

namespace dmgeom {

namespace {

void require_same_n(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + ": dimensions " + std::to_string(a) + " and " + std::to_string(b));
    }
}

// Unitary factor W = U V^dagger of the left polar decomposition C = P W.
ComplexMatrix polar_unitary(const ComplexMatrix& c) {
    Eigen::JacobiSVD<ComplexMatrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) {
        throw Error(ErrorCode::DecompositionFailure, "SVD did not converge");
    }
    return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

PureState purify(const DensityMatrix& rho) {
    const SpectralDecomposition spec = spectral_decompose(rho);
    const auto n = static_cast<Eigen::Index>(rho.n());
    // C[i][j] = sum_k sqrt(l_k) v_k[i] delta_{kj}: column k of C is sqrt(l_k) v_k.
    ComplexMatrix c(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        c.col(k) = std::sqrt(std::max(spec.eigenvalues[k], 0.0)) * spec.eigenvectors.col(k);
    }
    return PureState::from_coefficient_matrix(c);
}

DensityMatrix partial_trace_b(const PureState& psi) {
    const ComplexMatrix c = psi.coefficient_matrix();
    ComplexMatrix rho = detail::hermitian_part(c * c.adjoint());
    rho /= rho.trace().real();
    return detail::make_density_unchecked(std::move(rho));
}

SchmidtDecomposition schmidt(const PureState& psi, double tol) {
    Eigen::JacobiSVD<ComplexMatrix> svd(psi.coefficient_matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) {
        throw Error(ErrorCode::DecompositionFailure, "SVD did not converge");
    }
    const RealVector& sv = svd.singularValues();
    const std::size_t mu = numerical_rank(RealVector(sv.array().square()), tol);
    const auto m = static_cast<Eigen::Index>(mu);

    SchmidtDecomposition out;
    out.mu = mu;
    out.coefficients = sv.head(m);
    out.basis_a = svd.matrixU().leftCols(m);
    out.basis_b = svd.matrixV().leftCols(m).conjugate();
    for (Eigen::Index k = 0; k < m; ++k) {
        const Complex phase = detail::canonical_phase(out.basis_a.col(k));
        out.basis_a.col(k) *= phase;
        out.basis_b.col(k) *= std::conj(phase);
    }
    return out;
}

std::size_t schmidt_number(const PureState& psi, double tol) { return schmidt(psi, tol).mu; }

PureState apply_local_b(const PureState& psi, const Unitary& v) {
    require_same_n(psi.n(), v.n(), "apply_local_b");
    return PureState::from_coefficient_matrix(psi.coefficient_matrix() * v.matrix().transpose());
}

PureState apply_local_a(const PureState& psi, const Unitary& r) {
    require_same_n(psi.n(), r.n(), "apply_local_a");
    return PureState::from_coefficient_matrix(r.matrix() * psi.coefficient_matrix());
}

Unitary connecting_unitary(const PureState& psi, const PureState& phi, double tol) {
    require_same_n(psi.n(), phi.n(), "connecting_unitary");
    const ComplexMatrix c_psi = psi.coefficient_matrix();
    const ComplexMatrix c_phi = phi.coefficient_matrix();

    const double mismatch = max_abs_diff(c_psi * c_psi.adjoint(), c_phi * c_phi.adjoint());
    if (mismatch > tol) {
        std::ostringstream msg;
        msg << "reduced states differ by " << std::scientific << mismatch << " (tol " << tol << ")";
        throw Error(ErrorCode::PartialTraceMismatch, msg.str(), mismatch);
    }

    ComplexMatrix v = (polar_unitary(c_psi).adjoint() * polar_unitary(c_phi)).transpose();

    const auto n = static_cast<double>(psi.n());
    const Complex det = v.determinant();
    v /= std::pow(det, 1.0 / n);  // principal root
    return Unitary::from_matrix(std::move(v));
}

}  // namespace dmgeom
