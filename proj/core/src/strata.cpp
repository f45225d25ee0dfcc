#include "dmgeom/strata.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/SVD>

#include "internal.hpp"

namespace dmgeom {

namespace {

void require_rank_in_range(std::size_t n, std::size_t mu) {
    if (mu < 1 || mu > n) {
        throw Error(ErrorCode::RankOutOfRange,
                    "rank " + std::to_string(mu) + " outside [1, " + std::to_string(n) + "]");
    }
}

void require_qubit(std::size_t n) {
    if (n != 2) throw Error(ErrorCode::DimensionNotTwo, "expected a 2x2 operator, got N=" + std::to_string(n));
}

const std::array<ComplexMatrix, 3>& paulis() {
    static const std::array<ComplexMatrix, 3> sigma = [] {
        const Complex i(0.0, 1.0);
        ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
        x << 0.0, 1.0, 1.0, 0.0;
        y << 0.0, -i, i, 0.0;
        z << 1.0, 0.0, 0.0, -1.0;
        return std::array<ComplexMatrix, 3>{x, y, z};
    }();
    return sigma;
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

std::size_t stratum_dimension(std::size_t n, std::size_t mu) {
    require_rank_in_range(n, mu);
    return mu * (2 * n - mu) - 1;
}

std::size_t stabilizer_dimension(std::size_t n, std::size_t mu) {
    require_rank_in_range(n, mu);
    return (n - mu) * (n - mu);
}

StratumInfo classify(const DensityMatrix& rho, double tol) {
    const SpectralDecomposition spec = spectral_decompose(rho);
    StratumInfo info;
    info.n = rho.n();
    info.mu = numerical_rank(spec.eigenvalues, tol);
    if (info.mu == 0) {
        throw Error(ErrorCode::RankOutOfRange, "no eigenvalue above tolerance");
    }
    info.stabilizer_dim = stabilizer_dimension(info.n, info.mu);
    info.stratum_dim = stratum_dimension(info.n, info.mu);
    info.is_pure = info.mu == 1;
    info.is_full_rank = info.mu == info.n;
    return info;
}

RealVector flatten_hermitian(const ComplexMatrix& h) {
    const Eigen::Index n = h.rows();
    RealVector out(n * n);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < n; ++i) out[k++] = h(i, i).real();
    const double root2 = std::sqrt(2.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) out[k++] = root2 * h(i, j).real();
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) out[k++] = root2 * h(i, j).imag();
    }
    return out;
}

std::vector<ComplexMatrix> traceless_hermitian_basis(std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(n);
    std::vector<ComplexMatrix> basis;
    basis.reserve(n * n - 1);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index k = j + 1; k < dim; ++k) {
            ComplexMatrix sym = ComplexMatrix::Zero(dim, dim);
            sym(j, k) = sym(k, j) = 1.0;
            basis.push_back(std::move(sym));

            ComplexMatrix anti = ComplexMatrix::Zero(dim, dim);
            anti(j, k) = Complex(0.0, -1.0);
            anti(k, j) = Complex(0.0, 1.0);
            basis.push_back(std::move(anti));
        }
    }
    for (Eigen::Index l = 1; l < dim; ++l) {
        ComplexMatrix diag = ComplexMatrix::Zero(dim, dim);
        const double scale = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
        for (Eigen::Index m = 0; m < l; ++m) diag(m, m) = scale;
        diag(l, l) = -static_cast<double>(l) * scale;
        basis.push_back(std::move(diag));
    }
    return basis;
}

std::size_t tangent_space_rank(const DensityMatrix& rho, double tol, double rank_tol) {
    const SpectralDecomposition spec = spectral_decompose(rho);
    const std::size_t mu = numerical_rank(spec.eigenvalues, rank_tol);
    const std::size_t n = rho.n();
    require_rank_in_range(n, mu);
    for (std::size_t k = 0; k + 1 < mu; ++k) {
        const double gap = spec.eigenvalues[static_cast<Eigen::Index>(k)] -
                           spec.eigenvalues[static_cast<Eigen::Index>(k + 1)];
        if (gap < kGenericSpectrumGap) {
            std::ostringstream msg;
            msg << "nonzero eigenvalues " << k << " and " << k + 1 << " differ by " << std::scientific << gap;
            throw Error(ErrorCode::NonGenericSpectrum, msg.str(), gap);
        }
    }

    const std::vector<ComplexMatrix> generators = traceless_hermitian_basis(n);
    const auto rows = static_cast<Eigen::Index>(generators.size() + mu - 1);
    const auto cols = static_cast<Eigen::Index>(n * n);
    Eigen::MatrixXd stack(rows, cols);
    Eigen::Index row = 0;

    const Complex i(0.0, 1.0);
    const ComplexMatrix& m = rho.matrix();
    for (const ComplexMatrix& h : generators) {
        stack.row(row++) = flatten_hermitian(i * (h * m - m * h)).transpose();
    }
    const ComplexMatrix& vecs = spec.eigenvectors;
    for (Eigen::Index k = 1; k < static_cast<Eigen::Index>(mu); ++k) {
        const ComplexMatrix move = vecs.col(0) * vecs.col(0).adjoint() - vecs.col(k) * vecs.col(k).adjoint();
        stack.row(row++) = flatten_hermitian(move).transpose();
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack);
    if (svd.info() != Eigen::Success) throw Error(ErrorCode::DecompositionFailure, "SVD did not converge");
    const RealVector& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0) return 0;

    const double threshold = tol * sv[0];
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv[rank] > threshold) ++rank;
    if (rank < sv.size() && sv[rank] > 0.0) {
        const double ratio = sv[rank - 1] / sv[rank];
        if (ratio < kTangentGapRatio) {
            std::ostringstream msg;
            msg << "singular value gap " << std::scientific << ratio << " below " << kTangentGapRatio << " at rank "
                << rank;
            throw Error(ErrorCode::AmbiguousRank, msg.str(), ratio);
        }
    }
    return static_cast<std::size_t>(rank);
}

ConvexSplit convex_split(const DensityMatrix& rho, double tol) {
    const SpectralDecomposition spec = spectral_decompose(rho);
    const std::size_t mu = numerical_rank(spec.eigenvalues, tol);
    if (mu < 2) throw Error(ErrorCode::AlreadyPure, "rank-1 state has no lower stratum");

    ConvexSplit out;
    out.weights.reserve(mu);
    out.components.reserve(mu);
    const double denom = static_cast<double>(mu - 1);
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(mu); ++k) {
        const double lambda = spec.eigenvalues[k];
        const double deficit = 1.0 - lambda;
        if (deficit <= tol) {
            throw Error(ErrorCode::DegenerateTotalWeight, "eigenvalue within tolerance of 1", lambda);
        }
        const auto& v = spec.eigenvectors.col(k);
        const ComplexMatrix tau = (rho.matrix() - lambda * (v * v.adjoint())) / deficit;
        out.components.push_back(validate_density(tau));
        out.weights.push_back(deficit / denom);
    }
    return out;
}

BlochVector bloch_vector(const DensityMatrix& rho) {
    require_qubit(rho.n());
    const auto& s = paulis();
    const ComplexMatrix& m = rho.matrix();
    return {(m * s[0]).trace().real(), (m * s[1]).trace().real(), (m * s[2]).trace().real()};
}

DensityMatrix density_from_bloch(const BlochVector& r) {
    const double norm = r.norm();
    if (!(norm <= 1.0 + kBallSlack)) {
        throw Error(ErrorCode::OutsideBall, "|r| = " + std::to_string(norm) + " exceeds 1", norm);
    }
    const auto& s = paulis();
    ComplexMatrix m = (ComplexMatrix::Identity(2, 2) + r.x * s[0] + r.y * s[1] + r.z * s[2]) * 0.5;
    return detail::make_density_unchecked(std::move(m));
}

Eigen::Matrix3d bloch_rotation(const Unitary& u) {
    require_qubit(u.n());
    const auto& s = paulis();
    const ComplexMatrix& m = u.matrix();
    Eigen::Matrix3d rot;
    for (int b = 0; b < 3; ++b) {
        const ComplexMatrix image = m * s[static_cast<std::size_t>(b)] * m.adjoint();
        for (int a = 0; a < 3; ++a) {
            rot(a, b) = 0.5 * (s[static_cast<std::size_t>(a)] * image).trace().real();
        }
    }
    return rot;
}

}  // namespace dmgeom
