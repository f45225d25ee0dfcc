#include "dmgeom/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "internal.hpp"

namespace dmgeom {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::TraceNotOne: return "TraceNotOne";
        case ErrorCode::NotPositive: return "NotPositive";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DecompositionFailure: return "DecompositionFailure";
        case ErrorCode::PartialTraceMismatch: return "PartialTraceMismatch";
        case ErrorCode::RankOutOfRange: return "RankOutOfRange";
        case ErrorCode::NonGenericSpectrum: return "NonGenericSpectrum";
        case ErrorCode::AmbiguousRank: return "AmbiguousRank";
        case ErrorCode::AlreadyPure: return "AlreadyPure";
        case ErrorCode::DegenerateTotalWeight: return "DegenerateTotalWeight";
        case ErrorCode::DimensionNotTwo: return "DimensionNotTwo";
        case ErrorCode::OutsideBall: return "OutsideBall";
        case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<double> value)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), value_(value) {}

namespace detail {

DensityMatrix make_density_unchecked(ComplexMatrix m) { return DensityMatrix(std::move(m)); }

PureState make_state_normalized(std::size_t n, ComplexVector amplitudes) {
    const double norm = amplitudes.norm();
    if (norm > 0.0) amplitudes /= norm;
    return PureState(n, std::move(amplitudes));
}

Complex canonical_phase(const ComplexVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mod = std::abs(v[i]);
        if (mod > kPhaseModulusFloor) return std::conj(v[i]) / mod;
    }
    return {1.0, 0.0};
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace detail

namespace {

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag())) return false;
    }
    return true;
}

std::string fmt_value(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

// Descending lexicographic comparison of real parts.
bool real_parts_greater(const ComplexVector& a, const ComplexVector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i].real() > b[i].real()) return true;
        if (a[i].real() < b[i].real()) return false;
    }
    return false;
}

}  // namespace

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return matrix_.squaredNorm();
}

PureState PureState::from_amplitudes(std::size_t n, ComplexVector amplitudes, double tol) {
    if (n == 0 || static_cast<std::size_t>(amplitudes.size()) != n * n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "amplitude count " + std::to_string(amplitudes.size()) + " is not n*n for n=" + std::to_string(n));
    }
    if (!all_finite(amplitudes)) throw Error(ErrorCode::NonFinite, "state has non-finite amplitudes");
    const double deviation = std::abs(amplitudes.norm() - 1.0);
    if (deviation > tol) {
        throw Error(ErrorCode::NotNormalized, "| |psi| - 1 | = " + fmt_value(deviation), deviation);
    }
    return PureState(n, std::move(amplitudes));
}

ComplexMatrix PureState::coefficient_matrix() const {
    const auto n = static_cast<Eigen::Index>(n_);
    return Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        amplitudes_.data(), n, n);
}

PureState PureState::from_coefficient_matrix(const ComplexMatrix& c) {
    if (c.rows() != c.cols()) throw Error(ErrorCode::NotSquare, "coefficient matrix must be square");
    const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> row_major = c;
    ComplexVector flat = Eigen::Map<const ComplexVector>(row_major.data(), row_major.size());
    return detail::make_state_normalized(static_cast<std::size_t>(c.rows()), std::move(flat));
}

Unitary Unitary::from_matrix(ComplexMatrix m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) throw Error(ErrorCode::NotSquare, "unitary must be square and non-empty");
    if (!all_finite(m)) throw Error(ErrorCode::NonFinite, "unitary has non-finite entries");
    const ComplexMatrix gram = m.adjoint() * m;
    const double deviation = max_abs_diff(gram, ComplexMatrix::Identity(m.rows(), m.cols()));
    if (deviation > tol) {
        throw Error(ErrorCode::NotUnitary, "max |U^dagger U - I| = " + fmt_value(deviation), deviation);
    }
    return Unitary(std::move(m));
}

Unitary Unitary::identity(std::size_t n) {
    const auto k = static_cast<Eigen::Index>(n);
    return Unitary(ComplexMatrix::Identity(k, k));
}

Unitary operator*(const Unitary& a, const Unitary& b) {
    if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "unitary product of different sizes");
    return Unitary(a.matrix_ * b.matrix_);
}

Complex Unitary::determinant() const { return matrix_.determinant(); }

DensityMatrix validate_density(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorCode::NotSquare,
                    "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!all_finite(m)) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");

    const double herm_dev = max_abs_diff(m, m.adjoint());
    if (herm_dev > tol) {
        throw Error(ErrorCode::NotHermitian, "max |M - M^dagger| = " + fmt_value(herm_dev), herm_dev);
    }
    const Complex trace = m.trace();
    const double trace_dev = std::abs(trace - 1.0);
    if (trace_dev > tol) {
        throw Error(ErrorCode::TraceNotOne, "|Tr M - 1| = " + fmt_value(trace_dev), trace_dev);
    }

    ComplexMatrix sym = detail::hermitian_part(m);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::DecompositionFailure, "eigenvalue iteration did not converge");
    }
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol) {
        throw Error(ErrorCode::NotPositive, "most negative eigenvalue " + fmt_value(min_eig), min_eig);
    }
    sym /= sym.trace().real();
    return detail::make_density_unchecked(std::move(sym));
}

SpectralDecomposition spectral_decompose(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix());
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::DecompositionFailure, "eigenvalue iteration did not converge");
    }
    const Eigen::Index n = rho.matrix().rows();

    // Eigen returns ascending order.
    SpectralDecomposition out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors = solver.eigenvectors().rowwise().reverse();
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvectors.col(k) *= detail::canonical_phase(out.eigenvectors.col(k));
        for (Eigen::Index i = 0; i < n; ++i) {
            Complex& c = out.eigenvectors(i, k);
            if (std::abs(c) > detail::kPhaseModulusFloor) {
                c = std::abs(c);
                break;
            }
        }
    }

    // Order vectors inside each near-degenerate cluster.
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && out.eigenvalues[end - 1] - out.eigenvalues[end] < detail::kDegenerateGap) ++end;
        if (end - start > 1) {
            std::vector<Eigen::Index> order(static_cast<std::size_t>(end - start));
            std::iota(order.begin(), order.end(), start);
            const ComplexMatrix block = out.eigenvectors.middleCols(start, end - start);
            std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
                return real_parts_greater(out.eigenvectors.col(a), out.eigenvectors.col(b));
            });
            for (Eigen::Index i = 0; i < end - start; ++i) {
                out.eigenvectors.col(start + i) = block.col(order[static_cast<std::size_t>(i)] - start);
            }
        }
        start = end;
    }
    return out;
}

std::size_t numerical_rank(std::span<const double> values, double tol) {
    if (values.empty()) return 0;
    const double largest = *std::max_element(values.begin(), values.end());
    const double threshold = tol * std::max(largest, 1.0);
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [threshold](double v) { return v > threshold; }));
}

std::size_t numerical_rank(const RealVector& values, double tol) {
    return numerical_rank(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())), tol);
}

double ray_distance(const ComplexVector& psi, const ComplexVector& phi) {
    if (psi.size() != phi.size()) {
        throw Error(ErrorCode::DimensionMismatch, "states of dimension " + std::to_string(psi.size()) + " and " +
                                                      std::to_string(phi.size()));
    }
    // Lagrange identity: |psi|^2 |phi|^2 - |<psi|phi>|^2 = sum_{i<j} |psi_i phi_j - psi_j phi_i|^2.
    // Avoids the cancellation in 1 - |<psi|phi>|^2 for nearly parallel rays.
    double wedge = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        for (Eigen::Index j = i + 1; j < psi.size(); ++j) {
            wedge += std::norm(psi[i] * phi[j] - psi[j] * phi[i]);
        }
    }
    const double scale = psi.squaredNorm() * phi.squaredNorm();
    if (scale == 0.0) return 1.0;
    return std::sqrt(std::clamp(wedge / scale, 0.0, 1.0));
}

double ray_distance(const PureState& psi, const PureState& phi) {
    return ray_distance(psi.amplitudes(), phi.amplitudes());
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
    }
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace dmgeom
