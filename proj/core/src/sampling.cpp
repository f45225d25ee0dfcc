#include "dmgeom/sampling.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/QR>

#include "internal.hpp"

namespace dmgeom {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ComplexMatrix ginibre(Xoshiro256& rng, Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
    }
    return g;
}

void require_rank(std::size_t n, std::size_t mu) {
    if (mu < 1 || mu > n) {
        throw Error(ErrorCode::RankOutOfRange,
                    "rank " + std::to_string(mu) + " outside [1, " + std::to_string(n) + "]");
    }
}

DensityMatrix draw_density(Xoshiro256& rng, std::size_t n, std::size_t mu) {
    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(mu);
    for (;;) {
        const ComplexMatrix g = ginibre(rng, rows, cols);
        ComplexMatrix rho = detail::hermitian_part(g * g.adjoint());
        rho /= rho.trace().real();
        DensityMatrix candidate = detail::make_density_unchecked(std::move(rho));
        if (numerical_rank(spectral_decompose(candidate).eigenvalues) == mu) return candidate;
    }
}

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t Xoshiro256::next() {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double Xoshiro256::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Complex Xoshiro256::complex_gaussian() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

ComplexVector random_unit_vector(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
    Xoshiro256 rng(seed);
    ComplexVector v(static_cast<Eigen::Index>(dim));
    for (;;) {
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.complex_gaussian();
        const double norm = v.norm();
        if (norm > 0.0) return v / norm;
    }
}

PureState random_pure(std::size_t dim, std::uint64_t seed) {
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(dim))));
    if (dim == 0 || n * n != dim) {
        throw Error(ErrorCode::DimensionMismatch, "dimension " + std::to_string(dim) + " is not a perfect square");
    }
    return detail::make_state_normalized(n, random_unit_vector(dim, seed));
}

Unitary random_unitary(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
    Xoshiro256 rng(seed);
    const auto k = static_cast<Eigen::Index>(n);
    const Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(rng, k, k));
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < k; ++j) {
        const double mod = std::abs(r(j, j));
        if (mod > 0.0) q.col(j) *= r(j, j) / mod;
    }
    return Unitary::from_matrix(std::move(q), 1e-12);
}

DensityMatrix random_density(std::size_t n, std::size_t mu, std::uint64_t seed) {
    require_rank(n, mu);
    Xoshiro256 rng(seed);
    return draw_density(rng, n, mu);
}

DensityMatrix random_density(const SamplerConfig& config) {
    return random_density(config.n, config.mu.value_or(config.n), config.seed);
}

DensityMatrix random_generic_density(std::size_t n, std::size_t mu, std::uint64_t seed, double gap,
                                     std::size_t max_attempts) {
    require_rank(n, mu);
    Xoshiro256 rng(seed);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        DensityMatrix rho = draw_density(rng, n, mu);
        if (mu == 1) return rho;
        const RealVector eig = spectral_decompose(rho).eigenvalues;
        const auto m = static_cast<Eigen::Index>(mu);
        bool generic = eig[m - 1] >= gap;
        for (Eigen::Index k = 0; generic && k + 1 < m; ++k) generic = eig[k] - eig[k + 1] >= gap;
        if (generic) return rho;
    }
    throw Error(ErrorCode::SamplingExhausted,
                "no rank-" + std::to_string(mu) + " sample with eigenvalue gaps >= " + std::to_string(gap) +
                    " after " + std::to_string(max_attempts) + " draws");
}

}  // namespace dmgeom
