#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "dmgeom/core.hpp"

namespace dmgeom {

inline constexpr double kDefaultSamplingGap = 1e-3;
inline constexpr std::size_t kDefaultMaxRejections = 1000;

/// xoshiro256** 1.0 (Blackman & Vigna), state seeded by four successive
/// splitmix64 outputs starting from the user seed. Pinned so that sampled
/// fixtures are reproducible across platforms and language ports.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed);

    std::uint64_t next();
    std::uint64_t operator()() { return next(); }
    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

    /// Top 53 bits scaled into [0, 1).
    double uniform();

    /// Standard complex Gaussian (E|z|^2 = 1). One Box-Muller pair per draw:
    /// u1 = 1 - uniform(), u2 = uniform(), radius sqrt(-ln u1) so that real
    /// and imaginary parts each have variance 1/2.
    Complex complex_gaussian();

private:
    std::array<std::uint64_t, 4> s_{};
};

struct SamplerConfig {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::optional<std::size_t> mu;
};

/// Haar-random unit vector of length dim (not restricted to square dims).
ComplexVector random_unit_vector(std::size_t dim, std::uint64_t seed);

/// Haar-random ray in C^dim viewed as a bipartite state; dim must be a perfect square.
PureState random_pure(std::size_t dim, std::uint64_t seed);

/// QR of a complex Ginibre matrix with R's diagonal phases moved into Q.
Unitary random_unitary(std::size_t n, std::uint64_t seed);

/// rho = G G^dagger / Tr(G G^dagger), G an n x mu Ginibre matrix (row-major
/// draw order). Redraws from the same stream until the numerical rank is mu.
DensityMatrix random_density(std::size_t n, std::size_t mu, std::uint64_t seed);

/// random_density redrawn until consecutive nonzero eigenvalues, and the
/// smallest nonzero eigenvalue itself, are at least gap apart.
DensityMatrix random_generic_density(std::size_t n, std::size_t mu, std::uint64_t seed,
                                     double gap = kDefaultSamplingGap,
                                     std::size_t max_attempts = kDefaultMaxRejections);

DensityMatrix random_density(const SamplerConfig& config);

}  // namespace dmgeom
