#pragma once

#include "dmgeom/core.hpp"

namespace dmgeom::detail {

inline constexpr double kPhaseModulusFloor = 1e-8;
inline constexpr double kDegenerateGap = 1e-10;

/// Unit-modulus factor that makes the first component of v with modulus
/// above kPhaseModulusFloor real and positive. Returns 1 for tiny vectors.
Complex canonical_phase(const ComplexVector& v);

ComplexMatrix hermitian_part(const ComplexMatrix& m);

}  // namespace dmgeom::detail
