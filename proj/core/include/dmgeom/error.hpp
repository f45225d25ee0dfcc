#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dmgeom {

enum class ErrorCode {
    NotSquare,
    NonFinite,
    NotHermitian,
    TraceNotOne,
    NotPositive,
    NotNormalized,
    NotUnitary,
    DimensionMismatch,
    DecompositionFailure,
    PartialTraceMismatch,
    RankOutOfRange,
    NonGenericSpectrum,
    AmbiguousRank,
    AlreadyPure,
    DegenerateTotalWeight,
    DimensionNotTwo,
    OutsideBall,
    SamplingExhausted,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `value()` carries the offending
/// quantity when one exists (max deviation, most negative eigenvalue, ...).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::optional<double> value = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    std::optional<double> value() const noexcept { return value_; }

private:
    ErrorCode code_;
    std::optional<double> value_;
};

}  // namespace dmgeom
