#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dmgeom/error.hpp"

namespace dmgeom::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitParse = 2,
    kExitValidation = 3,
    kExitPrecondition = 4,
    kExitNumerical = 5,
};

int exit_code_for(ErrorCode code);

/// Decimal or 0x-prefixed hexadecimal 64-bit seed.
std::uint64_t parse_seed(std::string_view text);

/// Runs one CLI invocation; args excludes the program name. Output goes to
/// `out` only when the command succeeds (or reports a failed verification).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dmgeom::cli
