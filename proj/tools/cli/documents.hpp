#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "dmgeom/core.hpp"
#include "dmgeom/strata.hpp"

namespace dmgeom::cli {

using Json = nlohmann::ordered_json;

enum class DocumentKind { Density, PureState, Unitary };

std::string_view to_string(DocumentKind kind);

/// Malformed JSON or a document whose shape does not match its kind.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json parse_json(std::string_view text);

/// Shape-checks a MatrixDocument of the expected kind and returns its entries:
/// n x n for density/unitary, an n*n x 1 column for pure states.
ComplexMatrix read_document(const Json& doc, DocumentKind expected);

DensityMatrix parse_density(const Json& doc, double tol = kDefaultValidationTol);
PureState parse_pure_state(const Json& doc, double tol = kStateNormTol);
Unitary parse_unitary(const Json& doc, double tol = kUnitaryTol);

Json to_document(const DensityMatrix& rho);
Json to_document(const PureState& psi);
Json to_document(const Unitary& u);

Json complex_to_json(Complex z);
Json matrix_to_json(const ComplexMatrix& m);

/// Compact JSON, newline-terminated. Floating-point values are written with
/// 17 significant digits (shortest %.17g form), which round-trips binary64
/// exactly and does not depend on the process locale.
std::string serialize(const Json& doc);

/// "sha256:<hex>" of the canonical serialization of doc.
std::string digest(const Json& doc);

}  // namespace dmgeom::cli
