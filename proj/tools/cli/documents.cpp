#include "documents.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace dmgeom::cli {

namespace {

std::size_t read_dimension(const Json& doc) {
    const auto it = doc.find("n");
    if (it == doc.end()) throw ParseError("document has no \"n\" field");
    if (!it->is_number_integer() || it->get<std::int64_t>() < 1) {
        throw ParseError("\"n\" must be a positive integer");
    }
    return it->get<std::size_t>();
}

Complex read_entry(const Json& entry, std::string_view where) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
        throw ParseError(std::string(where) + ": entry must be a [re, im] pair of numbers");
    }
    const double re = entry[0].get<double>();
    const double im = entry[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw ParseError(std::string(where) + ": entry is not finite");
    }
    return {re, im};
}

void write_double(std::string& out, double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    const std::string_view text(buf.data(), static_cast<std::size_t>(res.ptr - buf.data()));
    out += text;
    if (text.find_first_of(".e") == std::string_view::npos) out += ".0";
}

void write_value(std::string& out, const Json& j) {
    switch (j.type()) {
        case Json::value_t::object: {
            out.push_back('{');
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out.push_back(',');
                first = false;
                out += Json(key).dump();
                out.push_back(':');
                write_value(out, value);
            }
            out.push_back('}');
            break;
        }
        case Json::value_t::array: {
            out.push_back('[');
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i > 0) out.push_back(',');
                write_value(out, j[i]);
            }
            out.push_back(']');
            break;
        }
        case Json::value_t::number_float: write_double(out, j.get<double>()); break;
        default: out += j.dump(); break;
    }
}

}  // namespace

std::string_view to_string(DocumentKind kind) {
    switch (kind) {
        case DocumentKind::Density: return "density";
        case DocumentKind::PureState: return "pure_state";
        case DocumentKind::Unitary: return "unitary";
    }
    return "unknown";
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

ComplexMatrix read_document(const Json& doc, DocumentKind expected) {
    if (!doc.is_object()) throw ParseError("document must be a JSON object");
    const auto kind = doc.find("kind");
    if (kind == doc.end() || !kind->is_string()) throw ParseError("document has no \"kind\" string");
    if (kind->get<std::string>() != to_string(expected)) {
        throw ParseError("expected kind \"" + std::string(to_string(expected)) + "\", got \"" +
                         kind->get<std::string>() + "\"");
    }
    const std::size_t n = read_dimension(doc);
    const auto data = doc.find("data");
    if (data == doc.end() || !data->is_array()) throw ParseError("document has no \"data\" array");
    const auto rows = static_cast<Eigen::Index>(n);

    if (expected == DocumentKind::PureState) {
        if (data->size() != n * n) {
            throw ParseError("pure_state with n=" + std::to_string(n) + " needs " + std::to_string(n * n) +
                             " amplitudes, got " + std::to_string(data->size()));
        }
        ComplexMatrix amps(rows * rows, 1);
        for (std::size_t k = 0; k < n * n; ++k) {
            amps(static_cast<Eigen::Index>(k), 0) = read_entry((*data)[k], "data[" + std::to_string(k) + "]");
        }
        return amps;
    }

    if (data->size() != n) {
        throw ParseError("matrix with n=" + std::to_string(n) + " needs " + std::to_string(n) + " rows, got " +
                         std::to_string(data->size()));
    }
    ComplexMatrix m(rows, rows);
    for (std::size_t i = 0; i < n; ++i) {
        const Json& row = (*data)[i];
        if (!row.is_array() || row.size() != n) {
            throw ParseError("row " + std::to_string(i) + " must hold " + std::to_string(n) + " entries");
        }
        for (std::size_t j = 0; j < n; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                read_entry(row[j], "data[" + std::to_string(i) + "][" + std::to_string(j) + "]");
        }
    }
    return m;
}

DensityMatrix parse_density(const Json& doc, double tol) {
    return validate_density(read_document(doc, DocumentKind::Density), tol);
}

PureState parse_pure_state(const Json& doc, double tol) {
    const ComplexMatrix amps = read_document(doc, DocumentKind::PureState);
    return PureState::from_amplitudes(doc["n"].get<std::size_t>(), amps.col(0), tol);
}

Unitary parse_unitary(const Json& doc, double tol) {
    return Unitary::from_matrix(read_document(doc, DocumentKind::Unitary), tol);
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_document(const DensityMatrix& rho) {
    return Json{{"kind", "density"}, {"n", rho.n()}, {"data", matrix_to_json(rho.matrix())}};
}

Json to_document(const PureState& psi) {
    Json data = Json::array();
    for (Eigen::Index k = 0; k < psi.amplitudes().size(); ++k) data.push_back(complex_to_json(psi.amplitudes()[k]));
    return Json{{"kind", "pure_state"}, {"n", psi.n()}, {"data", std::move(data)}};
}

Json to_document(const Unitary& u) {
    return Json{{"kind", "unitary"}, {"n", u.n()}, {"data", matrix_to_json(u.matrix())}};
}

std::string serialize(const Json& doc) {
    std::string out;
    write_value(out, doc);
    out.push_back('\n');
    return out;
}

std::string digest(const Json& doc) {
    const std::string canonical = serialize(doc);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(canonical.data(), canonical.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    std::ostringstream hex;
    hex << "sha256:" << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) hex << std::setw(2) << static_cast<int>(md[i]);
    return hex.str();
}

}  // namespace dmgeom::cli
