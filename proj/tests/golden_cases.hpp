#pragma once

// Golden-file cases for the CLI, shared by the unit suite and the acceptance
// binary. Arguments starting with '@' are paths relative to the golden
// directory. Set DMGEOM_UPDATE_GOLDEN=1 when running cli_test to regenerate.

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/documents.hpp"
#include "dmgeom/dmgeom.hpp"

namespace dmgeom::golden {

struct Case {
    std::string name;
    std::vector<std::string> args;
    int exit_code = 0;
};

inline std::vector<Case> cases() {
    return {
        {"purify_maximally_mixed", {"purify", "--in", "@inputs/maximally_mixed.json"}},
        {"purify_random_n3", {"purify", "--in", "@inputs/random_density_n3.json"}},
        {"trace_bell", {"trace", "--in", "@inputs/bell.json"}},
        {"trace_product_01", {"trace", "--in", "@inputs/product_01.json"}},
        {"connect_bell_bell", {"connect", "@inputs/bell.json", "@inputs/bell.json"}},
        {"connect_planted_n3", {"connect", "@inputs/planted_psi.json", "@inputs/planted_phi.json"}},
        {"connect_mismatch", {"connect", "@inputs/bell.json", "@inputs/product_01.json"}, 4},
        {"classify_maximally_mixed", {"classify", "--in", "@inputs/maximally_mixed.json"}},
        {"classify_pure_zero", {"classify", "--in", "@inputs/pure_zero.json"}},
        {"classify_diag5", {"classify", "--in", "@inputs/diag5.json"}},
        {"split_maximally_mixed", {"split", "--in", "@inputs/maximally_mixed.json"}},
        {"split_diag_07_03", {"split", "--in", "@inputs/diag_07_03.json"}},
        {"split_diag_05_03_02", {"split", "--in", "@inputs/diag_05_03_02.json"}},
        {"bloch_plus", {"bloch", "--in", "@inputs/plus.json"}},
        {"bloch_from_vector", {"bloch", "--from", "0.3", "-0.4", "0.5"}},
        {"verify_n2_mu2", {"verify-dimension", "--n", "2", "--mu", "2", "--samples", "20", "--seed", "0"}},
        {"verify_n3_mu2", {"verify-dimension", "--n", "3", "--mu", "2", "--samples", "20", "--seed", "0"}},
        {"verify_n4_mu1", {"verify-dimension", "--n", "4", "--mu", "1", "--samples", "20", "--seed", "0x10"}},
        {"sample_pure_n2", {"sample", "--kind", "pure", "--n", "2", "--seed", "1"}},
        {"sample_unitary_n3", {"sample", "--kind", "unitary", "--n", "3", "--seed", "0x2a"}},
        {"sample_density_n4_mu2", {"sample", "--kind", "density", "--n", "4", "--mu", "2", "--seed", "5"}},
    };
}

inline std::vector<std::string> resolve(const std::vector<std::string>& args, const std::filesystem::path& dir) {
    std::vector<std::string> out;
    for (const auto& a : args) out.push_back(!a.empty() && a[0] == '@' ? (dir / a.substr(1)).string() : a);
    return out;
}

struct Run {
    int exit_code = 0;
    std::string out;
    std::string err;
};

inline Run run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    Run r;
    r.exit_code = cli::run(args, in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline std::filesystem::path expected_path(const std::filesystem::path& dir, const Case& c) {
    return dir / "expected" / (c.name + ".json");
}

inline ComplexMatrix diagonal(std::vector<double> values) {
    const auto n = static_cast<Eigen::Index>(values.size());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
    return m;
}

/// Writes the input fixtures; only used when regenerating.
inline void write_inputs(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "inputs");
    const auto put = [&](const std::string& name, const cli::Json& doc) {
        std::ofstream(dir / "inputs" / name, std::ios::binary) << cli::serialize(doc);
    };
    put("maximally_mixed.json", cli::to_document(validate_density(diagonal({0.5, 0.5}))));
    put("pure_zero.json", cli::to_document(validate_density(diagonal({1.0, 0.0}))));
    put("diag5.json", cli::to_document(validate_density(diagonal({0.5, 0.3, 0.2, 0.0, 0.0}))));
    put("diag_07_03.json", cli::to_document(validate_density(diagonal({0.7, 0.3}))));
    put("diag_05_03_02.json", cli::to_document(validate_density(diagonal({0.5, 0.3, 0.2}))));
    ComplexMatrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    put("plus.json", cli::to_document(validate_density(plus)));
    put("bell.json", cli::to_document(PureState::from_coefficient_matrix(ComplexMatrix::Identity(2, 2))));
    put("product_01.json", cli::to_document(PureState::from_amplitudes(2, ComplexVector::Unit(4, 1))));
    put("random_density_n3.json", cli::to_document(random_density(3, 3, 7)));
    const PureState psi = purify(random_density(3, 2, 11));
    put("planted_psi.json", cli::to_document(psi));
    put("planted_phi.json", cli::to_document(apply_local_b(psi, random_unitary(3, 12))));
}

}  // namespace dmgeom::golden
