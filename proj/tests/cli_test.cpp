#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "golden_cases.hpp"

using namespace dmgeom;
using golden::run;

namespace {

const std::filesystem::path kGoldenDir = DMGEOM_GOLDEN_DIR;

std::string density_text(const ComplexMatrix& m) { return cli::serialize(cli::to_document(validate_density(m))); }

}  // namespace

TEST(cli_golden, reproduces_expected_documents) {
    const bool update = std::getenv("DMGEOM_UPDATE_GOLDEN") != nullptr;
    if (update) {
        golden::write_inputs(kGoldenDir);
        std::filesystem::create_directories(kGoldenDir / "expected");
    }
    for (const golden::Case& c : golden::cases()) {
        const golden::Run r = run(golden::resolve(c.args, kGoldenDir));
        EXPECT_EQ(r.exit_code, c.exit_code) << c.name << ": " << r.err;
        if (update) {
            std::ofstream(golden::expected_path(kGoldenDir, c), std::ios::binary) << r.out;
            continue;
        }
        EXPECT_EQ(r.out, golden::read_file(golden::expected_path(kGoldenDir, c))) << c.name;
    }
}

TEST(cli_purify, maximally_mixed_to_bell) {
    const golden::Run r = run({"purify"}, density_text(golden::diagonal({0.5, 0.5})));
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const PureState psi = cli::parse_pure_state(cli::parse_json(r.out));
    EXPECT_LT(ray_distance(psi, PureState::from_coefficient_matrix(ComplexMatrix::Identity(2, 2))), 1e-15);
}

TEST(cli_purify, malformed_json_exits_2_without_output) {
    const golden::Run r = run({"purify"}, "{\"kind\": \"density\", ");
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("ParseError"), std::string::npos);
}

TEST(cli_purify, bad_trace_exits_3_naming_invariant) {
    const std::string doc = R"({"kind":"density","n":2,"data":[[[1.0,0],[0,0]],[[0,0],[0.1,0]]]})";
    const golden::Run r = run({"purify"}, doc);
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("TraceNotOne"), std::string::npos);
}

TEST(cli_documents, shape_errors_are_parse_errors) {
    EXPECT_EQ(run({"trace"}, R"({"kind":"pure_state","n":2,"data":[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})").exit_code,
              2);
    EXPECT_EQ(run({"trace"}, R"({"kind":"density","n":1,"data":[[[1,0]]]})").exit_code, 2);
    EXPECT_EQ(run({"purify"}, R"({"kind":"density","n":2,"data":[[[1,0],[0,0]]]})").exit_code, 2);
    EXPECT_EQ(run({"purify"}, R"({"kind":"density","n":1,"data":[[[1,0,3]]]})").exit_code, 2);
    EXPECT_EQ(run({"purify"}, R"({"kind":"density","n":0,"data":[]})").exit_code, 2);
    EXPECT_EQ(run({"purify"}, R"([1,2])").exit_code, 2);
}

TEST(cli_documents, validation_errors_exit_3) {
    EXPECT_EQ(run({"trace"}, R"({"kind":"pure_state","n":1,"data":[[0.5,0]]})").exit_code, 3);
    EXPECT_EQ(run({"classify"}, R"({"kind":"density","n":2,"data":[[[0.5,0],[0.2,0]],[[0,0],[0.5,0]]]})").exit_code,
              3);
}

TEST(cli_documents, serialization_roundtrips_bit_exactly) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DensityMatrix rho = random_density(2 + seed % 4, 1 + seed % 2, seed);
        const cli::Json doc = cli::parse_json(cli::serialize(cli::to_document(rho)));
        const ComplexMatrix back = cli::read_document(doc, cli::DocumentKind::Density);
        EXPECT_EQ(back, rho.matrix());

        const PureState psi = random_pure(9, seed);
        const ComplexMatrix amps =
            cli::read_document(cli::parse_json(cli::serialize(cli::to_document(psi))), cli::DocumentKind::PureState);
        EXPECT_EQ(ComplexVector(amps.col(0)), psi.amplitudes());
    }
}

TEST(cli_documents, floats_use_17_significant_digits) {
    EXPECT_EQ(cli::serialize(cli::Json::array({0.1, 1.0, -0.0, 1e-300})),
              "[0.10000000000000001,1.0,-0.0,1e-300]\n");
}

TEST(cli_seed, decimal_and_hex) {
    EXPECT_EQ(cli::parse_seed("42"), 42u);
    EXPECT_EQ(cli::parse_seed("0x2a"), 42u);
    EXPECT_EQ(cli::parse_seed("0XFF"), 255u);
    EXPECT_EQ(cli::parse_seed("18446744073709551615"), ~std::uint64_t{0});
    EXPECT_THROW(cli::parse_seed("12a"), cli::ParseError);
    EXPECT_THROW(cli::parse_seed(""), cli::ParseError);
    EXPECT_EQ(run({"sample", "--kind", "pure", "--n", "2", "--seed", "zz"}).exit_code, 2);
}

TEST(cli_trace, examples) {
    const golden::Run bell = run({"trace"}, R"({"kind":"pure_state","n":2,"data":[[0.70710678118654757,0],[0,0],[0,0],[0.70710678118654757,0]]})");
    ASSERT_EQ(bell.exit_code, 0) << bell.err;
    EXPECT_LT(max_abs_diff(cli::parse_density(cli::parse_json(bell.out)).matrix(), ComplexMatrix::Identity(2, 2) * 0.5),
              1e-15);
    const golden::Run product = run({"trace"}, R"({"kind":"pure_state","n":2,"data":[[0,0],[1,0],[0,0],[0,0]]})");
    ASSERT_EQ(product.exit_code, 0);
    EXPECT_LT(max_abs_diff(cli::parse_density(cli::parse_json(product.out)).matrix(), golden::diagonal({1.0, 0.0})),
              1e-15);
}

TEST(cli_connect, planted_pair_and_mismatch) {
    const golden::Run ok = run(golden::resolve({"connect", "@inputs/planted_psi.json", "@inputs/planted_phi.json"},
                                               kGoldenDir));
    ASSERT_EQ(ok.exit_code, 0) << ok.err;
    const cli::Json report = cli::parse_json(ok.out);
    EXPECT_LE(report["results"]["residual"].get<double>(), 1e-10);
    EXPECT_EQ(report["status"], "ok");

    // Purifications of two different density matrices.
    const auto dir = std::filesystem::temp_directory_path();
    std::ofstream(dir / "dmgeom_psi.json") << cli::serialize(cli::to_document(purify(random_density(2, 2, 1))));
    std::ofstream(dir / "dmgeom_phi.json") << cli::serialize(cli::to_document(purify(random_density(2, 2, 2))));
    const golden::Run bad = run({"connect", (dir / "dmgeom_psi.json").string(), (dir / "dmgeom_phi.json").string()});
    EXPECT_EQ(bad.exit_code, 4);
    EXPECT_TRUE(bad.out.empty());
    EXPECT_NE(bad.err.find("PartialTraceMismatch"), std::string::npos);
}

TEST(cli_classify, diag5_report) {
    const golden::Run r = run({"classify", "--tol", "1e-9"}, density_text(golden::diagonal({0.5, 0.3, 0.2, 0, 0})));
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const cli::Json report = cli::parse_json(r.out);
    EXPECT_EQ(report["results"]["mu"], 3);
    EXPECT_EQ(report["results"]["stratum_dim"], 20);
    EXPECT_EQ(report["results"]["stabilizer_dim"], 4);
    EXPECT_EQ(report["tolerances"]["rank"].get<double>(), 1e-9);
}

TEST(cli_split, pure_input_is_precondition_error) {
    EXPECT_EQ(run({"split"}, density_text(golden::diagonal({1.0, 0.0}))).exit_code, 4);
}

TEST(cli_bloch, chart_both_directions) {
    const golden::Run fwd = run({"bloch"}, density_text(golden::diagonal({1.0, 0.0})));
    ASSERT_EQ(fwd.exit_code, 0) << fwd.err;
    EXPECT_EQ(cli::parse_json(fwd.out)["results"]["bloch_vector"], cli::Json::parse("[0.0, 0.0, 1.0]"));

    const golden::Run inv = run({"bloch", "--from", "0", "0", "0"});
    ASSERT_EQ(inv.exit_code, 0) << inv.err;
    const DensityMatrix rho = cli::parse_density(cli::parse_json(inv.out)["results"]["density"]);
    EXPECT_EQ(rho.matrix(), golden::diagonal({0.5, 0.5}));

    EXPECT_EQ(run({"bloch", "--from", "1", "1", "0"}).exit_code, 3);
    EXPECT_EQ(run({"bloch"}, density_text(golden::diagonal({0.5, 0.3, 0.2}))).exit_code, 4);
}

TEST(cli_verify_dimension, passes_and_reports_ranks) {
    const golden::Run r = run({"verify-dimension", "--n", "4", "--mu", "1", "--samples", "20"});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const cli::Json report = cli::parse_json(r.out);
    EXPECT_EQ(report["results"]["stratum_dim"], 6);
    ASSERT_EQ(report["results"]["tangent_ranks"].size(), 20u);
    for (const auto& rank : report["results"]["tangent_ranks"]) EXPECT_EQ(rank, 6);
    EXPECT_EQ(run({"verify-dimension", "--n", "3", "--mu", "4"}).exit_code, 4);
}

TEST(cli_sample, documents_parse_back) {
    const golden::Run u = run({"sample", "--kind", "unitary", "--n", "4", "--seed", "3"});
    ASSERT_EQ(u.exit_code, 0);
    EXPECT_EQ(cli::parse_unitary(cli::parse_json(u.out)).matrix(), random_unitary(4, 3).matrix());
    const golden::Run d = run({"sample", "--kind", "density", "--n", "3", "--mu", "2", "--seed", "9"});
    ASSERT_EQ(d.exit_code, 0);
    EXPECT_EQ(cli::read_document(cli::parse_json(d.out), cli::DocumentKind::Density), random_density(3, 2, 9).matrix());
    EXPECT_EQ(run({"sample", "--kind", "mixed", "--n", "2"}).exit_code, 2);
}

TEST(cli_pipeline, purify_then_trace_closes) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 2 + seed % 5;
        const DensityMatrix rho = random_density(n, 1 + (seed / 5) % n, seed);
        const golden::Run p = run({"purify"}, cli::serialize(cli::to_document(rho)));
        ASSERT_EQ(p.exit_code, 0) << p.err;
        const golden::Run t = run({"trace"}, p.out);
        ASSERT_EQ(t.exit_code, 0) << t.err;
        const ComplexMatrix back = cli::read_document(cli::parse_json(t.out), cli::DocumentKind::Density);
        EXPECT_LE(max_abs_diff(back, rho.matrix()), 1e-11);
    }
}

TEST(cli_io, out_file_and_help) {
    const auto path = std::filesystem::temp_directory_path() / "dmgeom_sample_out.json";
    const golden::Run r = run({"sample", "--kind", "pure", "--n", "2", "--seed", "1", "--out", path.string()});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(golden::read_file(path), golden::read_file(kGoldenDir / "expected" / "sample_pure_n2.json"));

    const golden::Run help = run({"--help"});
    EXPECT_EQ(help.exit_code, 0);
    EXPECT_NE(help.out.find("verify-dimension"), std::string::npos);
    EXPECT_EQ(run({"purify", "--nope"}).exit_code, 2);
}
