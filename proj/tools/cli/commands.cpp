#include "commands.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"

#include "dmgeom/dmgeom.hpp"
#include "documents.hpp"

namespace dmgeom::cli {

namespace {

inline constexpr double kConnectResidualLimit = 1e-9;

struct Options {
    std::string in_path;
    std::string out_path;
    double tol = kDefaultRankTol;

    std::string psi_path;
    std::string phi_path;

    std::vector<double> from;

    std::size_t n = 0;
    std::size_t mu = 0;
    std::size_t samples = 20;
    std::string seed = "0";
    double gap = kDefaultSamplingGap;
    std::string kind;
};

/// Outcome of one subcommand: the document to emit and the process exit code.
struct Outcome {
    Json document;
    int exit_code = kExitOk;
};

std::string read_all(std::istream& in) {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Json load_document(const std::string& path, std::istream& stdin_stream) {
    if (path.empty() || path == "-") return parse_json(read_all(stdin_stream));
    std::ifstream file(path, std::ios::binary);
    if (!file) throw ParseError("cannot open " + path);
    return parse_json(read_all(file));
}

Json report(std::string_view command, Json inputs, Json results, Json tolerances, std::string_view status = "ok") {
    return Json{{"command", command},
                {"inputs", std::move(inputs)},
                {"results", std::move(results)},
                {"tolerances", std::move(tolerances)},
                {"status", status}};
}

Json real_array(const RealVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Outcome cmd_purify(const Options& opt, std::istream& in) {
    const DensityMatrix rho = parse_density(load_document(opt.in_path, in));
    return {to_document(purify(rho))};
}

Outcome cmd_trace(const Options& opt, std::istream& in) {
    const PureState psi = parse_pure_state(load_document(opt.in_path, in));
    return {to_document(partial_trace_b(psi))};
}

Outcome cmd_connect(const Options& opt, std::istream& in) {
    const Json psi_doc = load_document(opt.psi_path, in);
    const Json phi_doc = load_document(opt.phi_path, in);
    const PureState psi = parse_pure_state(psi_doc);
    const PureState phi = parse_pure_state(phi_doc);
    if (psi.n() != phi.n()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "psi has n=" + std::to_string(psi.n()) + ", phi has n=" + std::to_string(phi.n()));
    }
    const Unitary v = connecting_unitary(psi, phi, opt.tol);
    const double residual = ray_distance(apply_local_b(psi, v), phi);
    const bool ok = residual <= kConnectResidualLimit;
    Json results{{"unitary", to_document(v)},
                 {"residual", residual},
                 {"determinant", complex_to_json(v.determinant())}};
    return {report("connect", Json{{"psi", digest(psi_doc)}, {"phi", digest(phi_doc)}}, std::move(results),
                   Json{{"partial_trace_match", opt.tol}, {"residual_limit", kConnectResidualLimit}},
                   ok ? "ok" : "ResidualTooLarge"),
            ok ? kExitOk : kExitNumerical};
}

Outcome cmd_classify(const Options& opt, std::istream& in) {
    const Json doc = load_document(opt.in_path, in);
    const DensityMatrix rho = parse_density(doc);
    const StratumInfo info = classify(rho, opt.tol);
    Json results{{"n", info.n},
                 {"mu", info.mu},
                 {"stratum_dim", info.stratum_dim},
                 {"stabilizer_dim", info.stabilizer_dim},
                 {"is_pure", info.is_pure},
                 {"is_full_rank", info.is_full_rank},
                 {"purity", rho.purity()},
                 {"eigenvalues", real_array(spectral_decompose(rho).eigenvalues)}};
    return {report("classify", Json{{"input", digest(doc)}}, std::move(results),
                   Json{{"rank", opt.tol}, {"validation", kDefaultValidationTol}})};
}

Outcome cmd_split(const Options& opt, std::istream& in) {
    const Json doc = load_document(opt.in_path, in);
    const DensityMatrix rho = parse_density(doc);
    const ConvexSplit split = convex_split(rho, opt.tol);
    Json components = Json::array();
    Json ranks = Json::array();
    for (const DensityMatrix& tau : split.components) {
        components.push_back(to_document(tau));
        ranks.push_back(numerical_rank(spectral_decompose(tau).eigenvalues, opt.tol));
    }
    Json results{{"mu", split.components.size()},
                 {"weights", split.weights},
                 {"component_ranks", std::move(ranks)},
                 {"components", std::move(components)}};
    return {report("split", Json{{"input", digest(doc)}}, std::move(results),
                   Json{{"rank", opt.tol}, {"validation", kDefaultValidationTol}})};
}

Outcome cmd_bloch(const Options& opt, std::istream& in) {
    if (!opt.from.empty()) {
        const BlochVector r{opt.from[0], opt.from[1], opt.from[2]};
        const DensityMatrix rho = density_from_bloch(r);
        return {report("bloch", Json{{"bloch_vector", opt.from}}, Json{{"density", to_document(rho)}},
                       Json{{"ball_slack", kBallSlack}})};
    }
    const Json doc = load_document(opt.in_path, in);
    const DensityMatrix rho = parse_density(doc);
    const BlochVector r = bloch_vector(rho);
    Json results{{"bloch_vector", Json::array({r.x, r.y, r.z})},
                 {"norm", r.norm()},
                 {"mu", classify(rho, opt.tol).mu}};
    return {report("bloch", Json{{"input", digest(doc)}}, std::move(results),
                   Json{{"rank", opt.tol}, {"validation", kDefaultValidationTol}})};
}

Outcome cmd_verify_dimension(const Options& opt) {
    const std::uint64_t base_seed = parse_seed(opt.seed);
    const std::size_t formula = stratum_dimension(opt.n, opt.mu);
    Json ranks = Json::array();
    std::string status = "ok";
    for (std::size_t i = 0; i < opt.samples; ++i) {
        const DensityMatrix rho = random_generic_density(opt.n, opt.mu, base_seed + i, opt.gap);
        std::size_t rank = 0;
        try {
            rank = tangent_space_rank(rho, opt.tol);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::AmbiguousRank) throw;
            ranks.push_back(nullptr);
            status = "AmbiguousRank";
            continue;
        }
        ranks.push_back(rank);
        if (rank != formula && status == "ok") status = "FormulaMismatch";
    }
    const bool pass = status == "ok";
    Json inputs{{"n", opt.n}, {"mu", opt.mu}, {"samples", opt.samples}, {"seed", base_seed}};
    Json results{{"stratum_dim", formula},
                 {"stabilizer_dim", stabilizer_dimension(opt.n, opt.mu)},
                 {"tangent_ranks", std::move(ranks)},
                 {"pass", pass}};
    return {report("verify-dimension", std::move(inputs), std::move(results),
                   Json{{"singular_value", opt.tol},
                        {"gap_ratio", kTangentGapRatio},
                        {"eigenvalue_gap", opt.gap},
                        {"rank", kDefaultRankTol}},
                   status),
            pass ? kExitOk : kExitNumerical};
}

Outcome cmd_sample(const Options& opt) {
    const std::uint64_t seed = parse_seed(opt.seed);
    if (opt.kind == "pure") return {to_document(random_pure(opt.n * opt.n, seed))};
    if (opt.kind == "unitary") return {to_document(random_unitary(opt.n, seed))};
    return {to_document(random_density(opt.n, opt.mu == 0 ? opt.n : opt.mu, seed))};
}

void write_output(const Options& opt, const std::string& text, std::ostream& out) {
    if (opt.out_path.empty() || opt.out_path == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(opt.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + opt.out_path);
    file << text;
}

}  // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSquare:
        case ErrorCode::NonFinite:
        case ErrorCode::NotHermitian:
        case ErrorCode::TraceNotOne:
        case ErrorCode::NotPositive:
        case ErrorCode::NotNormalized:
        case ErrorCode::NotUnitary:
        case ErrorCode::OutsideBall:
            return kExitValidation;
        case ErrorCode::DimensionMismatch:
        case ErrorCode::PartialTraceMismatch:
        case ErrorCode::RankOutOfRange:
        case ErrorCode::NonGenericSpectrum:
        case ErrorCode::AlreadyPure:
        case ErrorCode::DimensionNotTwo:
            return kExitPrecondition;
        case ErrorCode::DecompositionFailure:
        case ErrorCode::AmbiguousRank:
        case ErrorCode::DegenerateTotalWeight:
        case ErrorCode::SamplingExhausted:
            return kExitNumerical;
    }
    return kExitNumerical;
}

std::uint64_t parse_seed(std::string_view text) {
    int base = 10;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        text.remove_prefix(2);
        base = 16;
    }
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError("invalid seed \"" + std::string(text) + "\"");
    }
    return value;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Density-matrix geometry: purifications, connecting unitaries, rank strata and the Bloch chart.",
                 "dmgeom"};
    app.require_subcommand(1);
    Options opt;

    const auto add_io = [&opt](CLI::App* sub) {
        sub->add_option("--in", opt.in_path, "Input document (default: stdin)");
        sub->add_option("--out", opt.out_path, "Output file (default: stdout)");
    };
    const auto add_tol = [&opt](CLI::App* sub, std::string_view help) {
        sub->add_option("--tol", opt.tol, std::string(help))->capture_default_str();
    };

    std::function<Outcome()> action;

    auto* purify_cmd = app.add_subcommand("purify", "Canonical purification of a density document");
    add_io(purify_cmd);
    purify_cmd->callback([&] { action = [&] { return cmd_purify(opt, in); }; });

    auto* trace_cmd = app.add_subcommand("trace", "Partial trace over B of a pure_state document");
    add_io(trace_cmd);
    trace_cmd->callback([&] { action = [&] { return cmd_trace(opt, in); }; });

    auto* connect_cmd = app.add_subcommand("connect", "Unitary v with (I x v)|psi> = |phi> up to phase");
    connect_cmd->add_option("psi", opt.psi_path, "pure_state document ('-' for stdin)")->required();
    connect_cmd->add_option("phi", opt.phi_path, "pure_state document ('-' for stdin)")->required();
    connect_cmd->add_option("--out", opt.out_path, "Output file (default: stdout)");
    add_tol(connect_cmd, "Entrywise tolerance for equal partial traces");
    connect_cmd->callback([&] { action = [&] { return cmd_connect(opt, in); }; });

    auto* classify_cmd = app.add_subcommand("classify", "Rank stratum of a density document");
    add_io(classify_cmd);
    add_tol(classify_cmd, "Relative eigenvalue threshold for the rank");
    classify_cmd->callback([&] { action = [&] { return cmd_classify(opt, in); }; });

    auto* split_cmd = app.add_subcommand("split", "Convex split into rank mu-1 density matrices");
    add_io(split_cmd);
    add_tol(split_cmd, "Relative eigenvalue threshold for the rank");
    split_cmd->callback([&] { action = [&] { return cmd_split(opt, in); }; });

    auto* bloch_cmd = app.add_subcommand("bloch", "Bloch vector of a qubit density, or density from --from x y z");
    add_io(bloch_cmd);
    add_tol(bloch_cmd, "Relative eigenvalue threshold for the rank");
    bloch_cmd->add_option("--from", opt.from, "Bloch vector components")->expected(3)->allow_extra_args(false);
    bloch_cmd->callback([&] { action = [&] { return cmd_bloch(opt, in); }; });

    auto* verify_cmd = app.add_subcommand("verify-dimension", "Compare tangent-space rank to mu(2N-mu)-1");
    verify_cmd->add_option("--n", opt.n, "Dimension N")->required();
    verify_cmd->add_option("--mu", opt.mu, "Rank mu")->required();
    verify_cmd->add_option("--samples", opt.samples, "Number of random states")->capture_default_str();
    verify_cmd->add_option("--seed", opt.seed, "Base seed (decimal or 0x-hex); sample i uses seed+i")
        ->capture_default_str();
    verify_cmd->add_option("--gap", opt.gap, "Minimum eigenvalue gap of sampled states")->capture_default_str();
    verify_cmd->add_option("--out", opt.out_path, "Output file (default: stdout)");
    opt.tol = kDefaultRankTol;
    add_tol(verify_cmd, "Relative singular-value threshold");
    verify_cmd->callback([&] { action = [&] { return cmd_verify_dimension(opt); }; });

    auto* sample_cmd = app.add_subcommand("sample", "Seeded random pure state, unitary or density matrix");
    sample_cmd->add_option("--kind", opt.kind, "pure | unitary | density")
        ->required()
        ->check(CLI::IsMember({"pure", "unitary", "density"}));
    sample_cmd->add_option("--n", opt.n, "Dimension N (pure states have N*N amplitudes)")->required();
    sample_cmd->add_option("--mu", opt.mu, "Rank for --kind density (default N)");
    sample_cmd->add_option("--seed", opt.seed, "Seed (decimal or 0x-hex)")->capture_default_str();
    sample_cmd->add_option("--out", opt.out_path, "Output file (default: stdout)");
    sample_cmd->callback([&] { action = [&] { return cmd_sample(opt); }; });

    std::vector<const char*> argv{"dmgeom"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        const Outcome outcome = action();
        write_output(opt, serialize(outcome.document), out);
        return outcome.exit_code;
    } catch (const ParseError& e) {
        err << "error: ParseError: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace dmgeom::cli
