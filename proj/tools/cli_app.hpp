#pragma once

// affcurve command-line front end. run() is separate from main() so the
// tests can drive it with captured streams.
//
// Exit status: 0 success, 1 domain error, 2 usage error, 3 I/O error.

#include <affcurve/affcurve.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace affcurve::cli {

enum ExitStatus : int { kOk = 0, kDomainError = 1, kUsageError = 2, kIoError = 3 };

struct IngestFlags {
    std::string in;
    std::string format;
    std::string symmetrize = "require";
    std::string zero_policy = "reject";
    double epsilon = kDefaultEpsilonFloor;
    bool normalize = false;

    void attach(CLI::App& cmd)
    {
        cmd.add_option("--in", in, "Affinity matrix file")->required();
        cmd.add_option("--format", format, "Input format (default: from extension)")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd.add_option("--symmetrize", symmetrize, "Asymmetric data handling")
            ->check(CLI::IsMember({"sum", "require"}));
        cmd.add_option("--zero-policy", zero_policy, "Zero affinity handling")
            ->check(CLI::IsMember({"epsilon", "reject"}));
        cmd.add_option("--epsilon", epsilon, "Floor used by --zero-policy epsilon")
            ->check(CLI::PositiveNumber);
        cmd.add_flag("--normalize", normalize, "Divide by the largest finite affinity");
    }

    AffinityMatrix load(std::string& op) const
    {
        op = "load_matrix";
        LoadOptions options;
        options.symmetrize = symmetrize == "sum" ? SymmetrizeMode::Sum : SymmetrizeMode::Require;
        options.zero_policy = zero_policy == "epsilon" ? ZeroPolicy::Epsilon : ZeroPolicy::Reject;
        options.epsilon = epsilon;
        const FileFormat fmt = format.empty() ? format_for_path(in) : *parse_file_format(format);
        AffinityMatrix a = load_matrix(in, fmt, options);
        if (normalize) {
            op = "normalize";
            a = affcurve::normalize(a);
        }
        return a;
    }
};

inline FileFormat output_format(const std::string& flag, const std::string& path)
{
    return flag.empty() ? format_for_path(path) : *parse_file_format(flag);
}

inline std::string fixed6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Connectivity curves of thresholded affinity spaces", "affcurve"};
    app.require_subcommand(1, 1);

    // generate
    auto* generate = app.add_subcommand("generate", "Write a synthetic 1-D point set or its metric affinity");
    std::string kind;
    std::size_t m = kDefaultSequenceLength;
    std::string gen_out;
    std::string gen_as = "points";
    std::string gen_format;
    generate->add_option("--kind", kind, "Sequence family")
        ->required()
        ->check(CLI::IsMember({"log2", "sqrt", "harmonic", "geometric"}));
    generate->add_option("--m", m, "Number of points")->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
    generate->add_option("--out", gen_out, "Output file")->required();
    generate->add_option("--as", gen_as, "Emit the points or the metric affinity matrix")
        ->check(CLI::IsMember({"points", "matrix"}));
    generate->add_option("--format", gen_format, "Matrix output format (default: from extension)")
        ->check(CLI::IsMember({"csv", "json"}));

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "Compute and save the connectivity curve");
    IngestFlags curve_in;
    curve_in.attach(*curve_cmd);
    std::string curve_out;
    std::string curve_out_format;
    std::optional<int> quantize_digits;
    curve_cmd->add_option("--out", curve_out, "Curve output file")->required();
    curve_cmd->add_option("--out-format", curve_out_format, "Curve output format (default: from extension)")
        ->check(CLI::IsMember({"csv", "json"}));
    curve_cmd->add_option("--quantize", quantize_digits, "Round affinities to this many significant digits")
        ->check(CLI::Range(1, 17));

    // kappa
    auto* kappa_cmd = app.add_subcommand("kappa", "Print kappa at one threshold");
    IngestFlags kappa_in;
    kappa_in.attach(*kappa_cmd);
    double lambda = 0.0;
    kappa_cmd->add_option("--lambda", lambda, "Threshold")->required();

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "L1 distance between two rescaled curves");
    std::string curve_a;
    std::string curve_b;
    std::string compare_format;
    compare_cmd->add_option("--a", curve_a, "First curve file")->required();
    compare_cmd->add_option("--b", curve_b, "Second curve file")->required();
    compare_cmd->add_option("--format", compare_format, "Curve file format (default: from extension)")
        ->check(CLI::IsMember({"csv", "json"}));

    // oracle-check
    auto* oracle_cmd = app.add_subcommand("oracle-check", "Random equivalence run: topology vs graph vs sweep");
    std::size_t n_max = 10;
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    oracle_cmd->add_option("--n-max", n_max, "Largest matrix size")
        ->check(CLI::Range(std::size_t{2}, kDefaultOracleLimit));
    oracle_cmd->add_option("--trials", trials, "Number of random matrices");
    oracle_cmd->add_option("--seed", seed, "Random seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "affcurve: " << e.what() << '\n';
        return kUsageError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    std::string op = command;
    try {
        if (*generate) {
            op = "generate_sequence";
            const PointSet points = generate_sequence({*parse_sequence_family(kind), m});
            if (gen_as == "points") {
                op = "save_points";
                save_points(points, gen_out);
            } else {
                op = "metric_affinity";
                const AffinityMatrix a = metric_affinity(points);
                op = "save_matrix";
                save_matrix(a, gen_out, output_format(gen_format, gen_out));
            }
        } else if (*curve_cmd) {
            const AffinityMatrix a = curve_in.load(op);
            op = "connectivity_curve";
            CurveOptions options;
            options.quantize_digits = quantize_digits;
            const ConnectivityCurve curve = connectivity_curve(a, options);
            op = "save_curve";
            save_curve(curve, curve_out, output_format(curve_out_format, curve_out));
            op = "concavity_score";
            const std::string concavity =
                curve.breakpoints().size() >= 3 ? fixed6(concavity_score(curve)) : "na";
            out << "breakpoints=" << curve.breakpoints().size() << " kappa_min=" << curve.kappa_min()
                << " kappa_max=" << curve.kappa_inf() << " concavity=" << concavity << '\n';
        } else if (*kappa_cmd) {
            const AffinityMatrix a = kappa_in.load(op);
            op = "kappa_at";
            out << kappa_at(a, lambda) << '\n';
        } else if (*compare_cmd) {
            op = "load_curve";
            const ConnectivityCurve c1 = load_curve(curve_a, output_format(compare_format, curve_a));
            const ConnectivityCurve c2 = load_curve(curve_b, output_format(compare_format, curve_b));
            op = "compare";
            out << fixed6(compare(c1, c2)) << '\n';
        } else if (*oracle_cmd) {
            op = "check_equivalence";
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<std::size_t> size(2, n_max);
            std::size_t passed = 0;
            for (std::size_t t = 1; t <= trials; ++t) {
                const std::size_t n = size(rng);
                const AffinityMatrix a = random_affinity_matrix(rng, n);
                const EquivalenceReport report = check_equivalence(a);
                out << "trial " << t << " n=" << n << " probes=" << report.probes << ' '
                    << (report.pass ? "PASS" : "FAIL");
                if (!report.pass)
                    out << ' ' << report.failure;
                out << '\n';
                passed += report.pass ? 1 : 0;
            }
            out << "summary: " << passed << '/' << trials << " PASS\n";
            return passed == trials ? kOk : kDomainError;
        }
    } catch (const Error& e) {
        err << "affcurve " << command << ": " << op << ": " << e.what() << '\n';
        return e.is_io() ? kIoError : kDomainError;
    } catch (const std::exception& e) {
        err << "affcurve " << command << ": " << op << ": " << e.what() << '\n';
        return kDomainError;
    }
    return kOk;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace affcurve::cli
