// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <affcurve/affcurve.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#ifndef AFFCURVE_CLI_PATH
#error "AFFCURVE_CLI_PATH must point at the affcurve executable"
#endif

namespace fs = std::filesystem;
using namespace affcurve;

namespace {

constexpr std::uint64_t kCorpusSeed = 20240601;
constexpr std::size_t kCorpusSize = 200;
constexpr double kEquivalenceBudgetSeconds = 60.0;
constexpr double kScaleRelTolerance = 1e-12;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Check {
    Outcome* out;
    bool operator()(bool cond, const std::string& what) const
    {
        if (!cond && out->pass) {
            out->pass = false;
            out->detail = what;
        }
        return cond;
    }
};

std::vector<AffinityMatrix> corpus()
{
    std::mt19937_64 rng(kCorpusSeed);
    std::uniform_int_distribution<std::size_t> size(2, 10);
    std::vector<AffinityMatrix> out;
    for (std::size_t t = 0; t < kCorpusSize; ++t)
        out.push_back(random_affinity_matrix(rng, size(rng)));
    return out;
}

AffinityMatrix x_m(SequenceFamily family)
{
    return metric_affinity(generate_sequence({family, 20}));
}

Outcome oracle_equivalence()
{
    Outcome o;
    Check check{&o};
    const auto start = std::chrono::steady_clock::now();
    std::size_t probes = 0;
    std::size_t t = 0;
    for (const auto& a : corpus()) {
        ++t;
        const auto report = check_equivalence(a);
        probes += report.probes;
        if (!check(report.pass, "matrix " + std::to_string(t) + ": " + report.failure))
            break;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check(secs < kEquivalenceBudgetSeconds, "took " + std::to_string(secs) + " s");
    if (o.pass)
        o.detail = std::to_string(kCorpusSize) + " matrices, " + std::to_string(probes) + " thresholds, " +
                   std::to_string(secs) + " s";
    return o;
}

Outcome monotonicity_and_stabilization()
{
    Outcome o;
    Check check{&o};
    for (const auto& a : corpus()) {
        const auto curve = connectivity_curve(a);
        const auto& v = curve.values();
        for (std::size_t k = 1; k < v.size(); ++k)
            check(v[k - 1] <= v[k], "values not nondecreasing");
        for (auto x : v)
            check(1 <= x && x <= a.size(), "value outside [1, n]");
        check(curve.kappa_inf() == components_graph(a).block_count(),
              "final value differs from infinity-pattern component count");
        if (!curve.breakpoints().empty())
            check(evaluate(curve, curve.breakpoints().back() * 1.5) == curve.kappa_inf(),
                  "not stabilized past the last breakpoint");
    }
    if (o.pass)
        o.detail = std::to_string(kCorpusSize) + " curves";
    return o;
}

Outcome point_oracle_consistency()
{
    Outcome o;
    Check check{&o};
    std::mt19937_64 rng(kCorpusSeed + 3);
    std::uniform_real_distribution<double> lexp(-4.0, 4.0);
    std::size_t samples = 0;
    for (std::size_t t = 0; t < 120; ++t) {
        const std::size_t n = 2 + t % 30;
        const auto a = t % 2 ? random_affinity_matrix(rng, n) : random_continuous_matrix(rng, n);
        const auto curve = connectivity_curve(a);
        std::vector<double> lambdas = probe_thresholds(a);
        lambdas.push_back(std::numeric_limits<double>::min());
        lambdas.push_back(std::numeric_limits<double>::max());
        for (double b : curve.breakpoints())
            lambdas.push_back(std::nextafter(b, 0.0));
        while (lambdas.size() < 50)
            lambdas.push_back(std::pow(10.0, lexp(rng)));
        for (double l : lambdas) {
            ++samples;
            check(evaluate(curve, l) == kappa_at(a, l), "mismatch at lambda=" + std::to_string(l));
        }
    }
    if (o.pass)
        o.detail = "120 matrices, " + std::to_string(samples) + " thresholds";
    return o;
}

Outcome harmonic_exactness()
{
    Outcome o;
    Check check{&o};
    const auto points = generate_sequence({SequenceFamily::HarmonicCap, 20});
    const auto xs = points.coords();
    const auto curve = connectivity_curve(metric_affinity(points));
    if (!check(curve.breakpoints().size() == 19,
               "expected 19 breakpoints, got " + std::to_string(curve.breakpoints().size())))
        return o;
    for (std::size_t i = 1; i <= 19; ++i) {
        const double b = curve.breakpoints()[i - 1];
        check(b == 1.0 / (xs[i] - xs[i - 1]), "breakpoint " + std::to_string(i) + " is not the reciprocal gap");
        const double exact = static_cast<double>(i * (i + 1)) / 20.0;
        check(std::abs(b - exact) <= 1e-12 * exact, "breakpoint " + std::to_string(i) + " far from i(i+1)/20");
    }
    const std::array<std::pair<double, std::size_t>, 6> expected{{
        {0.05, 1}, {0.1, 2}, {1.0, 5}, {9.55, 14}, {19.0, 20}, {std::nextafter(19.0, 20.0), 20}}};
    for (auto [lambda, kappa] : expected)
        check(evaluate(curve, lambda) == kappa, "kappa(" + std::to_string(lambda) + ") = " +
                                                    std::to_string(evaluate(curve, lambda)) + ", expected " +
                                                    std::to_string(kappa));
    if (o.pass)
        o.detail = "19 breakpoints; kappa(0.05,0.1,1,9.55,19,19+)=1,2,5,14,20,20";
    return o;
}

Outcome concavity_signs()
{
    Outcome o;
    Check check{&o};
    const double s1 = concavity_score(connectivity_curve(x_m(SequenceFamily::Log2)));
    const double s2 = concavity_score(connectivity_curve(x_m(SequenceFamily::SqrtShift)));
    const double s3 = concavity_score(connectivity_curve(x_m(SequenceFamily::HarmonicCap)));
    const double s4 = concavity_score(connectivity_curve(x_m(SequenceFamily::GeometricCap)));
    check(s3 > 0, "X3 not concave");
    check(s4 > 0, "X4 not concave");
    check(s2 < 0, "X2 not convex");
    check(std::abs(s1) < std::abs(s2) && std::abs(s1) < std::abs(s3) && std::abs(s1) < std::abs(s4),
          "|X1| is not the smallest");

    const auto c3 = connectivity_curve(x_m(SequenceFamily::HarmonicCap));
    const auto& b3 = c3.breakpoints();
    check(evaluate(c3, (b3.front() + b3.back()) / 2) == 14, "X3 midpoint kappa != 14");
    const auto c2 = connectivity_curve(x_m(SequenceFamily::SqrtShift));
    const auto& b2 = c2.breakpoints();
    check(evaluate(c2, (b2.front() + b2.back()) / 2) == 7, "X2 midpoint kappa != 7");
    // Chord value at the midpoint: halfway between kappa(b_1) = 2 and n = 20.
    check(c3.values()[1] + (c3.n() - c3.values()[1]) / 2 == 11, "X3 chord midpoint != 11");

    std::ostringstream os;
    os << "X1=" << s1 << " X2=" << s2 << " X3=" << s3 << " X4=" << s4;
    if (o.pass)
        o.detail = os.str();
    return o;
}

Outcome trivial_topologies()
{
    Outcome o;
    Check check{&o};
    for (std::size_t n = 1; n <= 12; ++n) {
        const auto ones = validate(RawMatrix(n, std::vector<double>(n, kInfinity)));
        RawMatrix raw(n, std::vector<double>(n, 1.0));
        for (std::size_t i = 0; i < n; ++i)
            raw[i][i] = kInfinity;
        const auto disc = validate(raw);
        const auto c1 = connectivity_curve(ones);
        const auto c2 = connectivity_curve(disc);
        for (double l : {1e-9, 0.5, std::nextafter(1.0, 0.0), 1.0, 1.5, 1e9}) {
            check(evaluate(c1, l) == 1 && kappa_at(ones, l) == 1, "A1 kappa != 1");
            const std::size_t want = l < 1.0 ? 1 : n;
            check(evaluate(c2, l) == want && kappa_at(disc, l) == want, "A2 kappa wrong");
        }
        check(components_topological(ones).block_count() == 1, "A1 not connected");
        check(components_topological(disc).block_count() == n, "A2 not totally disconnected");
    }
    if (o.pass)
        o.detail = "n=1..12";
    return o;
}

Outcome scale_equivariance()
{
    Outcome o;
    Check check{&o};
    std::mt19937_64 rng(kCorpusSeed + 7);
    const std::array<double, 3> factors{0.1, 3.0, 10.0};
    for (std::size_t t = 0; t < 150; ++t) {
        const std::size_t n = 2 + t % 20;
        const auto a = t % 2 ? random_affinity_matrix(rng, n) : random_continuous_matrix(rng, n);
        const double c = factors[t % 3];
        const auto base = connectivity_curve(a);
        const auto scaled = connectivity_curve(scale(a, c));
        check(base.values() == scaled.values(), "values differ after scaling");
        if (!check(base.breakpoints().size() == scaled.breakpoints().size(), "breakpoint count differs"))
            continue;
        for (std::size_t k = 0; k < base.breakpoints().size(); ++k) {
            const double want = c * base.breakpoints()[k];
            check(std::abs(scaled.breakpoints()[k] - want) <= kScaleRelTolerance * want,
                  "breakpoint not scaled within 1e-12");
        }
    }
    if (o.pass)
        o.detail = "150 matrices, c in {0.1, 3, 10}";
    return o;
}

Outcome round_trip_io(const fs::path& dir)
{
    Outcome o;
    Check check{&o};
    std::mt19937_64 rng(kCorpusSeed + 11);
    for (std::size_t t = 0; t < 60; ++t) {
        const std::size_t n = 1 + t % 15;
        const auto a = t % 2 ? random_affinity_matrix(rng, n) : random_continuous_matrix(rng, n, 0.2);
        for (auto fmt : {FileFormat::Csv, FileFormat::Json}) {
            const auto p = dir / (fmt == FileFormat::Csv ? "m.csv" : "m.json");
            save_matrix(a, p, fmt);
            check(load_matrix(p, fmt) == a, "matrix round trip");
        }
        const auto curve = connectivity_curve(a);
        save_curve(curve, dir / "c.json", FileFormat::Json);
        check(load_curve(dir / "c.json", FileFormat::Json) == curve, "curve JSON round trip");
        save_curve(curve, dir / "c.csv", FileFormat::Csv);
        check(parse_curve_csv(detail::read_file(dir / "c.csv"), curve.n()) == curve, "curve CSV round trip");
    }
    const auto fixture = connectivity_curve(validate({{kInfinity, 2}, {2, kInfinity}}));
    save_curve(fixture, dir / "fixture.csv", FileFormat::Csv);
    check(detail::read_file(dir / "fixture.csv") == "lambda_low,lambda_high,kappa\n0,2,1\n2,inf,2\n",
          "2x2 fixture CSV is not byte-exact");
    if (o.pass)
        o.detail = "60 matrices x 2 formats, curves, 2x2 fixture";
    return o;
}

struct Process {
    int status;
    std::string output;
};

Process shell(const std::string& cmd)
{
    Process p{-1, {}};
    FILE* pipe = ::popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe)
        return p;
    std::array<char, 4096> buf;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe))
        p.output.append(buf.data(), got);
    const int raw = ::pclose(pipe);
    p.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return p;
}

Outcome cli_end_to_end(const fs::path& dir)
{
    Outcome o;
    Check check{&o};
    const std::string cli = AFFCURVE_CLI_PATH;
    const std::string x3 = (dir / "x3.csv").string();
    const std::string x3curve = (dir / "x3curve.csv").string();

    auto gen = shell(cli + " generate --kind harmonic --m 20 --as matrix --out " + x3);
    if (!check(gen.status == 0, "generate failed: " + gen.output))
        return o;
    auto cur = shell(cli + " curve --in " + x3 + " --out " + x3curve);
    if (!check(cur.status == 0, "curve failed: " + cur.output))
        return o;
    check(cur.output.rfind("breakpoints=19 kappa_min=1 kappa_max=20 concavity=", 0) == 0,
          "unexpected curve summary: " + cur.output);

    const auto curve = parse_curve_csv(detail::read_file(x3curve));
    check(curve.breakpoints().size() == 19, "curve file does not have 19 breakpoints");
    check(curve.values()[1] == 2 && curve.values().back() == 20, "kappa range above b_1 is not 2..20");

    const std::array<std::pair<const char*, const char*>, 6> points{{
        {"0.05", "1\n"}, {"0.1", "2\n"}, {"1", "5\n"}, {"9.55", "14\n"}, {"19", "20\n"}, {"19.000001", "20\n"}}};
    for (auto [lambda, want] : points) {
        auto k = shell(cli + " kappa --in " + x3 + " --lambda " + lambda);
        check(k.status == 0 && k.output == want,
              std::string("kappa --lambda ") + lambda + " printed '" + k.output + "'");
    }

    auto oracle = shell(cli + " oracle-check --n-max 8 --trials 50 --seed 7");
    check(oracle.status == 0, "oracle-check exit status " + std::to_string(oracle.status));
    check(oracle.output.find("summary: 50/50 PASS") != std::string::npos, "oracle-check did not report 50/50");
    check(oracle.output.find("FAIL") == std::string::npos, "oracle-check reported a FAIL");
    if (o.pass)
        o.detail = "generate -> curve -> kappa reproduce X3 values; oracle-check 50/50 PASS";
    return o;
}

}  // namespace

int main()
{
    const fs::path dir = fs::temp_directory_path() / "affcurve_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 oracle equivalence (topology == graph == sweep)", oracle_equivalence},
        {"2 monotonicity and stabilization", monotonicity_and_stabilization},
        {"3 point-oracle consistency", point_oracle_consistency},
        {"4 X3 exactness", harmonic_exactness},
        {"5 concavity signs", concavity_signs},
        {"6 trivial and discrete topologies", trivial_topologies},
        {"7 scale equivariance", scale_equivariance},
        {"8 round-trip I/O", [&] { return round_trip_io(dir); }},
        {"9 CLI end-to-end", [&] { return cli_end_to_end(dir); }},
    };

    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << " -- " << o.detail << std::endl;
        failures += o.pass ? 0 : 1;
    }
    fs::remove_all(dir);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
