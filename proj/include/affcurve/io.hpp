#pragma once

// Text formats for matrices, curves and point sets.
//
// Matrix CSV:  n lines of n comma-separated tokens, "inf" (any case) for
//              Infinity, no header.
// Matrix JSON: {"n":N,"entries":[[...],...]} with Infinity as the string "inf".
// Curve CSV:   header "lambda_low,lambda_high,kappa", one row per interval,
//              first lambda_low is 0 and last lambda_high is "inf".
// Curve JSON:  {"n":N,"breakpoints":[...],"values":[...]}.
// Points CSV:  one point per line, 1 or 2 comma-separated coordinates.
//
// Numbers are written as the shortest fixed-notation decimal that parses back
// to the same double, and parsed with std::from_chars, so neither direction
// depends on the locale.

#include <affcurve/affinity.hpp>
#include <affcurve/curve.hpp>
#include <affcurve/errors.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace affcurve {

enum class FileFormat { Csv, Json };

inline std::optional<FileFormat> parse_file_format(std::string_view name)
{
    if (name == "csv")
        return FileFormat::Csv;
    if (name == "json")
        return FileFormat::Json;
    return std::nullopt;
}

/// Format implied by the extension: ".json" is JSON, anything else CSV.
inline FileFormat format_for_path(const std::filesystem::path& path)
{
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".json" ? FileFormat::Json : FileFormat::Csv;
}

struct LoadOptions {
    SymmetrizeMode symmetrize = SymmetrizeMode::Require;
    ZeroPolicy zero_policy = ZeroPolicy::Reject;
    double epsilon = kDefaultEpsilonFloor;
};

// ---------------------------------------------------------------------------
// Tokens

inline std::string format_number(double v)
{
    if (v == kInfinity)
        return "inf";
    char buf[512];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    if (res.ec != std::errc{})
        res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

inline bool is_inf_token(std::string_view s)
{
    return s.size() == 3 && std::tolower(static_cast<unsigned char>(s[0])) == 'i' &&
           std::tolower(static_cast<unsigned char>(s[1])) == 'n' &&
           std::tolower(static_cast<unsigned char>(s[2])) == 'f';
}

/// Finite decimal or "inf". line/column are 1-based and only used for errors.
inline double parse_number(std::string_view token, std::size_t line, std::size_t column)
{
    token = trim(token);
    if (is_inf_token(token))
        return kInfinity;
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (token.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw Error(ErrorCode::ParseError, "bad number '" + std::string(token) + "'", line, column);
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

/// Lines without terminators; trailing blank lines dropped, inner blank lines kept.
inline std::vector<std::string_view> lines(std::string_view text)
{
    auto out = split(text, '\n');
    while (!out.empty() && trim(out.back()).empty())
        out.pop_back();
    return out;
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw Error(ErrorCode::IoError, "read failed for '" + path.string() + "'");
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out)
        throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

inline nlohmann::ordered_json json_number(double v)
{
    if (v == kInfinity)
        return "inf";
    return v;
}

inline double json_to_double(const nlohmann::json& j, std::size_t row, std::size_t col)
{
    if (j.is_string() && is_inf_token(j.get_ref<const std::string&>()))
        return kInfinity;
    if (j.is_number())
        return j.get<double>();
    throw Error(ErrorCode::ParseError, "expected a number or \"inf\"", row, col);
}

inline nlohmann::json parse_json(std::string_view text)
{
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what(), e.byte);
    }
}

inline std::size_t json_count(const nlohmann::json& obj, const char* key)
{
    if (!obj.contains(key) || !obj[key].is_number_integer() || obj[key].get<long long>() < 0)
        throw Error(ErrorCode::ParseError, std::string("missing or invalid \"") + key + "\"");
    return obj[key].get<std::size_t>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Matrices

inline RawMatrix parse_matrix_csv(std::string_view text)
{
    RawMatrix raw;
    const auto rows = detail::lines(text);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (detail::trim(rows[r]).empty())
            throw Error(ErrorCode::ParseError, "blank line", r + 1);
        std::vector<double> row;
        const auto tokens = detail::split(rows[r], ',');
        for (std::size_t c = 0; c < tokens.size(); ++c)
            row.push_back(detail::parse_number(tokens[c], r + 1, c + 1));
        raw.push_back(std::move(row));
    }
    return raw;
}

inline RawMatrix parse_matrix_json(std::string_view text)
{
    const auto doc = detail::parse_json(text);
    if (!doc.is_object())
        throw Error(ErrorCode::ParseError, "top level must be an object");
    const std::size_t n = detail::json_count(doc, "n");
    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw Error(ErrorCode::ParseError, "missing \"entries\" array");
    const auto& entries = doc["entries"];
    if (entries.size() != n)
        throw Error(ErrorCode::ParseError, "\"entries\" has " + std::to_string(entries.size()) +
                                               " rows but n=" + std::to_string(n));
    RawMatrix raw;
    for (std::size_t i = 0; i < n; ++i) {
        if (!entries[i].is_array())
            throw Error(ErrorCode::ParseError, "row is not an array", i);
        std::vector<double> row;
        for (std::size_t j = 0; j < entries[i].size(); ++j)
            row.push_back(detail::json_to_double(entries[i][j], i, j));
        raw.push_back(std::move(row));
    }
    return raw;
}

inline RawMatrix parse_matrix(std::string_view text, FileFormat format)
{
    return format == FileFormat::Csv ? parse_matrix_csv(text) : parse_matrix_json(text);
}

/// Symmetrization, then the zero policy, then validation.
inline AffinityMatrix prepare_matrix(RawMatrix raw, const LoadOptions& options = {})
{
    raw = symmetrize(std::move(raw), options.symmetrize);
    if (options.zero_policy == ZeroPolicy::Epsilon)
        raw = apply_zero_floor(std::move(raw), options.epsilon);
    return validate(raw);
}

inline std::string format_matrix_csv(const AffinityMatrix& a)
{
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (j > 0)
                out += ',';
            out += format_number(a(i, j).value());
        }
        out += '\n';
    }
    return out;
}

inline std::string format_matrix_json(const AffinityMatrix& a)
{
    nlohmann::ordered_json doc;
    doc["n"] = a.size();
    auto entries = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < a.size(); ++j)
            row.push_back(detail::json_number(a(i, j).value()));
        entries.push_back(std::move(row));
    }
    doc["entries"] = std::move(entries);
    return doc.dump() + '\n';
}

inline std::string format_matrix(const AffinityMatrix& a, FileFormat format)
{
    return format == FileFormat::Csv ? format_matrix_csv(a) : format_matrix_json(a);
}

inline AffinityMatrix load_matrix(const std::filesystem::path& path, FileFormat format,
                                  const LoadOptions& options = {})
{
    return prepare_matrix(parse_matrix(detail::read_file(path), format), options);
}

inline void save_matrix(const AffinityMatrix& a, const std::filesystem::path& path, FileFormat format)
{
    detail::write_file(path, format_matrix(a, format));
}

// ---------------------------------------------------------------------------
// Curves

inline constexpr std::string_view kCurveCsvHeader = "lambda_low,lambda_high,kappa";

inline std::string format_curve_csv(const ConnectivityCurve& curve)
{
    const auto& bp = curve.breakpoints();
    const auto& vals = curve.values();
    std::string out(kCurveCsvHeader);
    out += '\n';
    for (std::size_t k = 0; k < vals.size(); ++k) {
        out += k == 0 ? "0" : format_number(bp[k - 1]);
        out += ',';
        out += k < bp.size() ? format_number(bp[k]) : "inf";
        out += ',';
        out += std::to_string(vals[k]);
        out += '\n';
    }
    return out;
}

inline std::string format_curve_json(const ConnectivityCurve& curve)
{
    nlohmann::ordered_json doc;
    doc["n"] = curve.n();
    doc["breakpoints"] = curve.breakpoints();
    doc["values"] = curve.values();
    return doc.dump() + '\n';
}

inline std::string format_curve(const ConnectivityCurve& curve, FileFormat format)
{
    return format == FileFormat::Csv ? format_curve_csv(curve) : format_curve_json(curve);
}

/// The CSV form does not carry n; when not supplied it is taken to be the
/// final kappa value, which is exact whenever the space stabilizes at n.
inline ConnectivityCurve parse_curve_csv(std::string_view text, std::optional<std::size_t> n = std::nullopt)
{
    const auto rows = detail::lines(text);
    if (rows.empty() || detail::trim(rows[0]) != kCurveCsvHeader)
        throw Error(ErrorCode::ParseError, "expected header '" + std::string(kCurveCsvHeader) + "'", 1);
    if (rows.size() < 2)
        throw Error(ErrorCode::ParseError, "no intervals", 2);

    std::vector<double> breakpoints;
    std::vector<std::size_t> values;
    double expected_low = 0.0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const std::size_t line = r + 1;
        const auto tokens = detail::split(rows[r], ',');
        if (tokens.size() != 3)
            throw Error(ErrorCode::ParseError, "expected 3 fields", line);
        const double low = detail::parse_number(tokens[0], line, 1);
        const double high = detail::parse_number(tokens[1], line, 2);
        const double kappa = detail::parse_number(tokens[2], line, 3);
        if (low != expected_low)
            throw Error(ErrorCode::ParseError, "interval does not start where the previous ended", line, 1);
        const bool last = r + 1 == rows.size();
        if (last != (high == kInfinity))
            throw Error(ErrorCode::ParseError, "only the last interval may end at inf", line, 2);
        if (kappa < 1 || kappa != std::floor(kappa) || kappa > 1e15)
            throw Error(ErrorCode::ParseError, "kappa must be a positive integer", line, 3);
        if (r > 1)
            breakpoints.push_back(low);
        values.push_back(static_cast<std::size_t>(kappa));
        expected_low = high;
    }
    const std::size_t size = n.value_or(values.back());
    return ConnectivityCurve(size, std::move(breakpoints), std::move(values));
}

inline ConnectivityCurve parse_curve_json(std::string_view text)
{
    const auto doc = detail::parse_json(text);
    if (!doc.is_object())
        throw Error(ErrorCode::ParseError, "top level must be an object");
    const std::size_t n = detail::json_count(doc, "n");
    if (!doc.contains("breakpoints") || !doc["breakpoints"].is_array() || !doc.contains("values") ||
        !doc["values"].is_array())
        throw Error(ErrorCode::ParseError, "missing \"breakpoints\" or \"values\" array");
    std::vector<double> breakpoints;
    for (const auto& b : doc["breakpoints"]) {
        if (!b.is_number())
            throw Error(ErrorCode::ParseError, "breakpoint is not a number");
        breakpoints.push_back(b.get<double>());
    }
    std::vector<std::size_t> values;
    for (const auto& v : doc["values"]) {
        if (!v.is_number_integer() || v.get<long long>() < 1)
            throw Error(ErrorCode::ParseError, "value is not a positive integer");
        values.push_back(v.get<std::size_t>());
    }
    return ConnectivityCurve(n, std::move(breakpoints), std::move(values));
}

inline ConnectivityCurve parse_curve(std::string_view text, FileFormat format)
{
    return format == FileFormat::Csv ? parse_curve_csv(text) : parse_curve_json(text);
}

inline ConnectivityCurve load_curve(const std::filesystem::path& path, FileFormat format)
{
    return parse_curve(detail::read_file(path), format);
}

inline void save_curve(const ConnectivityCurve& curve, const std::filesystem::path& path, FileFormat format)
{
    detail::write_file(path, format_curve(curve, format));
}

// ---------------------------------------------------------------------------
// Point sets

inline std::string format_points_csv(const PointSet& points)
{
    std::string out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto p = points.point(i);
        for (std::size_t d = 0; d < p.size(); ++d) {
            if (d > 0)
                out += ',';
            out += format_number(p[d]);
        }
        out += '\n';
    }
    return out;
}

inline PointSet parse_points_csv(std::string_view text)
{
    const auto rows = detail::lines(text);
    if (rows.empty())
        throw Error(ErrorCode::ParseError, "no points", 1);
    std::vector<double> coords;
    std::size_t dim = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto tokens = detail::split(rows[r], ',');
        if (r == 0)
            dim = tokens.size();
        if (tokens.size() != dim || dim > 2)
            throw Error(ErrorCode::ParseError, "expected " + std::to_string(dim) + " coordinates", r + 1);
        for (std::size_t c = 0; c < tokens.size(); ++c) {
            const double v = detail::parse_number(tokens[c], r + 1, c + 1);
            if (v == kInfinity)
                throw Error(ErrorCode::ParseError, "coordinates must be finite", r + 1, c + 1);
            coords.push_back(v);
        }
    }
    return PointSet(dim, std::move(coords));
}

inline void save_points(const PointSet& points, const std::filesystem::path& path)
{
    detail::write_file(path, format_points_csv(points));
}

inline PointSet load_points(const std::filesystem::path& path)
{
    return parse_points_csv(detail::read_file(path));
}

}  // namespace affcurve
