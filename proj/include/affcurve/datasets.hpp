#pragma once

// Synthetic point sets on the real line, f(i) for i = 1..m:
//   Log2          log2(i)
//   SqrtShift     sqrt(i - 1)
//   HarmonicCap   20 (1 - 1/i)
//   GeometricCap  20 (1 - (5/6)^(i-1))
// The first two grow without bound, the last two converge to 20.

#include <affcurve/affinity.hpp>
#include <affcurve/errors.hpp>

#include <cmath>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace affcurve {

enum class SequenceFamily { Log2, SqrtShift, HarmonicCap, GeometricCap };

inline constexpr std::size_t kDefaultSequenceLength = 20;

struct SequenceKind {
    SequenceFamily family;
    std::size_t m = kDefaultSequenceLength;
};

inline std::optional<SequenceFamily> parse_sequence_family(std::string_view name)
{
    if (name == "log2")
        return SequenceFamily::Log2;
    if (name == "sqrt")
        return SequenceFamily::SqrtShift;
    if (name == "harmonic")
        return SequenceFamily::HarmonicCap;
    if (name == "geometric")
        return SequenceFamily::GeometricCap;
    return std::nullopt;
}

inline double sequence_value(SequenceFamily family, std::size_t i)
{
    const double x = static_cast<double>(i);
    switch (family) {
    case SequenceFamily::Log2:
        return std::log2(x);
    case SequenceFamily::SqrtShift:
        return std::sqrt(x - 1.0);
    case SequenceFamily::HarmonicCap:
        // 20 (i-1) / i rounds once; 20 (1 - 1/i) rounds twice and pushes the
        // last adjacent reciprocal gap above 19.
        return 20.0 * (x - 1.0) / x;
    case SequenceFamily::GeometricCap:
        return 20.0 * (1.0 - std::pow(5.0 / 6.0, x - 1.0));
    }
    return 0.0;
}

/// The m values f(1) < ... < f(m) as a 1-D point set. GeometricCap saturates
/// at 20 in double precision for m beyond about 200.
inline PointSet generate_sequence(const SequenceKind& kind)
{
    if (kind.m < 2)
        throw Error(ErrorCode::InvalidArgument, "sequence length must be >= 2");
    std::vector<double> xs;
    xs.reserve(kind.m);
    for (std::size_t i = 1; i <= kind.m; ++i)
        xs.push_back(sequence_value(kind.family, i));
    return PointSet::on_line(std::move(xs));
}

}  // namespace affcurve
