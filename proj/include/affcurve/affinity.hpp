#pragma once

// Affinity spaces on finite sets: a symmetric, strictly positive extended-real
// function on X x X that is +inf on the diagonal.

#include <affcurve/errors.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace affcurve {

/// Extended real used as raw matrix input. +inf marks an infinite affinity.
using RawMatrix = std::vector<std::vector<double>>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Default replacement for zero affinities (no shared boundary, no flow).
inline constexpr double kDefaultEpsilonFloor = 1e-12;

/// A strictly positive real or the distinguished value Infinity. Infinity is
/// the IEEE +inf, never a large finite sentinel, so comparisons against any
/// finite threshold are exact.
class AffinityValue {
public:
    /// Default value is Infinity, the self-affinity of every point.
    constexpr AffinityValue() noexcept = default;

    static constexpr AffinityValue infinity() noexcept { return AffinityValue{}; }

    /// Throws NonPositiveEntry for v <= 0 and InvalidEntry for NaN.
    static AffinityValue of(double v)
    {
        if (std::isnan(v))
            throw Error(ErrorCode::InvalidEntry, "affinity is NaN");
        if (!(v > 0.0))
            throw Error(ErrorCode::NonPositiveEntry, "affinity must be > 0");
        return AffinityValue{v};
    }

    constexpr bool is_infinite() const noexcept { return value_ == kInfinity; }
    constexpr bool is_finite() const noexcept { return value_ != kInfinity; }
    constexpr double value() const noexcept { return value_; }

    friend constexpr bool operator==(AffinityValue, AffinityValue) noexcept = default;
    friend constexpr auto operator<=>(AffinityValue a, AffinityValue b) noexcept
    {
        return a.value_ <=> b.value_;
    }

private:
    constexpr explicit AffinityValue(double v) noexcept : value_(v) {}

    double value_ = kInfinity;
};

/// Dense symmetric n x n affinity matrix with Infinity on the diagonal.
/// Only obtainable through validate() and the builders below, so every
/// instance satisfies the affinity axioms.
class AffinityMatrix {
public:
    std::size_t size() const noexcept { return n_; }

    AffinityValue operator()(std::size_t i, std::size_t j) const noexcept
    {
        return cells_[i * n_ + j];
    }

    AffinityValue at(std::size_t i, std::size_t j) const
    {
        if (i >= n_ || j >= n_)
            throw Error(ErrorCode::IndexOutOfRange, "matrix index", i, j);
        return (*this)(i, j);
    }

    bool is_infinite(std::size_t i, std::size_t j) const noexcept
    {
        return (*this)(i, j).is_infinite();
    }

    RawMatrix to_raw() const
    {
        RawMatrix raw(n_, std::vector<double>(n_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                raw[i][j] = (*this)(i, j).value();
        return raw;
    }

    friend bool operator==(const AffinityMatrix&, const AffinityMatrix&) = default;

private:
    AffinityMatrix(std::size_t n, std::vector<AffinityValue> cells)
        : n_(n), cells_(std::move(cells))
    {
    }

    friend AffinityMatrix validate(const RawMatrix& raw);

    std::size_t n_ = 0;
    std::vector<AffinityValue> cells_;
};

/// Checks the affinity axioms on raw data and returns the matrix.
/// Cells are visited in row-major order; the first violation is reported.
inline AffinityMatrix validate(const RawMatrix& raw)
{
    const std::size_t n = raw.size();
    if (n == 0)
        throw Error(ErrorCode::NotSquare, "matrix has no rows");
    for (std::size_t i = 0; i < n; ++i)
        if (raw[i].size() != n)
            throw Error(ErrorCode::NotSquare,
                        "row " + std::to_string(i) + " has " +
                            std::to_string(raw[i].size()) + " entries, expected " +
                            std::to_string(n));

    std::vector<AffinityValue> cells(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = raw[i][j];
            if (std::isnan(v))
                throw Error(ErrorCode::InvalidEntry, "NaN entry", i, j);
            if (i == j) {
                if (v != kInfinity)
                    throw Error(ErrorCode::FiniteDiagonal, "diagonal must be inf", i);
                continue;
            }
            if (!(v > 0.0))
                throw Error(ErrorCode::NonPositiveEntry, "", i, j);
            if (j > i && raw[j][i] != v)
                throw Error(ErrorCode::AsymmetricEntry, "", i, j);
            cells[i * n + j] = AffinityValue::of(v);
        }
    }
    return AffinityMatrix(n, std::move(cells));
}

/// Sorted distinct finite off-diagonal values of A.
inline std::vector<double> finite_values(const AffinityMatrix& a)
{
    std::vector<double> out;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (a(i, j).is_finite())
                out.push_back(a(i, j).value());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline void require_positive_threshold(double lambda)
{
    if (!(lambda > 0.0))
        throw Error(ErrorCode::NonPositiveThreshold,
                    "threshold must be > 0, got " + std::to_string(lambda));
}

/// Thresholding at lambda: entries strictly above lambda become Infinity,
/// entries at or below lambda are kept.
inline AffinityMatrix threshold(const AffinityMatrix& a, double lambda)
{
    require_positive_threshold(lambda);
    RawMatrix raw = a.to_raw();
    for (auto& row : raw)
        for (double& v : row)
            if (v > lambda)
                v = kInfinity;
    return validate(raw);
}

/// Divides every finite entry by the largest finite off-diagonal entry.
inline AffinityMatrix normalize(const AffinityMatrix& a)
{
    const auto values = finite_values(a);
    if (values.empty())
        throw Error(ErrorCode::AllInfinite, "no finite off-diagonal entry to normalize by");
    const double max_value = values.back();
    RawMatrix raw = a.to_raw();
    for (auto& row : raw)
        for (double& v : row)
            if (v != kInfinity)
                v /= max_value;
    return validate(raw);
}

/// Multiplies every finite entry by c > 0; Infinity stays fixed.
inline AffinityMatrix scale(const AffinityMatrix& a, double c)
{
    if (!(c > 0.0) || !std::isfinite(c))
        throw Error(ErrorCode::InvalidArgument, "scale factor must be finite and > 0");
    RawMatrix raw = a.to_raw();
    for (auto& row : raw)
        for (double& v : row)
            if (v != kInfinity)
                v *= c;
    return validate(raw);
}

// ---------------------------------------------------------------------------
// Raw-data preparation for ingestion

enum class SymmetrizeMode { Require, Sum };
enum class ZeroPolicy { Reject, Epsilon };

/// Sum mode replaces each off-diagonal pair by raw_ij + raw_ji. Require mode
/// returns the data unchanged and throws SymmetrizationRejected on the first
/// asymmetric pair.
inline RawMatrix symmetrize(RawMatrix raw, SymmetrizeMode mode)
{
    const std::size_t n = raw.size();
    for (std::size_t i = 0; i < n; ++i)
        if (raw[i].size() != n)
            throw Error(ErrorCode::NotSquare, "row " + std::to_string(i) + " length");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (mode == SymmetrizeMode::Require) {
                if (raw[i][j] != raw[j][i] && !(std::isnan(raw[i][j]) && std::isnan(raw[j][i])))
                    throw Error(ErrorCode::SymmetrizationRejected, "asymmetric pair", i, j);
            } else {
                const double s = raw[i][j] + raw[j][i];
                raw[i][j] = s;
                raw[j][i] = s;
            }
        }
    }
    return raw;
}

/// Replaces exact zeros off the diagonal with epsilon. Negative values are
/// left alone so validation still rejects them.
inline RawMatrix apply_zero_floor(RawMatrix raw, double epsilon = kDefaultEpsilonFloor)
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw Error(ErrorCode::InvalidArgument, "epsilon floor must be finite and > 0");
    for (std::size_t i = 0; i < raw.size(); ++i)
        for (std::size_t j = 0; j < raw[i].size(); ++j)
            if (i != j && raw[i][j] == 0.0)
                raw[i][j] = epsilon;
    return raw;
}

// ---------------------------------------------------------------------------
// Point sets and geometric builders

/// Nonempty list of points in R^1 or R^2, stored row-major.
class PointSet {
public:
    PointSet(std::size_t dim, std::vector<double> coords)
        : dim_(dim), coords_(std::move(coords))
    {
        if (dim_ != 1 && dim_ != 2)
            throw Error(ErrorCode::InvalidPointSet, "dimension must be 1 or 2");
        if (coords_.empty() || coords_.size() % dim_ != 0)
            throw Error(ErrorCode::InvalidPointSet, "need a nonempty whole number of points");
        for (double c : coords_)
            if (!std::isfinite(c))
                throw Error(ErrorCode::InvalidPointSet, "coordinates must be finite");
    }

    static PointSet on_line(std::vector<double> xs) { return PointSet(1, std::move(xs)); }

    static PointSet in_plane(std::span<const std::pair<double, double>> pts)
    {
        std::vector<double> coords;
        coords.reserve(pts.size() * 2);
        for (auto [x, y] : pts) {
            coords.push_back(x);
            coords.push_back(y);
        }
        return PointSet(2, std::move(coords));
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return coords_.size() / dim_; }
    std::span<const double> point(std::size_t i) const
    {
        return std::span<const double>(coords_).subspan(i * dim_, dim_);
    }
    std::span<const double> coords() const noexcept { return coords_; }

    double distance(std::size_t i, std::size_t j) const
    {
        const auto p = point(i);
        const auto q = point(j);
        if (dim_ == 1)
            return std::abs(p[0] - q[0]);
        return std::hypot(p[0] - q[0], p[1] - q[1]);
    }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::size_t dim_;
    std::vector<double> coords_;
};

/// A_ij = 1 / |p_i - p_j|; coincident distinct points get Infinity.
inline AffinityMatrix metric_affinity(const PointSet& points)
{
    const std::size_t n = points.size();
    RawMatrix raw(n, std::vector<double>(n, kInfinity));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = points.distance(i, j);
            const double v = d == 0.0 ? kInfinity : 1.0 / d;
            raw[i][j] = v;
            raw[j][i] = v;
        }
    }
    return validate(raw);
}

/// Inverse distance between region centers. Same conventions as metric_affinity.
inline AffinityMatrix inverse_distance_affinity(const PointSet& centers)
{
    return metric_affinity(centers);
}

/// A_ij = l_ij from shared boundary lengths. Pairs without a shared boundary
/// (l_ij == 0) get the epsilon floor; the diagonal is ignored and set to Infinity.
inline AffinityMatrix boundary_affinity(const RawMatrix& lengths,
                                        double epsilon = kDefaultEpsilonFloor)
{
    const std::size_t n = lengths.size();
    if (n == 0)
        throw Error(ErrorCode::NotSquare, "matrix has no rows");
    for (std::size_t i = 0; i < n; ++i)
        if (lengths[i].size() != n)
            throw Error(ErrorCode::NotSquare, "row " + std::to_string(i) + " length");

    RawMatrix raw(n, std::vector<double>(n, kInfinity));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double l = lengths[i][j];
            if (std::isnan(l))
                throw Error(ErrorCode::InvalidEntry, "NaN length", i, j);
            if (l < 0.0)
                throw Error(ErrorCode::NegativeLength, "", i, j);
            if (j > i && lengths[j][i] != l)
                throw Error(ErrorCode::AsymmetricEntry, "", i, j);
            if (i != j)
                raw[i][j] = l;
        }
    }
    return validate(apply_zero_floor(std::move(raw), epsilon));
}

}  // namespace affcurve
