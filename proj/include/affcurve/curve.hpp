#pragma once

// The connectivity curve kappa(lambda): number of connected components of the
// thresholded affinity space as a function of the threshold.
//
// Edges of the thresholded space are the pairs with A(i,j) > lambda (strict),
// so kappa is a right-continuous nondecreasing step function that can only
// jump at finite affinity values.

#include <affcurve/affinity.hpp>
#include <affcurve/disjoint_set.hpp>
#include <affcurve/errors.hpp>
#include <affcurve/partition.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <system_error>
#include <vector>

namespace affcurve {

/// Step function lambda -> kappa. values[0] holds on (0, b_1), values[k] on
/// [b_k, b_{k+1}), values[m] on [b_m, inf). Breakpoints are exactly the
/// thresholds where kappa changes, so values is strictly increasing.
class ConnectivityCurve {
public:
    ConnectivityCurve(std::size_t n, std::vector<double> breakpoints,
                      std::vector<std::size_t> values)
        : n_(n), breakpoints_(std::move(breakpoints)), values_(std::move(values))
    {
        if (n_ == 0)
            throw Error(ErrorCode::InvalidCurve, "n must be positive");
        if (values_.size() != breakpoints_.size() + 1)
            throw Error(ErrorCode::InvalidCurve, "need exactly one more value than breakpoints");
        for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
            const double b = breakpoints_[k];
            if (!std::isfinite(b) || !(b > 0.0))
                throw Error(ErrorCode::InvalidCurve, "breakpoints must be finite and > 0");
            if (k > 0 && !(breakpoints_[k - 1] < b))
                throw Error(ErrorCode::InvalidCurve, "breakpoints must be strictly increasing");
        }
        for (std::size_t k = 0; k < values_.size(); ++k) {
            if (values_[k] < 1 || values_[k] > n_)
                throw Error(ErrorCode::InvalidCurve, "kappa outside [1, n]");
            if (k > 0 && !(values_[k - 1] < values_[k]))
                throw Error(ErrorCode::InvalidCurve, "kappa must increase at every breakpoint");
        }
    }

    std::size_t n() const noexcept { return n_; }
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    const std::vector<std::size_t>& values() const noexcept { return values_; }

    /// Stabilized value, the component count of the unthresholded space.
    std::size_t kappa_inf() const noexcept { return values_.back(); }
    std::size_t kappa_min() const noexcept { return values_.front(); }

    friend bool operator==(const ConnectivityCurve&, const ConnectivityCurve&) = default;

private:
    std::size_t n_;
    std::vector<double> breakpoints_;
    std::vector<std::size_t> values_;
};

struct CurveOptions {
    /// Round finite affinities to this many significant digits before the
    /// sweep so that values equal up to noise share a breakpoint. Off by
    /// default: breakpoints are distinct by exact double equality.
    std::optional<int> quantize_digits;
};

inline double quantize(double v, int digits)
{
    if (digits < 1 || digits > 17)
        throw Error(ErrorCode::InvalidArgument, "quantization digits must be in [1, 17]");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, digits - 1);
    double out = v;
    std::from_chars(buf, res.ptr, out);
    return out;
}

/// Number of components of the graph with edges {i,j} where A(i,j) > lambda
/// or A(i,j) is infinite. Plain breadth-first search, independent of the sweep.
inline std::size_t kappa_at(const AffinityMatrix& a, double lambda)
{
    require_positive_threshold(lambda);
    const std::size_t n = a.size();
    std::vector<char> seen(n, 0);
    std::queue<std::size_t> frontier;
    std::size_t count = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        ++count;
        seen[s] = 1;
        frontier.push(s);
        while (!frontier.empty()) {
            const std::size_t v = frontier.front();
            frontier.pop();
            for (std::size_t w = 0; w < n; ++w) {
                if (seen[w])
                    continue;
                const AffinityValue e = a(v, w);
                if (e.is_infinite() || e.value() > lambda) {
                    seen[w] = 1;
                    frontier.push(w);
                }
            }
        }
    }
    return count;
}

/// Curve plus the component partition on each of its intervals, in the same
/// order as curve.values().
struct SweepResult {
    ConnectivityCurve curve;
    std::vector<Partition> partitions;
};

namespace detail {

struct WeightedEdge {
    double value;
    std::uint32_t i;
    std::uint32_t j;
};

inline SweepResult sweep(const AffinityMatrix& a, const CurveOptions& options,
                         bool record_partitions)
{
    const std::size_t n = a.size();
    DisjointSetForest forest(n);
    std::vector<WeightedEdge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const AffinityValue v = a(i, j);
            if (v.is_infinite()) {
                forest.unite(i, j);
            } else {
                const double w = options.quantize_digits ? quantize(v.value(), *options.quantize_digits)
                                                         : v.value();
                edges.push_back({w, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
            }
        }
    }
    std::sort(edges.begin(), edges.end(),
              [](const WeightedEdge& l, const WeightedEdge& r) { return l.value > r.value; });

    // Sweep lambda downward. Before a tie group at value v is merged the count
    // is kappa on [v, previous); after merging it holds just below v.
    std::vector<std::size_t> counts{forest.component_count()};
    std::vector<double> thresholds;
    std::vector<Partition> partitions;
    if (record_partitions)
        partitions.push_back(Partition::from_labels(forest.roots()));

    for (std::size_t k = 0; k < edges.size();) {
        const double v = edges[k].value;
        const std::size_t before = forest.component_count();
        for (; k < edges.size() && edges[k].value == v; ++k)
            forest.unite(edges[k].i, edges[k].j);
        if (forest.component_count() == before)
            continue;
        thresholds.push_back(v);
        counts.push_back(forest.component_count());
        if (record_partitions)
            partitions.push_back(Partition::from_labels(forest.roots()));
    }

    std::reverse(counts.begin(), counts.end());
    std::reverse(thresholds.begin(), thresholds.end());
    std::reverse(partitions.begin(), partitions.end());
    return SweepResult{ConnectivityCurve(n, std::move(thresholds), std::move(counts)),
                       std::move(partitions)};
}

}  // namespace detail

/// Exact kappa(lambda) by one decreasing-threshold union-find sweep,
/// O(E log E) for the sort plus near-linear merging.
inline ConnectivityCurve connectivity_curve(const AffinityMatrix& a, const CurveOptions& options = {})
{
    return detail::sweep(a, options, false).curve;
}

/// Same sweep, also recording the component partition on every interval.
inline SweepResult connectivity_sweep(const AffinityMatrix& a, const CurveOptions& options = {})
{
    return detail::sweep(a, options, true);
}

/// Index of the interval containing lambda: the number of breakpoints <= lambda.
inline std::size_t interval_index(const ConnectivityCurve& curve, double lambda)
{
    require_positive_threshold(lambda);
    const auto& bp = curve.breakpoints();
    return static_cast<std::size_t>(std::upper_bound(bp.begin(), bp.end(), lambda) - bp.begin());
}

inline std::size_t evaluate(const ConnectivityCurve& curve, double lambda)
{
    return curve.values()[interval_index(curve, lambda)];
}

// ---------------------------------------------------------------------------
// Shape diagnostics. Neither is a classical quantity; both work on the curve
// rescaled to the unit square: lambda in [b_1, b_m] -> [0,1] and kappa in
// [kappa(b_1), n] -> [0,1].

/// Piecewise constant function on [0,1]: level[k] holds on [knots[k], knots[k+1]).
struct UnitStepFunction {
    std::vector<double> knots;
    std::vector<double> levels;

    /// Integral over [0,1] of f(t) - t.
    double area_above_diagonal() const
    {
        double area = 0.0;
        for (std::size_t k = 0; k < levels.size(); ++k)
            area += levels[k] * (knots[k + 1] - knots[k]);
        return area - 0.5;
    }
};

inline UnitStepFunction rescale(const ConnectivityCurve& curve)
{
    const auto& bp = curve.breakpoints();
    const auto& vals = curve.values();
    if (bp.size() < 2)
        throw Error(ErrorCode::DegenerateCurve,
                    "need at least 2 breakpoints to rescale, got " + std::to_string(bp.size()));
    const double lo = bp.front();
    const double width = bp.back() - lo;
    const double base = static_cast<double>(vals[1]);
    const double height = static_cast<double>(curve.n()) - base;

    UnitStepFunction f;
    f.knots.reserve(bp.size());
    f.knots.push_back(0.0);
    for (std::size_t k = 1; k + 1 < bp.size(); ++k)
        f.knots.push_back((bp[k] - lo) / width);
    f.knots.push_back(1.0);
    for (std::size_t k = 1; k < bp.size(); ++k)
        f.levels.push_back((static_cast<double>(vals[k]) - base) / height);
    return f;
}

/// L1 distance between the two rescaled curves; lies in [0,1].
inline double compare(const ConnectivityCurve& c1, const ConnectivityCurve& c2)
{
    const UnitStepFunction f = rescale(c1);
    const UnitStepFunction g = rescale(c2);
    double total = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    double t = 0.0;
    while (i < f.levels.size() && j < g.levels.size()) {
        const double next = std::min(f.knots[i + 1], g.knots[j + 1]);
        total += std::abs(f.levels[i] - g.levels[j]) * (next - t);
        t = next;
        if (f.knots[i + 1] == next)
            ++i;
        if (g.knots[j + 1] == next)
            ++j;
    }
    return total;
}

/// Twice the signed area between the rescaled curve and the diagonal, in
/// [-1, 1]. Positive means the curve rises early (concave-like).
inline double concavity_score(const ConnectivityCurve& curve)
{
    if (curve.breakpoints().size() < 3)
        throw Error(ErrorCode::DegenerateCurve,
                    "need at least 3 breakpoints, got " +
                        std::to_string(curve.breakpoints().size()));
    return 2.0 * rescale(curve).area_above_diagonal();
}

}  // namespace affcurve
