#pragma once

// Brute-force neighborhood topology of a finite affinity space, and the
// graph of infinite affinities. These are independent oracles for the curve
// engine: nothing here shares code with the union-find sweep.

#include <affcurve/affinity.hpp>
#include <affcurve/errors.hpp>
#include <affcurve/partition.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <span>
#include <vector>

namespace affcurve {

using IndexSet = std::vector<std::size_t>;
using SubsetMask = std::uint32_t;

inline constexpr std::size_t kDefaultOracleLimit = 12;
// 2^n subsets times 2^n open sets; beyond this the enumeration is hopeless.
inline constexpr std::size_t kOracleHardLimit = 16;

/// How is_open decides membership in the neighborhood topology.
enum class OpennessTest {
    /// U is open iff it contains the minimal neighborhood of each of its points.
    MinimalNeighborhood,
    /// Literal definition: for each x in U search an alpha > 0 with
    /// E(x, alpha) = {y : A(x,y) > alpha} contained in U. Candidate alphas are
    /// the finite affinities from x plus one value below all of them.
    Existential,
};

/// Simple graph on {0..n-1} whose edges are the pairs with infinite affinity.
/// The diagonal is adjacent by convention.
class InfinityGraph {
public:
    explicit InfinityGraph(const AffinityMatrix& a)
        : n_(a.size()), adjacency_(n_ * n_)
    {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                adjacency_[i * n_ + j] = a.is_infinite(i, j);
    }

    std::size_t size() const noexcept { return n_; }
    bool adjacent(std::size_t i, std::size_t j) const { return adjacency_[i * n_ + j] != 0; }

    /// Path components by breadth-first traversal.
    Partition components() const
    {
        constexpr std::size_t unseen = static_cast<std::size_t>(-1);
        std::vector<std::size_t> label(n_, unseen);
        std::size_t next = 0;
        std::queue<std::size_t> frontier;
        for (std::size_t s = 0; s < n_; ++s) {
            if (label[s] != unseen)
                continue;
            label[s] = next;
            frontier.push(s);
            while (!frontier.empty()) {
                const std::size_t v = frontier.front();
                frontier.pop();
                for (std::size_t w = 0; w < n_; ++w) {
                    if (label[w] == unseen && adjacent(v, w)) {
                        label[w] = next;
                        frontier.push(w);
                    }
                }
            }
            ++next;
        }
        return Partition::from_labels(label);
    }

private:
    std::size_t n_;
    std::vector<char> adjacency_;
};

namespace detail {

inline void check_index(const AffinityMatrix& a, std::size_t x)
{
    if (x >= a.size())
        throw Error(ErrorCode::IndexOutOfRange,
                    "index " + std::to_string(x) + " with n=" + std::to_string(a.size()));
}

inline std::vector<char> membership(const AffinityMatrix& a, std::span<const std::size_t> u)
{
    std::vector<char> in(a.size(), 0);
    for (std::size_t x : u) {
        check_index(a, x);
        in[x] = 1;
    }
    return in;
}

inline bool contains_minimal_neighborhoods(const AffinityMatrix& a, const std::vector<char>& in)
{
    const std::size_t n = a.size();
    for (std::size_t x = 0; x < n; ++x) {
        if (!in[x])
            continue;
        for (std::size_t y = 0; y < n; ++y)
            if (a.is_infinite(x, y) && !in[y])
                return false;
    }
    return true;
}

inline bool has_witness_alpha(const AffinityMatrix& a, std::size_t x, const std::vector<char>& in)
{
    const std::size_t n = a.size();
    std::vector<double> alphas;
    double smallest = kInfinity;
    for (std::size_t y = 0; y < n; ++y) {
        if (a(x, y).is_finite()) {
            alphas.push_back(a(x, y).value());
            smallest = std::min(smallest, a(x, y).value());
        }
    }
    alphas.push_back(smallest == kInfinity ? 1.0 : smallest / 2.0);
    for (double alpha : alphas) {
        bool inside = true;
        for (std::size_t y = 0; y < n && inside; ++y)
            if (a(x, y).value() > alpha && !in[y])
                inside = false;
        if (inside)
            return true;
    }
    return false;
}

inline bool is_open_membership(const AffinityMatrix& a, const std::vector<char>& in,
                               OpennessTest test)
{
    if (test == OpennessTest::MinimalNeighborhood)
        return contains_minimal_neighborhoods(a, in);
    for (std::size_t x = 0; x < a.size(); ++x)
        if (in[x] && !has_witness_alpha(a, x, in))
            return false;
    return true;
}

}  // namespace detail

/// {y : A(x,y) == Infinity}; the intersection of all E(x, alpha), alpha > 0.
inline IndexSet minimal_neighborhood(const AffinityMatrix& a, std::size_t x)
{
    detail::check_index(a, x);
    IndexSet out;
    for (std::size_t y = 0; y < a.size(); ++y)
        if (a.is_infinite(x, y))
            out.push_back(y);
    return out;
}

inline bool is_open(const AffinityMatrix& a, std::span<const std::size_t> u,
                    OpennessTest test = OpennessTest::MinimalNeighborhood)
{
    return detail::is_open_membership(a, detail::membership(a, u), test);
}

inline bool is_open(const AffinityMatrix& a, std::initializer_list<std::size_t> u,
                    OpennessTest test = OpennessTest::MinimalNeighborhood)
{
    return is_open(a, std::span<const std::size_t>(u.begin(), u.size()), test);
}

/// Exhaustive view of the topology of a small affinity space. Subsets are
/// bitmasks over {0..n-1}.
class TopologyOracle {
public:
    explicit TopologyOracle(const AffinityMatrix& a,
                            OpennessTest test = OpennessTest::MinimalNeighborhood,
                            std::size_t limit = kDefaultOracleLimit)
        : n_(a.size())
    {
        if (n_ > std::min(limit, kOracleHardLimit))
            throw Error(ErrorCode::TooLargeForOracle,
                        "n=" + std::to_string(n_) + " exceeds oracle limit " +
                            std::to_string(std::min(limit, kOracleHardLimit)));
        const SubsetMask count = SubsetMask{1} << n_;
        open_.assign(count, 0);
        std::vector<char> in(n_);
        for (SubsetMask m = 0; m < count; ++m) {
            for (std::size_t i = 0; i < n_; ++i)
                in[i] = (m >> i) & 1u;
            if (detail::is_open_membership(a, in, test)) {
                open_[m] = 1;
                open_list_.push_back(m);
            }
        }
        // interior(M) = union of the open subsets of M. An open proper subset of
        // M misses some b in M, so it lies inside M \ {b}.
        interior_.assign(count, 0);
        for (SubsetMask m = 0; m < count; ++m) {
            if (open_[m]) {
                interior_[m] = m;
                continue;
            }
            SubsetMask acc = 0;
            for (SubsetMask rest = m; rest != 0; rest &= rest - 1) {
                const SubsetMask bit = rest & (~rest + 1);
                acc |= interior_[m & ~bit];
            }
            interior_[m] = acc;
        }
    }

    std::size_t size() const noexcept { return n_; }
    SubsetMask full() const noexcept { return (SubsetMask{1} << n_) - 1; }

    bool is_open(SubsetMask m) const { return open_.at(m) != 0; }
    const std::vector<SubsetMask>& open_sets() const noexcept { return open_list_; }
    SubsetMask interior(SubsetMask m) const { return interior_.at(m); }

    /// S is disconnected iff there are disjoint open U, V covering S and both
    /// meeting S. For a fixed U the best V is the interior of X \ U.
    bool is_connected(SubsetMask s) const
    {
        for (SubsetMask u : open_list_) {
            const SubsetMask in_u = s & u;
            const SubsetMask rest = s & ~u;
            if (in_u == 0 || rest == 0)
                continue;
            if ((rest & ~interior(full() & ~u)) == 0)
                return false;
        }
        return true;
    }

    /// C(x) for every x: the union of all connected subsets containing x.
    Partition components() const
    {
        const SubsetMask count = SubsetMask{1} << n_;
        std::vector<SubsetMask> component(n_, 0);
        for (SubsetMask s = 1; s < count; ++s) {
            if (!is_connected(s))
                continue;
            for (SubsetMask rest = s; rest != 0; rest &= rest - 1)
                component[std::countr_zero(rest)] |= s;
        }
        return Partition::from_labels(component);
    }

private:
    std::size_t n_;
    std::vector<char> open_;
    std::vector<SubsetMask> open_list_;
    std::vector<SubsetMask> interior_;
};

inline SubsetMask to_mask(std::span<const std::size_t> s)
{
    SubsetMask m = 0;
    for (std::size_t i : s)
        m |= SubsetMask{1} << i;
    return m;
}

inline IndexSet from_mask(SubsetMask m)
{
    IndexSet out;
    for (; m != 0; m &= m - 1)
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
}

/// Connected components from the topological definition alone.
inline Partition components_topological(const AffinityMatrix& a,
                                        std::size_t limit = kDefaultOracleLimit,
                                        OpennessTest test = OpennessTest::MinimalNeighborhood)
{
    return TopologyOracle(a, test, limit).components();
}

/// Path components of the infinity graph.
inline Partition components_graph(const AffinityMatrix& a)
{
    return InfinityGraph(a).components();
}

}  // namespace affcurve
