#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace affcurve {

/// Union-find with union by size and path compression.
class DisjointSetForest {
public:
    explicit DisjointSetForest(std::size_t n) : parent_(n), size_(n, 1), components_(n)
    {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t size() const noexcept { return parent_.size(); }
    std::size_t component_count() const noexcept { return components_; }

    std::size_t find(std::size_t x)
    {
        std::size_t root = x;
        while (parent_[root] != root)
            root = parent_[root];
        while (parent_[x] != root)
            x = std::exchange(parent_[x], root);
        return root;
    }

    /// Returns true if a and b were in different sets.
    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        --components_;
        return true;
    }

    /// Root of every element, after full compression.
    std::vector<std::size_t> roots()
    {
        std::vector<std::size_t> out(parent_.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = find(i);
        return out;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t components_;
};

}  // namespace affcurve
