#pragma once

#include <affcurve/errors.hpp>

#include <cstddef>
#include <unordered_map>
#include <vector>

namespace affcurve {

/// Labeling of {0..n-1} into disjoint blocks, numbered by first appearance so
/// two partitions are equal iff their label arrays are equal.
class Partition {
public:
    Partition() = default;

    /// Canonicalizes an arbitrary labeling.
    template <typename Label>
    static Partition from_labels(const std::vector<Label>& raw)
    {
        Partition p;
        p.labels_.reserve(raw.size());
        std::unordered_map<Label, std::size_t> ids;
        for (const Label& l : raw) {
            auto [it, inserted] = ids.try_emplace(l, ids.size());
            p.labels_.push_back(it->second);
        }
        p.blocks_ = ids.size();
        return p;
    }

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t block_count() const noexcept { return blocks_; }
    std::size_t operator[](std::size_t i) const noexcept { return labels_[i]; }
    const std::vector<std::size_t>& labels() const noexcept { return labels_; }

    bool same_block(std::size_t i, std::size_t j) const { return labels_.at(i) == labels_.at(j); }

    std::vector<std::vector<std::size_t>> blocks() const
    {
        std::vector<std::vector<std::size_t>> out(blocks_);
        for (std::size_t i = 0; i < labels_.size(); ++i)
            out[labels_[i]].push_back(i);
        return out;
    }

    friend bool operator==(const Partition& a, const Partition& b)
    {
        return a.labels_ == b.labels_;
    }

private:
    std::vector<std::size_t> labels_;
    std::size_t blocks_ = 0;
};

}  // namespace affcurve
