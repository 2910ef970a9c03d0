#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "kic/bigint.hpp"
#include "kic/tree.hpp"

namespace kic {

// Largest n enumerated without an explicit override (~3.4e7 trees at 11).
inline constexpr int kDefaultEnumerationCap = 11;

// (2n-5)!!, the number of unrooted binary topologies on n labeled leaves.
BigInt count_trees(int n);

/// Exhaustive, duplicate-free enumeration of the topologies on a label set,
/// by sequential leaf insertion: leaf k+1 goes into each of the 2k-3 edges of
/// every k-leaf tree, edge index ascending. Trees are addressable by a linear
/// index, so the stream partitions into independent sub-ranges.
class TreeEnumeration {
public:
    explicit TreeEnumeration(std::vector<std::string> labels, int cap = kDefaultEnumerationCap);

    std::uint64_t size() const { return size_; }
    int leaf_count() const { return n_; }
    const std::vector<std::string>& labels() const { return *labels_; }

    Tree at(std::uint64_t index) const;

    template <class F>
    void for_each(std::uint64_t begin, std::uint64_t end, F&& fn) const {
        for (std::uint64_t i = begin; i < end; ++i) fn(at(i));
    }

    template <class F>
    void for_each(F&& fn) const {
        for_each(0, size_, fn);
    }

private:
    int n_;
    std::shared_ptr<const std::vector<std::string>> labels_;  // sorted
    std::vector<int> radices_;                                // 3, 5, ..., 2n-5
    std::uint64_t size_;
};

// Uniform over all (2n-5)!! topologies: sequential insertion with every edge
// equiprobable at each step. Deterministic for a given (labels, seed); the
// generator is a seeded mt19937_64 with rejection-sampled bounded draws, so
// results are identical across platforms.
Tree random_tree(const std::vector<std::string>& labels, std::uint64_t seed);

// Default label set "t01".."tNN" (zero-padded to equal width).
std::vector<std::string> default_labels(int n, const std::string& prefix = "t");

}  // namespace kic
