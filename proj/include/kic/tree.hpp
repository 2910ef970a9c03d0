#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kic/errors.hpp"

namespace kic {

using Edge = std::pair<int, int>;

/// Unrooted binary tree with labeled leaves.
///
/// Nodes are numbered 0..2n-3: leaves are 0..n-1 and carry the labels in
/// ascending lexicographic order (leaf i has the i-th smallest label);
/// internal nodes are n..2n-3. Every leaf has degree 1, every internal node
/// degree 3, and the graph is connected and acyclic. Instances are immutable.
class Tree {
public:
    // `leaf_labels[i]` names leaf node i; any order, must be distinct.
    // `edges` connect nodes 0..2n-3. Leaves are renumbered internally so that
    // labels end up sorted.
    Tree(std::vector<std::string> leaf_labels, std::vector<Edge> edges);

    // Same, but the labels are already sorted and shared; leaf i carries
    // (*sorted_labels)[i]. Avoids copying label storage in enumeration and
    // search loops.
    Tree(std::shared_ptr<const std::vector<std::string>> sorted_labels, std::vector<Edge> edges);

    int leaf_count() const { return n_; }
    int node_count() const { return static_cast<int>(adj_.size()); }
    bool is_leaf(int node) const { return node < n_; }

    // Sorted leaf labels; label(i) == labels()[i].
    const std::vector<std::string>& labels() const { return *labels_; }
    const std::string& label(int leaf) const { return (*labels_)[static_cast<size_t>(leaf)]; }
    const std::shared_ptr<const std::vector<std::string>>& labels_ptr() const { return labels_; }

    // Index of the leaf carrying `label`, or -1.
    int leaf_index(std::string_view label) const;

    std::span<const int> neighbors(int node) const {
        const auto& a = adj_[static_cast<size_t>(node)];
        return {a.data(), static_cast<size_t>(node < n_ ? 1 : 3)};
    }

    std::vector<Edge> edges() const;           // all 2n-3 edges, u < v
    std::vector<Edge> internal_edges() const;  // the n-3 internal edges, u < v

private:
    int n_ = 0;
    std::shared_ptr<const std::vector<std::string>> labels_;
    std::vector<std::array<int, 3>> adj_;
};

/// Deterministic Newick encoding of the leaf-labeled topology. Two trees have
/// equal canonical form iff they are isomorphic as leaf-labeled trees.
using CanonicalForm = std::string;

// Parses one Newick tree. A degree-2 root is suppressed; branch lengths and
// internal labels are discarded. Rejects non-binary input.
Tree parse_newick(std::string_view text);

// Deterministic writer: rooted at the internal node adjacent to the smallest
// label, children ordered by smallest descendant label. Lengths are never
// emitted. parse_newick(write_newick(t)) reproduces t's canonical form.
std::string write_newick(const Tree& t);

inline CanonicalForm canonical_form(const Tree& t) { return write_newick(t); }

/// Symmetric matrix of leaf-to-leaf path lengths in edges, indexed like the
/// tree's sorted leaves.
class PathLengthMatrix {
public:
    explicit PathLengthMatrix(const Tree& t);

    int size() const { return n_; }
    const std::vector<std::string>& labels() const { return *labels_; }
    int at(int i, int j) const { return d_[static_cast<size_t>(i) * n_ + j]; }
    int max_entry() const;

private:
    int n_;
    std::shared_ptr<const std::vector<std::string>> labels_;
    std::vector<std::int32_t> d_;
};

inline PathLengthMatrix path_length_matrix(const Tree& t) { return PathLengthMatrix(t); }

// Number of internal nodes adjacent to exactly two leaves. Requires n >= 4.
int cherry_count(const Tree& t);

// True iff the tree has exactly two cherries. Requires n >= 4.
bool is_caterpillar(const Tree& t);

// Longest leaf-to-leaf path, in edges.
int tree_diameter(const Tree& t);

/// Bipartition of the leaf set induced by one internal edge, stored as the
/// block not containing leaf 0.
class Split {
public:
    Split(int n_leaves, const std::vector<int>& block_leaves, Edge origin);

    int leaf_count() const { return n_; }
    int block_size() const;
    bool contains(int leaf) const {
        return (bits_[static_cast<size_t>(leaf) >> 6] >> (leaf & 63)) & 1u;
    }
    std::vector<int> block() const;
    Edge origin() const { return origin_; }

    // The same bipartition expressed over permuted leaf indices;
    // perm[i] = new index of leaf i.
    Split remapped(const std::vector<int>& perm) const;

    bool operator==(const Split& other) const { return n_ == other.n_ && bits_ == other.bits_; }
    std::size_t hash() const;

private:
    int n_;
    std::vector<std::uint64_t> bits_;
    Edge origin_;
    void normalize();
};

struct SplitHash {
    std::size_t operator()(const Split& s) const { return s.hash(); }
};

// One split per internal edge; n-3 of them. Requires n >= 4.
std::vector<Split> splits(const Tree& t);

// The 2(n-3) trees reachable by one nearest-neighbor interchange, in a fixed
// order (two exchanges per internal edge). Requires n >= 4.
std::vector<Tree> nni_neighbors(const Tree& t);

// Canonical encoding of the unlabeled topology (leaves indistinguishable).
// Equal signatures iff equal tree shapes.
std::string shape_signature(const Tree& t);

}  // namespace kic
