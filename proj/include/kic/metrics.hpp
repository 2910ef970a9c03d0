#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kic/tree.hpp"

namespace kic {

/// Bijection between the leaf-label sets of two trees (host <-> parasite map,
/// or the identity for trees on a shared taxon set).
class LeafAssociation {
public:
    static LeafAssociation identity(const Tree& t1, const Tree& t2);
    static LeafAssociation from_pairs(std::vector<std::pair<std::string, std::string>> pairs);

    // Two tab-separated columns `label_t1<TAB>label_t2`, one pair per line,
    // '#' comments and blank lines ignored.
    static LeafAssociation from_tsv(std::string_view text);
    std::string to_tsv() const;

    const std::vector<std::pair<std::string, std::string>>& pairs() const { return pairs_; }
    LeafAssociation inverted() const;

    // perm[i] = leaf index in t2 associated with leaf i of t1. Throws if the
    // association does not exactly cover both label sets.
    std::vector<int> index_map(const Tree& t1, const Tree& t2) const;

private:
    explicit LeafAssociation(std::vector<std::pair<std::string, std::string>> pairs);
    std::vector<std::pair<std::string, std::string>> pairs_;  // sorted by first label
};

// Least k such that the trees satisfy k-interval cospeciation: the max-norm
// over leaf pairs of the path-length difference. O(n^2) given the matrices.
int precise_kic(const Tree& t1, const Tree& t2, const LeafAssociation& assoc);
int precise_kic(const PathLengthMatrix& m1, const PathLengthMatrix& m2,
                const std::vector<int>& index_map);

struct RfDistance {
    int raw = 0;            // |S1\S2| + |S2\S1|
    double normalized = 0;  // raw / (2(n-3))
    int shared_splits = 0;  // |S1 ∩ S2|
};

// Robinson–Foulds split distance after relabeling t2 through the association.
// Requires n >= 4.
RfDistance rf_distance(const Tree& t1, const Tree& t2, const LeafAssociation& assoc);

// Euclidean norm of the per-pair path-length difference vector (precise k-IC
// is the max-norm of the same vector).
double path_difference(const Tree& t1, const Tree& t2, const LeafAssociation& assoc);

// Theorem-level lower bound on the NNI distance; equals precise_kic.
int nni_lower_bound(const Tree& t1, const Tree& t2, const LeafAssociation& assoc);

struct NniSearchResult {
    std::optional<int> distance;   // exact NNI distance, when proven
    int lower_bound = 0;           // always valid; == *distance when present
    bool exhausted = false;        // node budget hit before the proof finished
    std::uint64_t expanded = 0;    // canonical forms expanded across both frontiers
};

// Exact NNI distance by bidirectional breadth-first search over the NNI graph
// with canonical-form deduplication. Expands at most `node_budget` canonical
// forms; on exhaustion reports the best proven lower bound instead of
// guessing (the general problem is NP-complete). Requires n >= 4.
NniSearchResult nni_exact(const Tree& t1, const Tree& t2, const LeafAssociation& assoc,
                          std::uint64_t node_budget = 10'000'000);

struct DiameterGap {
    int gap = 0;                    // |diameter(t1) - diameter(t2)|
    bool condition_applies = false; // gap == precise k-IC
    bool condition_holds = true;    // every diameter pair of the longer tree
                                    // maps to a diameter pair of the other
};

DiameterGap diameter_gap_check(const Tree& t1, const Tree& t2, const LeafAssociation& assoc);

/// Bundle of every pairwise metric for one tree pair.
struct DistanceReport {
    int n = 0;
    int kic = 0;
    std::optional<RfDistance> rf;   // absent for n == 3 (no internal edges)
    double path_difference = 0;
    int nni_lower_bound = 0;        // == kic
    std::optional<int> nni_exact;   // absent when skipped or exhausted
    int nni_proven_lower_bound = 0;
    bool nni_search_exhausted = false;
    int diameter_gap = 0;
    bool endpoint_condition_applies = false;
    bool endpoint_condition_holds = true;
};

struct CompareOptions {
    bool run_nni_search = true;
    std::uint64_t nni_budget = 10'000'000;
};

DistanceReport compare_trees(const Tree& t1, const Tree& t2, const LeafAssociation& assoc,
                             const CompareOptions& options = {});

}  // namespace kic
