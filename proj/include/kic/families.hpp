#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kic/metrics.hpp"
#include "kic/tree.hpp"

namespace kic {

struct TreePair {
    Tree first;
    Tree second;
    LeafAssociation assoc;
};

// Caterpillar with the leaves attached along the spine in the given order;
// labels[0],labels[1] and the last two labels form the end cherries. n >= 4.
Tree caterpillar(const std::vector<std::string>& labels);

// T1 = caterpillar on labels 1..n; T2 = the same caterpillar with the leaf at
// pendant position 1 (the third label) relocated m pendant positions toward
// the far cherry. The pair is joined by m single-pendant NNI swaps.
// Requires n >= 6 and 1 <= m <= n-5.
TreePair shifted_caterpillar_pair(int n, int m, const std::string& label_prefix = "t");

// The classical NNI counterexample pair on 3x leaves: an x-position
// caterpillar backbone whose pendant edges each carry a rooted triple,
// ((a_i,b_i),c_i) on the first tree and ((a_i,c_i),b_i) on the second.
// Requires x >= 3.
TreePair triple_swap_pair(int x, const std::string& label_prefix = "");

// Two caterpillars realizing the maximal distance n-3: the designated pair of
// leaves sits in opposite end cherries of T1 and shares a cherry in T2.
// Requires n >= 5.
TreePair max_distance_pair(int n, const std::string& label_prefix = "t");

}  // namespace kic
