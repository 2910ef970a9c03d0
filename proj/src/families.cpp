#include "kic/families.hpp"

#include <algorithm>

#include "kic/enumerate.hpp"
#include "kic/errors.hpp"

namespace kic {

namespace {

// Caterpillar edges over leaf ids `order` (attachment order along the spine)
// with internal ids n..2n-3.
std::vector<Edge> caterpillar_edges(const std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    std::vector<Edge> edges;
    edges.reserve(2 * static_cast<size_t>(n) - 3);
    const int spine0 = n;  // spine nodes n .. 2n-3, left to right
    for (int i = 1; i < n - 2; ++i) edges.emplace_back(spine0 + i - 1, spine0 + i);
    edges.emplace_back(spine0, order[0]);
    edges.emplace_back(spine0, order[1]);
    for (int i = 2; i < n - 2; ++i) edges.emplace_back(spine0 + i - 1, order[static_cast<size_t>(i)]);
    edges.emplace_back(spine0 + n - 3, order[static_cast<size_t>(n) - 2]);
    edges.emplace_back(spine0 + n - 3, order[static_cast<size_t>(n) - 1]);
    return edges;
}

std::vector<int> iota_order(int n) {
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    return order;
}

LeafAssociation identity_assoc(const Tree& t) {
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(t.labels().size());
    for (const auto& l : t.labels()) pairs.emplace_back(l, l);
    return LeafAssociation::from_pairs(std::move(pairs));
}

}  // namespace

Tree caterpillar(const std::vector<std::string>& labels) {
    const int n = static_cast<int>(labels.size());
    if (n < 4) throw Error(ErrorCode::bad_parameter, "caterpillar requires n >= 4");
    return Tree(labels, caterpillar_edges(iota_order(n)));
}

TreePair shifted_caterpillar_pair(int n, int m, const std::string& label_prefix) {
    if (n < 6)
        throw Error(ErrorCode::bad_parameter, "shifted_caterpillar_pair requires n >= 6");
    if (m < 1 || m > n - 5)
        throw Error(ErrorCode::bad_parameter,
                    "shift m=" + std::to_string(m) + " out of range 1.." + std::to_string(n - 5));
    auto labels = default_labels(n, label_prefix);
    Tree t1(labels, caterpillar_edges(iota_order(n)));
    // Pendant positions hold leaves 2..n-3; move leaf 2 m slots to the right.
    std::vector<int> mid;
    for (int i = 3; i < n - 2; ++i) mid.push_back(i);
    mid.insert(mid.begin() + m, 2);
    std::vector<int> order{0, 1};
    order.insert(order.end(), mid.begin(), mid.end());
    order.push_back(n - 2);
    order.push_back(n - 1);
    Tree t2(labels, caterpillar_edges(order));
    return {t1, t2, identity_assoc(t1)};
}

TreePair triple_swap_pair(int x, const std::string& label_prefix) {
    if (x < 3) throw Error(ErrorCode::bad_parameter, "triple_swap_pair requires x >= 3");
    const int n = 3 * x;
    std::string width = std::to_string(x);
    std::vector<std::string> labels(static_cast<size_t>(n));
    for (int i = 0; i < x; ++i) {
        std::string num = std::to_string(i + 1);
        std::string pad = std::string(width.size() - num.size(), '0') + num;
        labels[static_cast<size_t>(3 * i)] = label_prefix + "a" + pad;
        labels[static_cast<size_t>(3 * i) + 1] = label_prefix + "b" + pad;
        labels[static_cast<size_t>(3 * i) + 2] = label_prefix + "c" + pad;
    }
    // Backbone: an x-position caterpillar shape (a star for x = 3); pendant
    // position i carries the rooted triple ((a_i, b_i), c_i), with b and c
    // exchanged on the second tree.
    auto build = [&](bool swap_bc) {
        std::vector<Edge> edges;
        int next = n;
        std::vector<int> slot(static_cast<size_t>(x));
        if (x == 3) {
            int center = next++;
            slot = {center, center, center};
        } else {
            std::vector<int> spine;
            for (int i = 0; i < x - 2; ++i) spine.push_back(next++);
            for (int i = 1; i < x - 2; ++i)
                edges.emplace_back(spine[static_cast<size_t>(i) - 1], spine[static_cast<size_t>(i)]);
            slot[0] = spine.front();
            slot[1] = spine.front();
            for (int i = 2; i < x - 1; ++i) slot[static_cast<size_t>(i)] = spine[static_cast<size_t>(i) - 1];
            slot[static_cast<size_t>(x) - 1] = spine.back();
        }
        for (int i = 0; i < x; ++i) {
            int a = 3 * i, b = 3 * i + 1, c = 3 * i + 2;
            if (swap_bc) std::swap(b, c);
            int root = next++;
            int cherry = next++;
            edges.emplace_back(slot[static_cast<size_t>(i)], root);
            edges.emplace_back(root, cherry);
            edges.emplace_back(root, c);
            edges.emplace_back(cherry, a);
            edges.emplace_back(cherry, b);
        }
        return Tree(labels, std::move(edges));
    };
    Tree first = build(false);
    Tree second = build(true);
    return {first, second, identity_assoc(first)};
}

TreePair max_distance_pair(int n, const std::string& label_prefix) {
    if (n < 5) throw Error(ErrorCode::bad_parameter, "max_distance_pair requires n >= 5");
    auto labels = default_labels(n, label_prefix);
    Tree t1(labels, caterpillar_edges(iota_order(n)));  // 0 and n-1 at opposite ends
    std::vector<int> order{0, n - 1};
    for (int i = 1; i < n - 1; ++i) order.push_back(i);
    Tree t2(labels, caterpillar_edges(order));  // 0 and n-1 share a cherry
    return {t1, t2, identity_assoc(t1)};
}

}  // namespace kic
