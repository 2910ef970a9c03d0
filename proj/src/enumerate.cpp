#include "kic/enumerate.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "kic/errors.hpp"

namespace kic {

BigInt count_trees(int n) {
    if (n < 3) throw Error(ErrorCode::bad_parameter, "count_trees requires n >= 3");
    return double_factorial(2 * n - 5);
}

std::vector<std::string> default_labels(int n, const std::string& prefix) {
    std::string max = std::to_string(n);
    std::vector<std::string> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        std::string num = std::to_string(i);
        out.push_back(prefix + std::string(max.size() - num.size(), '0') + num);
    }
    return out;
}

namespace {

std::vector<std::string> sorted_distinct(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    for (size_t i = 0; i + 1 < labels.size(); ++i)
        if (labels[i] == labels[i + 1])
            throw Error(ErrorCode::duplicate_label, "duplicate leaf label '" + labels[i] + "'");
    return labels;
}

// Applies one insertion sequence: digit[k] chooses the edge that receives
// leaf k+3 (0-based digit index), edges kept in creation order.
std::vector<Edge> edges_from_digits(int n, const std::vector<int>& digits) {
    std::vector<Edge> edges;
    edges.reserve(2 * static_cast<size_t>(n) - 3);
    edges.emplace_back(n, 0);
    edges.emplace_back(n, 1);
    edges.emplace_back(n, 2);
    for (int k = 3; k < n; ++k) {
        auto [u, v] = edges[static_cast<size_t>(digits[static_cast<size_t>(k - 3)])];
        int w = n + k - 2;
        edges[static_cast<size_t>(digits[static_cast<size_t>(k - 3)])] = {u, w};
        edges.emplace_back(w, v);
        edges.emplace_back(w, k);
    }
    return edges;
}

}  // namespace

TreeEnumeration::TreeEnumeration(std::vector<std::string> labels, int cap)
    : n_(static_cast<int>(labels.size())),
      labels_(std::make_shared<const std::vector<std::string>>(
          sorted_distinct(std::move(labels)))) {
    if (n_ < 3)
        throw Error(ErrorCode::bad_parameter, "enumeration requires n >= 3");
    if (n_ > cap)
        throw Error(ErrorCode::cap_exceeded,
                    "enumeration of n=" + std::to_string(n_) + " exceeds the cap of " +
                        std::to_string(cap));
    size_ = 1;
    for (int k = 3; k < n_; ++k) {
        radices_.push_back(2 * k - 3);
        if (size_ > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(2 * k - 3))
            throw Error(ErrorCode::cap_exceeded, "enumeration size exceeds 2^62");
        size_ *= static_cast<std::uint64_t>(2 * k - 3);
    }
}

Tree TreeEnumeration::at(std::uint64_t index) const {
    if (index >= size_)
        throw Error(ErrorCode::bad_parameter, "enumeration index out of range");
    std::vector<int> digits(radices_.size());
    for (size_t i = radices_.size(); i-- > 0;) {
        auto r = static_cast<std::uint64_t>(radices_[i]);
        digits[i] = static_cast<int>(index % r);
        index /= r;
    }
    return Tree(labels_, edges_from_digits(n_, digits));
}

Tree random_tree(const std::vector<std::string>& labels, std::uint64_t seed) {
    auto sorted = sorted_distinct(labels);
    int n = static_cast<int>(sorted.size());
    if (n < 3) throw Error(ErrorCode::bad_parameter, "random_tree requires n >= 3");
    std::mt19937_64 rng(seed);
    // Rejection sampling keeps the draw unbiased and identical on any
    // conforming mt19937_64, unlike std::uniform_int_distribution.
    auto bounded = [&rng](std::uint64_t m) {
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % m;
        std::uint64_t r;
        do {
            r = rng();
        } while (r >= limit);
        return r % m;
    };
    std::vector<int> digits;
    digits.reserve(static_cast<size_t>(n));
    for (int k = 3; k < n; ++k)
        digits.push_back(static_cast<int>(bounded(static_cast<std::uint64_t>(2 * k - 3))));
    return Tree(std::make_shared<const std::vector<std::string>>(std::move(sorted)),
                edges_from_digits(n, digits));
}

}  // namespace kic
