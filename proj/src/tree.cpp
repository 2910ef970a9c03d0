#include "kic/tree.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <climits>
#include <functional>
#include <numeric>
#include <unordered_set>

namespace kic {

namespace {

void validate_topology(int n, const std::vector<std::array<int, 3>>& adj,
                       const std::vector<int>& degree) {
    const int nodes = 2 * n - 2;
    for (int u = 0; u < nodes; ++u) {
        int want = u < n ? 1 : 3;
        if (degree[static_cast<size_t>(u)] != want)
            throw Error(ErrorCode::invalid_tree,
                        "node " + std::to_string(u) + " has degree " +
                            std::to_string(degree[static_cast<size_t>(u)]) + ", expected " +
                            std::to_string(want));
    }
    std::vector<char> seen(static_cast<size_t>(nodes), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        int deg = u < n ? 1 : 3;
        for (int i = 0; i < deg; ++i) {
            int v = adj[static_cast<size_t>(u)][static_cast<size_t>(i)];
            if (!seen[static_cast<size_t>(v)]) {
                seen[static_cast<size_t>(v)] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    if (reached != nodes)
        throw Error(ErrorCode::invalid_tree, "graph is not connected");
}

std::vector<std::array<int, 3>> build_adjacency(int n, const std::vector<Edge>& edges,
                                                std::vector<int>& degree) {
    const int nodes = 2 * n - 2;
    if (static_cast<int>(edges.size()) != nodes - 1)
        throw Error(ErrorCode::invalid_tree,
                    "expected " + std::to_string(nodes - 1) + " edges, got " +
                        std::to_string(edges.size()));
    std::vector<std::array<int, 3>> adj(static_cast<size_t>(nodes), {-1, -1, -1});
    degree.assign(static_cast<size_t>(nodes), 0);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= nodes || v < 0 || v >= nodes || u == v)
            throw Error(ErrorCode::invalid_tree, "edge endpoint out of range");
        for (int x : {u, v}) {
            int& d = degree[static_cast<size_t>(x)];
            if (d >= 3)
                throw Error(ErrorCode::invalid_tree,
                            "node " + std::to_string(x) + " has degree above 3");
        }
        adj[static_cast<size_t>(u)][static_cast<size_t>(degree[static_cast<size_t>(u)]++)] = v;
        adj[static_cast<size_t>(v)][static_cast<size_t>(degree[static_cast<size_t>(v)]++)] = u;
    }
    return adj;
}

}  // namespace

Tree::Tree(std::vector<std::string> leaf_labels, std::vector<Edge> edges) {
    n_ = static_cast<int>(leaf_labels.size());
    if (n_ < 3)
        throw Error(ErrorCode::invalid_tree,
                    "a tree needs at least 3 leaves, got " + std::to_string(n_));
    std::vector<int> order(static_cast<size_t>(n_));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return leaf_labels[static_cast<size_t>(a)] < leaf_labels[static_cast<size_t>(b)];
    });
    std::vector<int> rank(static_cast<size_t>(n_));
    auto sorted = std::make_shared<std::vector<std::string>>();
    sorted->reserve(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        rank[static_cast<size_t>(order[static_cast<size_t>(i)])] = i;
        sorted->push_back(std::move(leaf_labels[static_cast<size_t>(order[static_cast<size_t>(i)])]));
    }
    for (int i = 0; i + 1 < n_; ++i)
        if ((*sorted)[static_cast<size_t>(i)] == (*sorted)[static_cast<size_t>(i) + 1])
            throw Error(ErrorCode::duplicate_label,
                        "duplicate leaf label '" + (*sorted)[static_cast<size_t>(i)] + "'");
    for (auto& [u, v] : edges) {
        if (u >= 0 && u < n_) u = rank[static_cast<size_t>(u)];
        if (v >= 0 && v < n_) v = rank[static_cast<size_t>(v)];
    }
    labels_ = std::move(sorted);
    std::vector<int> degree;
    adj_ = build_adjacency(n_, edges, degree);
    validate_topology(n_, adj_, degree);
}

Tree::Tree(std::shared_ptr<const std::vector<std::string>> sorted_labels, std::vector<Edge> edges)
    : n_(static_cast<int>(sorted_labels->size())), labels_(std::move(sorted_labels)) {
    if (n_ < 3)
        throw Error(ErrorCode::invalid_tree,
                    "a tree needs at least 3 leaves, got " + std::to_string(n_));
    for (size_t i = 0; i + 1 < labels_->size(); ++i)
        if (!((*labels_)[i] < (*labels_)[i + 1]))
            throw Error(ErrorCode::invalid_tree, "shared label vector must be sorted and distinct");
    std::vector<int> degree;
    adj_ = build_adjacency(n_, edges, degree);
    validate_topology(n_, adj_, degree);
}

int Tree::leaf_index(std::string_view label) const {
    auto it = std::lower_bound(labels_->begin(), labels_->end(), label);
    if (it == labels_->end() || *it != label) return -1;
    return static_cast<int>(it - labels_->begin());
}

std::vector<Edge> Tree::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<size_t>(node_count()) - 1);
    for (int u = 0; u < node_count(); ++u)
        for (int v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::vector<Edge> Tree::internal_edges() const {
    std::vector<Edge> out;
    for (int u = n_; u < node_count(); ++u)
        for (int v : neighbors(u))
            if (u < v && !is_leaf(v)) out.emplace_back(u, v);
    return out;
}

// ---------------------------------------------------------------------------
// Newick parsing
// ---------------------------------------------------------------------------

namespace {

bool is_label_break(char c) {
    return c == '(' || c == ')' || c == ',' || c == ':' || c == ';' ||
           std::isspace(static_cast<unsigned char>(c));
}

struct NewickReader {
    std::string_view text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorCode::newick_syntax,
                    what + " at byte " + std::to_string(pos), pos);
    }

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    // Empty return means "no label here"; quoting follows the usual Newick
    // convention ('' escapes a quote inside a quoted label).
    std::string read_label() {
        if (done()) return {};
        if (peek() == '\'') {
            ++pos;
            std::string out;
            while (true) {
                if (done()) fail("unterminated quoted label");
                char c = text[pos];
                if (c == '\'') {
                    if (pos + 1 < text.size() && text[pos + 1] == '\'') {
                        out += '\'';
                        pos += 2;
                    } else {
                        ++pos;
                        break;
                    }
                } else {
                    out += c;
                    ++pos;
                }
            }
            if (out.empty()) fail("empty quoted label");
            return out;
        }
        std::string out;
        while (!done() && !is_label_break(text[pos])) out += text[pos++];
        return out;
    }

    // Consumes ":<decimal>" if present; the value is discarded.
    void skip_length() {
        skip_ws();
        if (done() || peek() != ':') return;
        ++pos;
        skip_ws();
        if (!done() && (peek() == '+' || peek() == '-')) ++pos;
        std::size_t digits = 0;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos, ++digits;
        if (!done() && peek() == '.') {
            ++pos;
            while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos, ++digits;
        }
        if (digits == 0) fail("expected a branch length after ':'");
        if (!done() && (peek() == 'e' || peek() == 'E')) {
            ++pos;
            if (!done() && (peek() == '+' || peek() == '-')) ++pos;
            std::size_t ed = 0;
            while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos, ++ed;
            if (ed == 0) fail("expected exponent digits");
        }
    }
};

struct ParseNode {
    std::vector<int> children;
    std::string label;  // leaves only
};

}  // namespace

Tree parse_newick(std::string_view text) {
    NewickReader r{text};
    std::vector<ParseNode> nodes;
    std::vector<std::vector<int>> groups;
    int last = -1;
    bool expect_element = true;

    r.skip_ws();
    if (r.done()) r.fail("empty input");
    while (true) {
        r.skip_ws();
        if (r.done()) r.fail("unexpected end of input");
        if (expect_element) {
            if (r.peek() == '(') {
                ++r.pos;
                groups.emplace_back();
                continue;
            }
            std::size_t at = r.pos;
            std::string label = r.read_label();
            if (label.empty()) {
                r.pos = at;
                r.fail("expected a leaf label or '('");
            }
            r.skip_length();
            nodes.push_back(ParseNode{{}, std::move(label)});
            last = static_cast<int>(nodes.size()) - 1;
            expect_element = false;
            continue;
        }
        char c = r.peek();
        if (c == ',') {
            if (groups.empty()) r.fail("',' outside parentheses");
            ++r.pos;
            groups.back().push_back(last);
            expect_element = true;
        } else if (c == ')') {
            if (groups.empty()) r.fail("unbalanced ')'");
            ++r.pos;
            groups.back().push_back(last);
            ParseNode internal;
            internal.children = std::move(groups.back());
            groups.pop_back();
            nodes.push_back(std::move(internal));
            last = static_cast<int>(nodes.size()) - 1;
            r.skip_ws();
            if (!r.done() && r.peek() != ')' && r.peek() != ',' && r.peek() != ';' &&
                r.peek() != ':')
                r.read_label();  // internal label, discarded
            r.skip_length();
        } else if (c == ';') {
            ++r.pos;
            if (!groups.empty()) r.fail("unbalanced '(' before ';'");
            break;
        } else {
            r.fail("expected ',', ')' or ';'");
        }
    }
    r.skip_ws();
    if (!r.done()) r.fail("trailing characters after ';'");

    // Degree checks in unrooted terms, then conversion.
    const int root = last;
    int n = 0;
    for (const auto& nd : nodes) n += nd.children.empty() ? 1 : 0;
    if (n < 3)
        throw Error(ErrorCode::invalid_tree,
                    "tree has " + std::to_string(n) + " leaves; at least 3 required");
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        const auto& nd = nodes[static_cast<size_t>(i)];
        if (nd.children.empty()) continue;
        int unrooted_degree = static_cast<int>(nd.children.size()) + (i == root ? 0 : 1);
        bool ok = unrooted_degree == 3 || (i == root && unrooted_degree == 2);
        if (!ok)
            throw Error(ErrorCode::non_binary,
                        "node with unrooted degree " + std::to_string(unrooted_degree) +
                            "; input must be a binary tree");
    }

    // Final ids: leaves 0..n-1 then internals, in parse order; a degree-2
    // root is suppressed.
    bool suppress_root = nodes[static_cast<size_t>(root)].children.size() == 2;
    std::vector<int> id(nodes.size(), -1);
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(n));
    int next_internal = n;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        auto& nd = nodes[static_cast<size_t>(i)];
        if (nd.children.empty()) {
            id[static_cast<size_t>(i)] = static_cast<int>(labels.size());
            labels.push_back(std::move(nd.label));
        } else if (!(suppress_root && i == root)) {
            id[static_cast<size_t>(i)] = next_internal++;
        }
    }
    std::vector<Edge> edges;
    edges.reserve(nodes.size());
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        if (suppress_root && i == root) continue;
        for (int ch : nodes[static_cast<size_t>(i)].children)
            edges.emplace_back(id[static_cast<size_t>(i)], id[static_cast<size_t>(ch)]);
    }
    if (suppress_root) {
        const auto& ch = nodes[static_cast<size_t>(root)].children;
        edges.emplace_back(id[static_cast<size_t>(ch[0])], id[static_cast<size_t>(ch[1])]);
    }
    return Tree(std::move(labels), std::move(edges));
}

// ---------------------------------------------------------------------------
// Deterministic writer
// ---------------------------------------------------------------------------

namespace {

std::string quote_label(const std::string& label) {
    bool needs_quote = label.empty();
    for (char c : label)
        if (is_label_break(c) || c == '\'') needs_quote = true;
    if (!needs_quote) return label;
    std::string out = "'";
    for (char c : label) {
        out += c;
        if (c == '\'') out += '\'';
    }
    out += '\'';
    return out;
}

}  // namespace

std::string write_newick(const Tree& t) {
    const int root = t.neighbors(0)[0];
    const int nodes = t.node_count();
    std::vector<int> parent(static_cast<size_t>(nodes), -2);
    std::vector<int> order;
    order.reserve(static_cast<size_t>(nodes));
    parent[static_cast<size_t>(root)] = -1;
    order.push_back(root);
    for (std::size_t h = 0; h < order.size(); ++h) {
        int u = order[h];
        for (int v : t.neighbors(u))
            if (v != parent[static_cast<size_t>(u)]) {
                parent[static_cast<size_t>(v)] = u;
                order.push_back(v);
            }
    }
    std::vector<std::string> rendered(static_cast<size_t>(nodes));
    std::vector<int> min_leaf(static_cast<size_t>(nodes), INT_MAX);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int u = *it;
        if (t.is_leaf(u)) {
            rendered[static_cast<size_t>(u)] = quote_label(t.label(u));
            min_leaf[static_cast<size_t>(u)] = u;
            continue;
        }
        std::array<int, 3> ch{};
        int k = 0;
        for (int v : t.neighbors(u))
            if (v != parent[static_cast<size_t>(u)]) ch[static_cast<size_t>(k++)] = v;
        std::sort(ch.begin(), ch.begin() + k, [&](int a, int b) {
            return min_leaf[static_cast<size_t>(a)] < min_leaf[static_cast<size_t>(b)];
        });
        std::string s = "(";
        for (int i = 0; i < k; ++i) {
            if (i) s += ',';
            s += rendered[static_cast<size_t>(ch[static_cast<size_t>(i)])];
        }
        s += ')';
        rendered[static_cast<size_t>(u)] = std::move(s);
        min_leaf[static_cast<size_t>(u)] = min_leaf[static_cast<size_t>(ch[0])];
    }
    return rendered[static_cast<size_t>(root)] + ";";
}

// ---------------------------------------------------------------------------
// Path lengths and elementary statistics
// ---------------------------------------------------------------------------

PathLengthMatrix::PathLengthMatrix(const Tree& t)
    : n_(t.leaf_count()), labels_(t.labels_ptr()) {
    const int nodes = t.node_count();
    d_.assign(static_cast<size_t>(n_) * static_cast<size_t>(n_), 0);
    std::vector<std::int32_t> dist(static_cast<size_t>(nodes));
    std::vector<int> queue(static_cast<size_t>(nodes));
    for (int s = 0; s < n_; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<size_t>(s)] = 0;
        int head = 0, tail = 0;
        queue[static_cast<size_t>(tail++)] = s;
        while (head < tail) {
            int u = queue[static_cast<size_t>(head++)];
            for (int v : t.neighbors(u))
                if (dist[static_cast<size_t>(v)] < 0) {
                    dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
                    queue[static_cast<size_t>(tail++)] = v;
                }
        }
        for (int u = 0; u < n_; ++u)
            d_[static_cast<size_t>(s) * static_cast<size_t>(n_) + static_cast<size_t>(u)] =
                dist[static_cast<size_t>(u)];
    }
}

int PathLengthMatrix::max_entry() const {
    std::int32_t m = 0;
    for (auto v : d_) m = std::max(m, v);
    return m;
}

int cherry_count(const Tree& t) {
    if (t.leaf_count() < 4)
        throw Error(ErrorCode::bad_parameter, "cherry_count requires n >= 4");
    int c = 0;
    for (int u = t.leaf_count(); u < t.node_count(); ++u) {
        int leaves = 0;
        for (int v : t.neighbors(u)) leaves += t.is_leaf(v) ? 1 : 0;
        if (leaves == 2) ++c;
    }
    return c;
}

bool is_caterpillar(const Tree& t) { return cherry_count(t) == 2; }

int tree_diameter(const Tree& t) { return PathLengthMatrix(t).max_entry(); }

// ---------------------------------------------------------------------------
// Splits
// ---------------------------------------------------------------------------

Split::Split(int n_leaves, const std::vector<int>& block_leaves, Edge origin)
    : n_(n_leaves), bits_(static_cast<size_t>((n_leaves + 63) / 64), 0), origin_(origin) {
    for (int l : block_leaves) bits_[static_cast<size_t>(l) >> 6] |= 1ull << (l & 63);
    normalize();
}

void Split::normalize() {
    if (!contains(0)) return;
    for (auto& w : bits_) w = ~w;
    int tail = n_ & 63;
    if (tail) bits_.back() &= (1ull << tail) - 1;
}

int Split::block_size() const {
    int c = 0;
    for (auto w : bits_) c += std::popcount(w);
    return c;
}

std::vector<int> Split::block() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

Split Split::remapped(const std::vector<int>& perm) const {
    std::vector<int> mapped;
    mapped.reserve(static_cast<size_t>(block_size()));
    for (int i = 0; i < n_; ++i)
        if (contains(i)) mapped.push_back(perm[static_cast<size_t>(i)]);
    return Split(n_, mapped, origin_);
}

std::size_t Split::hash() const {
    std::size_t h = 1469598103934665603ull ^ static_cast<std::size_t>(n_);
    for (auto w : bits_) {
        h ^= static_cast<std::size_t>(w);
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<Split> splits(const Tree& t) {
    const int n = t.leaf_count();
    if (n < 4) throw Error(ErrorCode::bad_parameter, "splits require n >= 4");
    std::vector<Split> out;
    out.reserve(static_cast<size_t>(n) - 3);
    std::vector<int> stack;
    std::vector<char> seen(static_cast<size_t>(t.node_count()));
    for (auto [u, v] : t.internal_edges()) {
        std::fill(seen.begin(), seen.end(), 0);
        seen[static_cast<size_t>(u)] = seen[static_cast<size_t>(v)] = 1;
        stack.assign(1, v);
        std::vector<int> block;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (t.is_leaf(x)) {
                block.push_back(x);
                continue;
            }
            for (int y : t.neighbors(x))
                if (!seen[static_cast<size_t>(y)]) {
                    seen[static_cast<size_t>(y)] = 1;
                    stack.push_back(y);
                }
        }
        out.emplace_back(n, block, Edge{u, v});
    }
    return out;
}

// ---------------------------------------------------------------------------
// NNI moves
// ---------------------------------------------------------------------------

std::vector<Tree> nni_neighbors(const Tree& t) {
    const int n = t.leaf_count();
    if (n < 4) throw Error(ErrorCode::bad_parameter, "NNI requires n >= 4");
    const auto base_edges = t.edges();
    std::vector<Tree> out;
    out.reserve(2 * static_cast<size_t>(n - 3));
    for (auto [u, v] : t.internal_edges()) {
        std::array<int, 2> uo{}, vo{};
        int k = 0;
        for (int x : t.neighbors(u))
            if (x != v) uo[static_cast<size_t>(k++)] = x;
        k = 0;
        for (int x : t.neighbors(v))
            if (x != u) vo[static_cast<size_t>(k++)] = x;
        const int a = uo[1];  // the subtree of u that crosses the edge
        for (int b : vo) {
            std::vector<Edge> es = base_edges;
            for (auto& e : es) {
                if ((e.first == u && e.second == a) || (e.first == a && e.second == u))
                    e = {u, b};
                else if ((e.first == v && e.second == b) || (e.first == b && e.second == v))
                    e = {v, a};
            }
            out.emplace_back(t.labels_ptr(), std::move(es));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Unlabeled shape signature
// ---------------------------------------------------------------------------

std::string shape_signature(const Tree& t) {
    const int nodes = t.node_count();
    std::vector<int> deg(static_cast<size_t>(nodes));
    std::vector<char> removed(static_cast<size_t>(nodes), 0);
    std::vector<int> layer;
    for (int u = 0; u < nodes; ++u) {
        deg[static_cast<size_t>(u)] = t.is_leaf(u) ? 1 : 3;
        if (deg[static_cast<size_t>(u)] == 1) layer.push_back(u);
    }
    int live = nodes;
    while (live > 2) {
        std::vector<int> next;
        for (int u : layer) removed[static_cast<size_t>(u)] = 1;
        live -= static_cast<int>(layer.size());
        for (int u : layer)
            for (int v : t.neighbors(u))
                if (!removed[static_cast<size_t>(v)] && --deg[static_cast<size_t>(v)] == 1)
                    next.push_back(v);
        layer = std::move(next);
    }
    std::function<std::string(int, int)> enc = [&](int u, int parent) -> std::string {
        std::vector<std::string> ch;
        for (int v : t.neighbors(u))
            if (v != parent) ch.push_back(enc(v, u));
        std::sort(ch.begin(), ch.end());
        std::string s = "(";
        for (auto& c : ch) s += c;
        s += ')';
        return s;
    };
    std::vector<int> centers;
    for (int u = 0; u < nodes; ++u)
        if (!removed[static_cast<size_t>(u)]) centers.push_back(u);
    if (centers.size() == 1) return enc(centers[0], -1);
    std::string a = enc(centers[0], centers[1]);
    std::string b = enc(centers[1], centers[0]);
    if (b < a) std::swap(a, b);
    return a + "|" + b;
}

}  // namespace kic
