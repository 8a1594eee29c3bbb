// SPDX-License-Identifier: Apache-2.0
#include "ugraph/bst.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ugraph {

Bst Bst::from_shape(std::vector<Key> keys, std::vector<int> left, std::vector<int> right,
                    int root) {
    const auto n = keys.size();
    if (left.size() != n || right.size() != n) throw Error("bst: shape arrays size mismatch");
    if (n == 0) {
        if (root != kNone) throw Error("bst: empty tree with a root");
        return Bst{};
    }
    if (!std::is_sorted(keys.begin(), keys.end()) ||
        std::adjacent_find(keys.begin(), keys.end()) != keys.end())
        throw Error("bst: keys must be sorted and distinct");
    Bst t;
    t.keys_ = std::move(keys);
    t.left_ = std::move(left);
    t.right_ = std::move(right);
    t.root_ = root;
    t.finalize();
    return t;
}

void Bst::finalize() {
    const int n = static_cast<int>(keys_.size());
    if (root_ < 0 || root_ >= n) throw Error("bst: root out of range");
    parent_.assign(n, kNone);
    depth_.assign(n, -1);
    height_ = 0;
    // In-order traversal must visit ranks 0..n-1 in order.
    std::vector<std::pair<int, bool>> stack{{root_, false}};
    depth_[root_] = 0;
    int next_rank = 0;
    while (!stack.empty()) {
        auto [node, expanded] = stack.back();
        stack.pop_back();
        if (expanded) {
            if (node != next_rank) throw Error("bst: shape violates the search-tree order");
            ++next_rank;
            continue;
        }
        for (int child : {left_[node], right_[node]}) {
            if (child == kNone) continue;
            if (child < 0 || child >= n || depth_[child] != -1)
                throw Error("bst: shape is not a tree");
            parent_[child] = node;
            depth_[child] = depth_[node] + 1;
            height_ = std::max(height_, depth_[child]);
        }
        if (right_[node] != kNone) stack.push_back({right_[node], false});
        stack.push_back({node, true});
        if (left_[node] != kNone) stack.push_back({left_[node], false});
    }
    if (next_rank != n) throw Error("bst: shape does not reach every key");
}

std::optional<int> Bst::find(Key key) const noexcept {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) return std::nullopt;
    return static_cast<int>(it - keys_.begin());
}

int Bst::node_of(Key key) const {
    auto node = find(key);
    if (!node) throw Error("bst: key " + std::to_string(key) + " not in tree");
    return *node;
}

BitString Bst::signature_of_node(int node) const {
    std::string rev;
    for (int x = node; parent_.at(x) != kNone; x = parent_[x])
        rev.push_back(left_[parent_[x]] == x ? '0' : '1');
    std::reverse(rev.begin(), rev.end());
    return BitString::parse(rev);
}

std::optional<int> Bst::node_at(const BitString& sig) const {
    if (empty()) return std::nullopt;
    int x = root_;
    for (std::size_t i = 0; i < sig.size() && x != kNone; ++i) x = sig[i] ? right_[x] : left_[x];
    if (x == kNone) return std::nullopt;
    return x;
}

bool Bst::is_ancestor(int a, int b) const {
    if (depth_.at(a) > depth_.at(b)) return false;
    return ancestor_at_depth(b, depth_[a]) == a;
}

int Bst::ancestor_at_depth(int node, int d) const {
    if (d < 0 || d > depth_.at(node)) throw Error("bst: ancestor depth out of range");
    int x = node;
    while (depth_[x] > d) x = parent_[x];
    return x;
}

Bst build_biased_bst(std::span<const Key> keys, std::span<const double> weights) {
    const std::size_t n = keys.size();
    if (n == 0) throw Error("biased bst: empty key set");
    if (weights.size() != n) throw Error("biased bst: one weight per key required");
    for (double w : weights)
        if (!(w > 0.0) || !std::isfinite(w)) throw Error("biased bst: weights must be positive");
    for (std::size_t i = 1; i < n; ++i)
        if (keys[i - 1] >= keys[i]) throw Error("biased bst: keys must be sorted and distinct");

    std::vector<long double> prefix(n + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + weights[i];

    std::vector<int> left(n, Bst::kNone), right(n, Bst::kNone);
    struct Range {
        int lo, hi;       // half-open rank range
        int parent;
        bool is_left;
    };
    int root = Bst::kNone;
    std::vector<Range> work{{0, static_cast<int>(n), Bst::kNone, false}};
    while (!work.empty()) {
        auto [lo, hi, par, is_left] = work.back();
        work.pop_back();
        if (lo >= hi) continue;
        const long double base = prefix[lo];
        const long double total = prefix[hi] - base;
        // smallest i in [lo,hi) with 2*(prefix[i+1]-base) >= total
        int a = lo, b = hi - 1;
        while (a < b) {
            int mid = a + (b - a) / 2;
            if (2.0L * (prefix[mid + 1] - base) >= total)
                b = mid;
            else
                a = mid + 1;
        }
        const int r = a;
        if (par == Bst::kNone)
            root = r;
        else
            (is_left ? left[par] : right[par]) = r;
        work.push_back({lo, r, r, true});
        work.push_back({r + 1, hi, r, false});
    }
    return Bst::from_shape(std::vector<Key>(keys.begin(), keys.end()), std::move(left),
                           std::move(right), root);
}

Bst build_balanced_bst(std::span<const Key> keys) {
    std::vector<double> unit(keys.size(), 1.0);
    return build_biased_bst(keys, unit);
}

std::optional<BitString> strip_successor(const BitString& sigma) {
    BitString s = sigma;
    while (!s.empty() && s[s.size() - 1]) s.pop_back();
    if (s.empty()) return std::nullopt;
    s.pop_back();
    return s;
}

std::vector<BitString> successor_set(const BitString& sigma, int h) {
    if (h < 0 || sigma.size() > static_cast<std::size_t>(h))
        throw Error("successor set: |sigma| exceeds height bound");
    std::vector<BitString> out;
    if (auto s = strip_successor(sigma)) out.push_back(*s);
    BitString ext = sigma;
    ext.push_back(true);
    while (ext.size() <= static_cast<std::size_t>(h)) {
        out.push_back(ext);
        ext.push_back(false);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ugraph
