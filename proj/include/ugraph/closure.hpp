// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ugraph/bst.hpp"
#include "ugraph/graph.hpp"
#include "ugraph/product.hpp"

namespace ugraph {

/// Exact rational with positive denominator, always reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n) {}  // NOLINT: implicit from integers
    Rational(std::int64_t n, std::int64_t d);

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    /// ⌊x⌋ and ⌈x⌉.
    std::int64_t floor() const;
    std::int64_t ceil() const;
    std::string str() const;
};

struct Interval {
    Rational a, b;
    bool intersects(const Interval& o) const { return !(b < o.a || o.b < a); }
    bool contains(const Rational& x) const { return a <= x && x <= b; }
};

/// One closed interval per vertex.
struct IntervalRep {
    std::vector<Interval> iv;
    int size() const noexcept { return static_cast<int>(iv.size()); }
};

Graph intersection_graph(const IntervalRep& rep);
/// Maximum number of intervals sharing a point: the clique number of the
/// intersection graph.
int max_load(const IntervalRep& rep);
/// Every edge of `g` joins intersecting intervals.
bool represents_supergraph(const IntervalRep& rep, const Graph& g);

/// Makes left endpoints pairwise distinct without changing the
/// intersection graph: the k-th member of a group sharing a left endpoint
/// is moved left by k·δ, where δ is below half of every endpoint gap.
IntervalRep perturb_left_endpoints(const IntervalRep& rep);

struct Separation {
    std::vector<int> x1, x2, z;
};

/// Splits the intervals at the left endpoint of the (⌊n/2⌋+1)-th interval
/// in left-endpoint order. `subset` restricts to those vertex ids (all if
/// empty). Throws on duplicate left endpoints or if |Z| > omega.
Separation interval_separator(const IntervalRep& rep, int omega,
                              const std::vector<int>& subset = {});

/// C_d: nodes are keys 1..2^(d+1)-1 of the complete BST B_d, adjacent when
/// one is a proper ancestor of the other.
class ClosureGraph {
public:
    explicit ClosureGraph(int d);

    int depth_param() const noexcept { return d_; }
    Key size() const noexcept { return (Key{1} << (d_ + 1)) - 1; }
    Key root() const noexcept { return Key{1} << d_; }
    bool contains(Key v) const noexcept { return v >= 1 && v <= size(); }

    /// Height of the subtree below v (0 for leaves).
    int subtree_height(Key v) const;
    int depth(Key v) const { return d_ - subtree_height(v); }
    /// Keys of all descendants of v, including v.
    std::pair<Key, Key> descendant_interval(Key v) const;
    bool is_ancestor(Key a, Key b) const;
    bool adjacent(Key u, Key v) const { return u != v && (is_ancestor(u, v) || is_ancestor(v, u)); }
    BitString signature(Key v) const;

    Factor factor() const;

private:
    int d_;
};

/// ⌈log2 n⌉ with n ≤ 1 mapped to 0.
int ceil_log2(std::uint64_t n);

/// Shallowest key of `t` inside [lo, hi]. Throws if none.
Key min_depth_in_range(const Bst& t, Key lo, Key hi);

/// Placement of every vertex in C_d ⊠ K_ω: (closure key, colour 1..ω).
struct ClosureEmbedding {
    int d = 0;
    int omega = 0;
    std::vector<std::pair<Key, int>> place;

    ProductWitness witness() const;
};

/// Recursive separator embedding of the intersection graph of `rep` into
/// C_{⌈log2 n⌉} ⊠ K_ω. Left endpoints are perturbed first when needed.
ClosureEmbedding embed_interval_graph(const IntervalRep& rep, int omega, int n);

}  // namespace ugraph
