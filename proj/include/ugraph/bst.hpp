// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ugraph/bitstring.hpp"

namespace ugraph {

using Key = std::int64_t;

/// Binary search tree over distinct integer keys. Nodes are addressed by
/// the rank of their key; depths and parents are precomputed so that
/// signatures and ancestor queries are cheap. Immutable after construction.
class Bst {
public:
    static constexpr int kNone = -1;

    Bst() = default;

    /// Builds a tree from an explicit shape. `left[i]`/`right[i]` are ranks
    /// (or kNone) of the children of the node with rank i. Throws if the
    /// arrays do not describe a single binary search tree over `keys`.
    static Bst from_shape(std::vector<Key> keys, std::vector<int> left, std::vector<int> right,
                          int root);

    std::size_t size() const noexcept { return keys_.size(); }
    bool empty() const noexcept { return keys_.empty(); }
    int height() const noexcept { return height_; }
    int root() const noexcept { return root_; }

    std::span<const Key> keys() const noexcept { return keys_; }
    Key key(int node) const { return keys_.at(node); }
    int left(int node) const { return left_.at(node); }
    int right(int node) const { return right_.at(node); }
    int parent(int node) const { return parent_.at(node); }
    int depth_of_node(int node) const { return depth_.at(node); }

    std::optional<int> find(Key key) const noexcept;
    bool contains(Key key) const noexcept { return find(key).has_value(); }
    /// Rank of `key`; throws if absent.
    int node_of(Key key) const;

    int depth(Key key) const { return depth_[node_of(key)]; }

    /// σ_T(x): bit i is 0 iff step i of the root path goes to a left child.
    BitString signature(Key key) const { return signature_of_node(node_of(key)); }
    BitString signature_of_node(int node) const;
    /// Inverse of signature; nullopt if no node has this signature.
    std::optional<int> node_at(const BitString& sig) const;

    /// `a` is a (non-strict) ancestor of `b`.
    bool is_ancestor(int a, int b) const;
    /// The ancestor of `node` at depth `d` (d ≤ depth of node).
    int ancestor_at_depth(int node, int d) const;

private:
    void finalize();

    std::vector<Key> keys_;
    std::vector<int> left_, right_, parent_, depth_;
    int root_ = kNone;
    int height_ = -1;
};

/// Weight-biased BST: root is the smallest key whose cumulative weight (in
/// key order) reaches half the total, applied recursively. Every key y ends
/// at depth ≤ log2(W / w(y)). Keys must be sorted, distinct and non-empty;
/// weights positive.
Bst build_biased_bst(std::span<const Key> keys, std::span<const double> weights);

/// Unit weights: height ≤ floor(log2 |keys|).
Bst build_balanced_bst(std::span<const Key> keys);

/// Signatures that can follow `sigma` in sorted order in any BST of height
/// ≤ h: the strip form (drop trailing 1s, then one 0) when it exists, plus
/// sigma∘1∘0^j for every j with |sigma|+1+j ≤ h. Sorted, at most h+1 items.
std::vector<BitString> successor_set(const BitString& sigma, int h);

/// The strip form alone; nullopt for strings with no 0 to remove.
std::optional<BitString> strip_successor(const BitString& sigma);

}  // namespace ugraph
