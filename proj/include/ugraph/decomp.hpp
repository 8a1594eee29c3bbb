// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ugraph/closure.hpp"
#include "ugraph/graph.hpp"
#include "ugraph/product.hpp"

namespace ugraph {

struct TreeDecomposition {
    Graph tree;                           // nodes are bag indices
    std::vector<std::vector<Vertex>> bags;  // sorted
    int width() const;
};

struct PathDecomposition {
    std::vector<std::vector<Vertex>> bags;  // in path order, sorted
    int width() const;
};

/// Checks tree shape, edge coverage and connectivity of every vertex's bag
/// set. `n` is the vertex count of `g`.
std::optional<std::string> validate_tree_decomposition(const Graph& g, const TreeDecomposition& td);
std::optional<std::string> validate_path_decomposition(const Graph& g, const PathDecomposition& pd);

/// (t+1)(⌈log2 n⌉+1)-1: the width guaranteed by tree_to_path_decomposition.
int path_width_bound(int t, int n);
/// (t+1)⌊log3(2n+1)+1⌋-1, the sharper bound known for optimal conversions.
int path_width_reference(int t, int n);

/// Centroid recursion on the decomposition tree after removing bags that
/// are contained in a neighbour. A tree that is already a path is
/// returned unchanged.
PathDecomposition tree_to_path_decomposition(const TreeDecomposition& td, int n);

/// v -> [first bag containing v, last bag containing v], bags numbered 1..m.
IntervalRep path_decomposition_to_intervals(const PathDecomposition& pd, int n);

/// A t-tree with its construction order, family cliques and colouring.
struct TTree {
    int t = 0;
    Graph graph;
    std::vector<Vertex> order;                 // construction order
    std::vector<int> position;                 // inverse of order
    std::vector<std::vector<Vertex>> family;   // C_v, t+1 members, sorted
    std::vector<int> colour;                   // 1..t+1
    /// For later vertices: a vertex whose family clique contains the t
    /// earlier neighbours. For the first t+1 vertices: the previous one.
    std::vector<Vertex> attach;

    int size() const noexcept { return graph.size(); }
    /// p_i(v): the member of C_v coloured i.
    Vertex parent(Vertex v, int i) const;
    /// Tree decomposition with bag C_v at node v and tree edges v–attach(v).
    TreeDecomposition decomposition() const;
};

std::optional<std::string> validate_ttree(const TTree& tt);

/// Random t-tree on n vertices: each new vertex joins a random family
/// clique minus one random member and inherits that member's colour.
TTree build_ttree(int t, int n, std::uint64_t seed);

/// A t-tree containing `g` as a spanning subgraph, built from a width-≤t
/// decomposition: bags become cliques, vertices are added in order of the
/// depth of their topmost bag and attached to a family clique containing
/// their earlier neighbours.
TTree ttree_from_decomposition(const Graph& g, const TreeDecomposition& td, int t);

/// The t-tree `g` with a prescribed construction order. The first t+1
/// vertices must form a clique and every later vertex must have exactly t
/// earlier neighbours, all inside one earlier family clique.
TTree ttree_from_order(const Graph& g, int t, const std::vector<Vertex>& order);

/// Vertices reachable from v by at most d steps of moving to an H-parent.
std::vector<Vertex> reachable_ancestors(const TTree& tt, Vertex v, int d);

/// A member of Q_t: G ⊆ H ⊠ P_h with H a t-tree.
struct QtInstance {
    int t = 0;
    int h = 0;
    std::uint64_t seed = 0;
    Graph g;
    TTree host;                 // H
    ProductWitness witness;     // factors {H, P_h}; coords (v, row)
    TreeDecomposition td;       // of H
};

/// Random n-vertex subgraph of H ⊠ P_h with every row used. H has
/// max(t+1, m) vertices for a random m in [⌈n/h⌉, n].
QtInstance generate_qt_instance(int t, int n, int h, std::uint64_t seed);

/// Builds the witness-carrying instance for a graph already known to live
/// in H ⊠ P_h. `rows[v]` is 1-based and `host_vertex[v]` indexes `host`.
QtInstance make_qt_instance(const Graph& g, const TTree& host, const std::vector<Vertex>& host_vertex,
                            const std::vector<int>& rows);

}  // namespace ugraph
