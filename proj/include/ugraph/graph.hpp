// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ugraph/bitstring.hpp"

namespace ugraph {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on dense vertex ids 0..n-1 with sorted adjacency.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n, std::string name = {});
    /// Builds from an edge list; loops are rejected, duplicates merged.
    Graph(int n, std::span<const Edge> edges, std::string name = {});

    int size() const noexcept { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
    int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }
    bool has_edge(Vertex u, Vertex v) const;

    /// Edges with u < v, in lexicographic order.
    std::vector<Edge> edges() const;

    Graph induced(std::span<const Vertex> vertices) const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t edge_count_ = 0;
    std::string name_;
};

Graph complete_graph(int n);
Graph path_graph(int n);
Graph star_graph(int leaves);

/// Sorted-descending degree sequence pointwise dominates
/// (n-1, ⌊n/2⌋-1, ⌊n/3⌋-1, ...): the necessary condition for containing every
/// star forest on n vertices. Missing vertices count as degree 0.
bool degree_domination_check(const Graph& g, int n);

}  // namespace ugraph
