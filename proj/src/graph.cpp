// SPDX-License-Identifier: Apache-2.0
#include "ugraph/graph.hpp"

#include <algorithm>
#include <functional>

namespace ugraph {

Graph::Graph(int n, std::string name) : adj_(std::max(0, n)), name_(std::move(name)) {
    if (n < 0) throw Error("graph: negative vertex count");
}

Graph::Graph(int n, std::span<const Edge> edges, std::string name) : Graph(n, std::move(name)) {
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw Error("graph: edge endpoint out of range");
        if (u == v) throw Error("graph: loops are not allowed");
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& a : adj_) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        edge_count_ += a.size();
    }
    edge_count_ /= 2;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    const auto& a = adj_.at(u);
    return std::binary_search(a.begin(), a.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < size(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
    std::vector<int> index(size(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) index.at(vertices[i]) = static_cast<int>(i);
    std::vector<Edge> es;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (Vertex w : adj_[vertices[i]])
            if (index[w] > static_cast<int>(i)) es.emplace_back(static_cast<int>(i), index[w]);
    return Graph(static_cast<int>(vertices.size()), es, name_);
}

Graph complete_graph(int n) {
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return Graph(n, es, "K" + std::to_string(n));
}

Graph path_graph(int n) {
    std::vector<Edge> es;
    for (int u = 0; u + 1 < n; ++u) es.emplace_back(u, u + 1);
    return Graph(n, es, "P" + std::to_string(n));
}

Graph star_graph(int leaves) {
    std::vector<Edge> es;
    for (int v = 1; v <= leaves; ++v) es.emplace_back(0, v);
    return Graph(leaves + 1, es, "K1," + std::to_string(leaves));
}

bool degree_domination_check(const Graph& g, int n) {
    std::vector<int> deg(g.size());
    for (Vertex v = 0; v < g.size(); ++v) deg[v] = g.degree(v);
    std::sort(deg.begin(), deg.end(), std::greater<>());
    for (int i = 1; i <= n; ++i) {
        const int need = n / i - 1;
        const int have = i - 1 < static_cast<int>(deg.size()) ? deg[i - 1] : 0;
        if (have < need) return false;
    }
    return true;
}

}  // namespace ugraph
