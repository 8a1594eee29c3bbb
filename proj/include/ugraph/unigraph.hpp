// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ugraph/closure.hpp"
#include "ugraph/decomp.hpp"
#include "ugraph/graph.hpp"
#include "ugraph/product.hpp"
#include "ugraph/treeseq.hpp"

namespace ugraph {

/// Parameters of G_n. Vertices are (x, y, z) with |x|+|y| ≤ d+λ+2 and
/// z ∈ 0..d; the transition codec addresses signatures up to d+λ+2.
struct UgParams {
    std::uint64_t n = 1;
    int d = 0;
    int lambda = 0;
    TransitionCodec codec{0};

    /// d = ⌈log2 n⌉ and an explicit λ.
    static UgParams make(std::uint64_t n, int lambda);
    /// Smallest λ ≥ lambda_default(n) for which every code produced by embed
    /// fits: λ ≥ d + lcp_bits(d+λ+2).
    static UgParams with_default_lambda(std::uint64_t n);

    int budget() const noexcept { return d + lambda + 2; }
    int successor_horizon() const noexcept { return d + 2; }
    /// 2^(d+λ+3)·(d+λ+3)^2 and 2^(d+2λ+5)·(d+λ+3)^6.
    long double vertex_bound() const;
    long double edge_bound() const;
};

struct UgVertex {
    BitString x, y;
    int z = 0;
    friend bool operator==(const UgVertex&, const UgVertex&) = default;
    friend auto operator<=>(const UgVertex&, const UgVertex&) = default;
    std::string str() const;
};

bool valid_vertex(const UgParams& p, const UgVertex& v);

/// Directed Type-1 or Type-2 edge from u to v.
bool has_directed_edge(const UgParams& p, const UgVertex& u, const UgVertex& v);
/// Undirected adjacency in G_n. Throws on invalid vertices.
bool is_edge(const UgParams& p, const UgVertex& u, const UgVertex& v);

/// Exact vertex count (d+1)·Σ_{r≤D}(r+1)2^r.
std::uint64_t vertex_count(const UgParams& p);

struct MaterializedUg {
    UgParams params;
    std::vector<UgVertex> vertices;
    Graph graph;
};

/// Enumerates G_n explicitly. Throws when the vertex bound exceeds `cap`.
MaterializedUg materialize(const UgParams& p, long double cap = 1e7);

/// Edge count of G_n without storing edges.
std::uint64_t count_edges(const UgParams& p, long double cap = 1e7);

/// ζ for a graph with a witness into C_d ⊠ P_h (factor 0 closure keys,
/// factor 1 rows). Unused rows are skipped. Throws "λ too small" when a
/// vertex or transition code exceeds its budget.
std::vector<UgVertex> embed(const UgParams& p, const Graph& g, const ProductWitness& w);

/// Injective and every edge maps to an edge; returns the first violation.
std::optional<std::string> verify_embedding(const UgParams& p, const Graph& g,
                                            const std::vector<UgVertex>& image);

/// Image of a Q_t vertex in G_n ⊠ K_ω.
struct QtImage {
    UgVertex u;
    int colour = 1;
    friend bool operator==(const QtImage&, const QtImage&) = default;
};

struct QtEmbedding {
    UgParams params;
    int omega = 0;           // achieved pathwidth + 1
    int pathwidth = 0;
    int closure_depth = 0;
    std::vector<QtImage> image;
};

/// trim → pathwidth → intervals → closure embedding → lift → ζ, validated
/// edge by edge against G_n ⊠ K_ω.
QtEmbedding embed_qt(const UgParams& p, const QtInstance& inst);

std::optional<std::string> verify_qt_embedding(const QtEmbedding& e, const Graph& g);

}  // namespace ugraph

namespace ugraph {

/// Dense index of a G_n vertex: pairs ordered by |x|+|y|, then |x|, x, y;
/// then z. Inverse of vertex_at.
std::uint64_t vertex_index(const UgParams& p, const UgVertex& v);
UgVertex vertex_at(const UgParams& p, std::uint64_t index);

}  // namespace ugraph
