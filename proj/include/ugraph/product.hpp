// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ugraph/graph.hpp"

namespace ugraph {

using Coord = std::int64_t;

/// One factor of a strong product. Implicit factors (closures, cliques,
/// paths) only expose an adjacency predicate over their coordinate range.
struct Factor {
    std::string name;
    Coord lo = 0;   // coordinates are lo..hi inclusive
    Coord hi = -1;
    std::function<bool(Coord, Coord)> adjacent;

    Coord size() const noexcept { return hi >= lo ? hi - lo + 1 : 0; }
    bool contains(Coord c) const noexcept { return c >= lo && c <= hi; }
};

Factor explicit_factor(const Graph& g);
/// K_ω on colours 1..ω.
Factor clique_factor(int omega);
/// P_h on rows 1..h.
Factor path_factor(int h);

/// Injection of a graph into a strong product of factors.
struct ProductWitness {
    std::vector<Factor> factors;
    std::vector<std::vector<Coord>> coords;  // coords[v][k] for factor k
    /// For trimmed witnesses: original coordinate of each new coordinate,
    /// per factor. Empty when the witness was not trimmed.
    std::vector<std::vector<Coord>> original;
};

/// Strong-product adjacency: every coordinate equal or adjacent, not all equal.
bool product_adjacent(const std::vector<Factor>& factors, const std::vector<Coord>& a,
                      const std::vector<Coord>& b);

/// Total check that `w` embeds `g`: coordinates in range, injective, and every
/// edge lands on a product edge. Returns the first violation or nullopt.
std::optional<std::string> validate_witness(const Graph& g, const ProductWitness& w);

Graph strong_product(const Graph& a, const Graph& b);

/// Restricts every factor to the coordinates used by the witness. Restricted
/// factors are materialized (they have at most |V(G)| vertices) and relabeled
/// 0..m-1 in increasing order of the original coordinate, so a trimmed path
/// factor is still a subgraph of a path in its new numbering.
ProductWitness trim_witness(const Graph& g, const ProductWitness& w);

/// Replaces factor 0 of `w` by the factors of `target` using `row_embed`,
/// which maps every coordinate of factor 0 to a coordinate tuple in
/// `target`. Throws unless `row_embed`, restricted to the coordinates the
/// witness uses, is an injective homomorphism into the product of
/// `target`; the result is revalidated.
ProductWitness lift_embedding(const Graph& g, const ProductWitness& w,
                              const std::vector<Factor>& target,
                              const std::vector<std::vector<Coord>>& row_embed);

}  // namespace ugraph
