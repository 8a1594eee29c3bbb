// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ugraph/graph.hpp"

namespace ugraph {

/// Bipartite graph between V = {0..N-1} and U = {0..N/k-1}: the union of
/// d_sat random k-to-1 contractions v -> π(v)/k.
struct Saturator {
    int N = 0;
    int k = 1;
    int d_sat = 1;
    double eps = 1.0;
    std::uint64_t seed = 0;
    std::vector<std::vector<int>> v_adj;  // V -> U, sorted
    std::vector<std::vector<int>> u_adj;  // U -> V, sorted

    int u_size() const noexcept { return N / k; }
    int max_v_degree() const;
};

/// ⌈2^8 k^2 / ε^2⌉ clamped to [1, N/k].
int default_d_sat(int k, double eps, int N);

/// N is N0 rounded up to a multiple of k. `d_sat` 0 selects the default.
Saturator build_saturator(int N0, int k, double eps, std::uint64_t seed, int d_sat = 0);

struct SaturationReport {
    bool ok = true;
    bool exhaustive = false;
    std::uint64_t sets_checked = 0;
    std::vector<int> violator;  // X ⊆ V with |N(X)| < |X| when !ok
};

/// Exhaustive Hall check over every X ⊆ V with |X| ≤ n when N ≤ 20;
/// otherwise maximum matchings on `samples` random n-subsets.
SaturationReport verify_saturation(const Saturator& s, int n, int samples = 200,
                                   std::uint64_t seed = 1);

/// Matching partner in U for each member of X. Throws if X is not saturated.
std::vector<int> saturating_matching(const Saturator& s, const std::vector<int>& x);

/// H_n: uu' is an edge iff some edge vv' of gU has vu, v'u' in the saturator.
Graph compress(const Graph& gU, const Saturator& s);

/// Adjacency in H_n for a host given only by a predicate on V indices.
using HostAdjacency = std::function<bool(std::int64_t, std::int64_t)>;
bool compressed_adjacent(const Saturator& s, const HostAdjacency& host, int u1, int u2);

/// Routes an embedding of F into gU through a saturating matching.
/// `emb[v]` is the gU vertex of v; returns the U vertex of v.
std::vector<int> embed_compressed(const Graph& f, const std::vector<std::int64_t>& emb,
                                  const Saturator& s);

/// Injective, and every edge of F lands on an H_n edge.
std::optional<std::string> validate_compressed_embedding(const Graph& f, const std::vector<int>& image,
                                                         const Saturator& s, const HostAdjacency& host);

}  // namespace ugraph
