// SPDX-License-Identifier: Apache-2.0
#include "ugraph/compressor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace ugraph {

int Saturator::max_v_degree() const {
    std::size_t m = 0;
    for (const auto& a : v_adj) m = std::max(m, a.size());
    return static_cast<int>(m);
}

int default_d_sat(int k, double eps, int N) {
    const double raw = std::ceil(256.0 * k * k / (eps * eps));
    const int cap = std::max(1, N / k);
    return static_cast<int>(std::clamp(raw, 1.0, static_cast<double>(cap)));
}

Saturator build_saturator(int N0, int k, double eps, std::uint64_t seed, int d_sat) {
    if (N0 < 1 || k < 1 || !(eps > 0) || d_sat < 0) throw Error("build_saturator: invalid parameters");
    Saturator s;
    s.k = k;
    s.N = (N0 + k - 1) / k * k;
    s.eps = eps;
    s.seed = seed;
    s.d_sat = d_sat == 0 ? default_d_sat(k, eps, s.N) : d_sat;
    std::mt19937_64 rng(seed);
    std::vector<int> perm(s.N);
    s.v_adj.assign(s.N, {});
    for (int round = 0; round < s.d_sat; ++round) {
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int v = 0; v < s.N; ++v) s.v_adj[v].push_back(perm[v] / k);
    }
    s.u_adj.assign(s.u_size(), {});
    for (int v = 0; v < s.N; ++v) {
        auto& a = s.v_adj[v];
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        for (int u : a) s.u_adj[u].push_back(v);
    }
    return s;
}

namespace {

// Kuhn's augmenting paths; match_u[u] is the position in x matched to u.
bool augment(const Saturator& s, const std::vector<int>& x, int i, std::vector<int>& match_u,
             std::vector<char>& seen) {
    for (int u : s.v_adj[x[i]]) {
        if (seen[u]) continue;
        seen[u] = 1;
        if (match_u[u] < 0 || augment(s, x, match_u[u], match_u, seen)) {
            match_u[u] = i;
            return true;
        }
    }
    return false;
}

// Members of x reachable by alternating paths from the unmatched x[i]:
// their neighbourhood is one smaller than the set.
std::vector<int> hall_violator(const Saturator& s, const std::vector<int>& x, int i,
                               const std::vector<int>& match_u) {
    std::set<int> members{i};
    std::vector<int> stack{i};
    std::set<int> seen_u;
    while (!stack.empty()) {
        int j = stack.back();
        stack.pop_back();
        for (int u : s.v_adj[x[j]])
            if (seen_u.insert(u).second && match_u[u] >= 0 && members.insert(match_u[u]).second)
                stack.push_back(match_u[u]);
    }
    std::vector<int> out;
    for (int j : members) out.push_back(x[j]);
    return out;
}

}  // namespace

std::vector<int> saturating_matching(const Saturator& s, const std::vector<int>& x) {
    std::vector<int> match_u(s.u_size(), -1);
    for (int i = 0; i < static_cast<int>(x.size()); ++i) {
        if (x[i] < 0 || x[i] >= s.N) throw Error("saturating_matching: vertex outside V");
        std::vector<char> seen(s.u_size(), 0);
        if (!augment(s, x, i, match_u, seen))
            throw Error("saturating_matching: set is not saturated (Hall violation)");
    }
    std::vector<int> partner(x.size(), -1);
    for (int u = 0; u < s.u_size(); ++u)
        if (match_u[u] >= 0) partner[match_u[u]] = u;
    return partner;
}

SaturationReport verify_saturation(const Saturator& s, int n, int samples, std::uint64_t seed) {
    SaturationReport r;
    if (n <= 0) return r;
    if (s.N <= 20 && s.u_size() <= 64) {
        r.exhaustive = true;
        std::vector<std::uint64_t> nb(s.N, 0);
        for (int v = 0; v < s.N; ++v)
            for (int u : s.v_adj[v]) nb[v] |= std::uint64_t{1} << u;
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << s.N); ++mask) {
            const int size = std::popcount(mask);
            if (size > n) continue;
            ++r.sets_checked;
            std::uint64_t un = 0;
            for (int v = 0; v < s.N; ++v)
                if (mask >> v & 1) un |= nb[v];
            if (std::popcount(un) < size) {
                r.ok = false;
                for (int v = 0; v < s.N; ++v)
                    if (mask >> v & 1) r.violator.push_back(v);
                return r;
            }
        }
        return r;
    }
    std::mt19937_64 rng(seed);
    std::vector<int> all(s.N);
    std::iota(all.begin(), all.end(), 0);
    const int m = std::min(n, s.N);
    for (int trial = 0; trial < samples; ++trial) {
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<int> x(all.begin(), all.begin() + m);
        ++r.sets_checked;
        std::vector<int> match_u(s.u_size(), -1);
        for (int i = 0; i < m; ++i) {
            std::vector<char> seen(s.u_size(), 0);
            if (!augment(s, x, i, match_u, seen)) {
                r.ok = false;
                r.violator = hall_violator(s, x, i, match_u);
                return r;
            }
        }
    }
    return r;
}

Graph compress(const Graph& gU, const Saturator& s) {
    if (gU.size() > s.N) throw Error("compress: host has more vertices than the saturator's V");
    std::vector<Edge> es;
    for (auto [a, b] : gU.edges())
        for (int u1 : s.v_adj[a])
            for (int u2 : s.v_adj[b])
                if (u1 != u2) es.emplace_back(std::min(u1, u2), std::max(u1, u2));
    return Graph(s.u_size(), es, "H");
}

bool compressed_adjacent(const Saturator& s, const HostAdjacency& host, int u1, int u2) {
    if (u1 == u2) return false;
    for (int a : s.u_adj.at(u1))
        for (int b : s.u_adj.at(u2))
            if (a != b && host(a, b)) return true;
    return false;
}

std::vector<int> embed_compressed(const Graph& f, const std::vector<std::int64_t>& emb,
                                  const Saturator& s) {
    if (static_cast<int>(emb.size()) != f.size()) throw Error("embed_compressed: embedding size mismatch");
    std::vector<int> x;
    for (auto v : emb) {
        if (v < 0 || v >= s.N) throw Error("embed_compressed: host vertex outside V");
        x.push_back(static_cast<int>(v));
    }
    return saturating_matching(s, x);
}

std::optional<std::string> validate_compressed_embedding(const Graph& f, const std::vector<int>& image,
                                                         const Saturator& s, const HostAdjacency& host) {
    if (static_cast<int>(image.size()) != f.size()) return "image size mismatch";
    std::set<int> seen;
    for (int u : image) {
        if (u < 0 || u >= s.u_size()) return "image outside U";
        if (!seen.insert(u).second) return "image not injective";
    }
    for (auto [a, b] : f.edges())
        if (!compressed_adjacent(s, host, image[a], image[b]))
            return "edge " + std::to_string(a) + "-" + std::to_string(b) + " not preserved";
    return std::nullopt;
}

}  // namespace ugraph
