// SPDX-License-Identifier: Apache-2.0
#include "ugraph/product.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

namespace ugraph {

Factor explicit_factor(const Graph& g) {
    auto shared = std::make_shared<Graph>(g);
    return Factor{g.name().empty() ? "G" : g.name(), 0, g.size() - 1,
                  [shared](Coord a, Coord b) {
                      return shared->has_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
                  }};
}

Factor clique_factor(int omega) {
    return Factor{"K" + std::to_string(omega), 1, omega, [](Coord a, Coord b) { return a != b; }};
}

Factor path_factor(int h) {
    return Factor{"P" + std::to_string(h), 1, h,
                  [](Coord a, Coord b) { return a - b == 1 || b - a == 1; }};
}

bool product_adjacent(const std::vector<Factor>& factors, const std::vector<Coord>& a,
                      const std::vector<Coord>& b) {
    bool all_equal = true;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (a[k] == b[k]) continue;
        all_equal = false;
        if (!factors[k].adjacent(a[k], b[k])) return false;
    }
    return !all_equal;
}

std::optional<std::string> validate_witness(const Graph& g, const ProductWitness& w) {
    if (static_cast<int>(w.coords.size()) != g.size()) return "witness size differs from graph";
    std::set<std::vector<Coord>> seen;
    for (Vertex v = 0; v < g.size(); ++v) {
        const auto& c = w.coords[v];
        if (c.size() != w.factors.size())
            return "vertex " + std::to_string(v) + " has the wrong number of coordinates";
        for (std::size_t k = 0; k < c.size(); ++k)
            if (!w.factors[k].contains(c[k]))
                return "vertex " + std::to_string(v) + " coordinate " + std::to_string(k) +
                       " out of range";
        if (!seen.insert(c).second) return "witness is not injective at vertex " + std::to_string(v);
    }
    for (auto [u, v] : g.edges())
        if (!product_adjacent(w.factors, w.coords[u], w.coords[v]))
            return "edge " + std::to_string(u) + "-" + std::to_string(v) +
                   " does not map to a product edge";
    return std::nullopt;
}

Graph strong_product(const Graph& a, const Graph& b) {
    const int na = a.size(), nb = b.size();
    std::vector<Edge> es;
    auto id = [nb](int x, int y) { return x * nb + y; };
    for (int x1 = 0; x1 < na; ++x1)
        for (int y1 = 0; y1 < nb; ++y1)
            for (int x2 = x1; x2 < na; ++x2)
                for (int y2 = 0; y2 < nb; ++y2) {
                    if (id(x2, y2) <= id(x1, y1)) continue;
                    const bool xa = x1 == x2 || a.has_edge(x1, x2);
                    const bool ya = y1 == y2 || b.has_edge(y1, y2);
                    if (xa && ya) es.emplace_back(id(x1, y1), id(x2, y2));
                }
    return Graph(na * nb, es, a.name() + "⊠" + b.name());
}

ProductWitness trim_witness(const Graph& g, const ProductWitness& w) {
    if (auto err = validate_witness(g, w)) throw Error("trim_witness: invalid witness: " + *err);
    ProductWitness out;
    const auto nf = w.factors.size();
    out.coords.assign(g.size(), std::vector<Coord>(nf));
    for (std::size_t k = 0; k < nf; ++k) {
        std::vector<Coord> used;
        for (const auto& c : w.coords) used.push_back(c[k]);
        std::sort(used.begin(), used.end());
        used.erase(std::unique(used.begin(), used.end()), used.end());
        std::vector<Edge> es;
        for (std::size_t i = 0; i < used.size(); ++i)
            for (std::size_t j = i + 1; j < used.size(); ++j)
                if (w.factors[k].adjacent(used[i], used[j]))
                    es.emplace_back(static_cast<int>(i), static_cast<int>(j));
        Graph restricted(static_cast<int>(used.size()), es, w.factors[k].name + "'");
        out.factors.push_back(explicit_factor(restricted));
        // Compose with an earlier trim so `original` always refers to the
        // untrimmed coordinates.
        std::vector<Coord> orig = used;
        if (!w.original.empty())
            for (auto& c : orig) c = w.original[k].at(c - w.factors[k].lo);
        out.original.push_back(std::move(orig));
        for (Vertex v = 0; v < g.size(); ++v)
            out.coords[v][k] =
                std::lower_bound(used.begin(), used.end(), w.coords[v][k]) - used.begin();
    }
    return out;
}

ProductWitness lift_embedding(const Graph& g, const ProductWitness& w,
                              const std::vector<Factor>& target,
                              const std::vector<std::vector<Coord>>& row_embed) {
    if (w.factors.empty()) throw Error("lift_embedding: witness has no factors");
    const Factor& first = w.factors[0];
    if (static_cast<Coord>(row_embed.size()) != first.size())
        throw Error("lift_embedding: row embedding must cover every coordinate of factor 0");
    for (const auto& img : row_embed) {
        if (img.size() != target.size()) throw Error("lift_embedding: image arity mismatch");
        for (std::size_t k = 0; k < img.size(); ++k)
            if (!target[k].contains(img[k])) throw Error("lift_embedding: image out of range");
    }
    // Coordinates no vertex uses are padding and may map anywhere.
    std::set<Coord> used;
    for (const auto& c : w.coords) used.insert(c[0]);
    std::set<std::vector<Coord>> seen;
    for (Coord a : used)
        if (!seen.insert(row_embed[a - first.lo]).second) throw Error("lift_embedding: row embedding not injective");
    for (Coord a : used)
        for (Coord b : used)
            if (a < b && first.adjacent(a, b) &&
                !product_adjacent(target, row_embed[a - first.lo], row_embed[b - first.lo]))
                throw Error("lift_embedding: row embedding is not a homomorphism");

    ProductWitness out;
    out.factors = target;
    out.factors.insert(out.factors.end(), w.factors.begin() + 1, w.factors.end());
    for (const auto& c : w.coords) {
        std::vector<Coord> nc = row_embed[c[0] - first.lo];
        nc.insert(nc.end(), c.begin() + 1, c.end());
        out.coords.push_back(std::move(nc));
    }
    if (auto err = validate_witness(g, out)) throw Error("lift_embedding: " + *err);
    return out;
}

}  // namespace ugraph
