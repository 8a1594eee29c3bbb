// SPDX-License-Identifier: Apache-2.0
#include "ugraph/unigraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

namespace ugraph {

UgParams UgParams::make(std::uint64_t n, int lambda) {
    if (n < 1) throw Error("G_n: n must be positive");
    if (lambda < 0) throw Error("G_n: lambda must be non-negative");
    UgParams p;
    p.n = n;
    p.d = ceil_log2(n);
    p.lambda = lambda;
    p.codec = TransitionCodec(p.budget());
    return p;
}

UgParams UgParams::with_default_lambda(std::uint64_t n) {
    const int d = ceil_log2(n);
    int lambda = lambda_default(std::max<std::uint64_t>(n, 2));
    while (lambda < d + static_cast<int>(bits_for(static_cast<std::uint64_t>(d + lambda + 2)))) ++lambda;
    return make(n, lambda);
}

long double UgParams::vertex_bound() const {
    const long double m = d + lambda + 3;
    return std::ldexp(1.0L, d + lambda + 3) * m * m;
}

long double UgParams::edge_bound() const {
    const long double m = d + lambda + 3;
    return std::ldexp(1.0L, d + 2 * lambda + 5) * std::pow(m, 6);
}

std::string UgVertex::str() const {
    return "(" + x.display() + "," + y.display() + "," + std::to_string(z) + ")";
}

bool valid_vertex(const UgParams& p, const UgVertex& v) {
    return static_cast<int>(v.x.size() + v.y.size()) <= p.budget() && v.z >= 0 && v.z <= p.d;
}

namespace {

bool is_successor(const BitString& y1, const BitString& y2, int h) {
    if (static_cast<int>(y1.size()) > h || y1 == y2) return false;
    if (auto s = strip_successor(y1); s && *s == y2) return true;
    // y1 ∘ 1 ∘ 0^j with |y2| ≤ h.
    if (y2.size() <= y1.size() || static_cast<int>(y2.size()) > h) return false;
    if (!y1.is_prefix_of(y2) || !y2[y1.size()]) return false;
    for (std::size_t i = y1.size() + 1; i < y2.size(); ++i)
        if (y2[i]) return false;
    return true;
}

// Shortest admissible common prefix length for a Type-2 edge into x2,
// or -1 if none exists.
int type2_prefix(const UgParams& p, std::size_t y1_len, std::size_t x2_len) {
    const int w = static_cast<int>(p.codec.lcp_bits());
    if (p.lambda < w) return -1;
    const int k = std::max(0, static_cast<int>(x2_len) - (p.lambda - w));
    if (k > p.budget() - static_cast<int>(y1_len)) return -1;
    return k;
}

}  // namespace

bool has_directed_edge(const UgParams& p, const UgVertex& u, const UgVertex& v) {
    if (u == v) return false;
    if (u.y == v.y) return v.x.is_prefix_of(u.x);
    if (!is_successor(u.y, v.y, p.successor_horizon())) return false;
    const int k = type2_prefix(p, u.y.size(), v.x.size());
    return k >= 0 && v.x.prefix(k).compatible(u.x);
}

bool is_edge(const UgParams& p, const UgVertex& u, const UgVertex& v) {
    if (!valid_vertex(p, u) || !valid_vertex(p, v))
        throw Error("is_edge: invalid vertex " + (valid_vertex(p, u) ? v.str() : u.str()));
    return has_directed_edge(p, u, v) || has_directed_edge(p, v, u);
}

std::uint64_t vertex_count(const UgParams& p) {
    std::uint64_t pairs = 0;
    for (int r = 0; r <= p.budget(); ++r) pairs += static_cast<std::uint64_t>(r + 1) << r;
    return pairs * static_cast<std::uint64_t>(p.d + 1);
}

namespace {

std::uint64_t encode_bits(const BitString& s) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < s.size(); ++i) v = (v << 1) | (s[i] ? 1 : 0);
    return v;
}

struct PairSpace {
    std::vector<std::pair<BitString, BitString>> pairs;
    std::unordered_map<std::uint64_t, int> index;
    int shift = 0;

    explicit PairSpace(int budget) : shift(budget + 2) {
        for (int lx = 0; lx <= budget; ++lx)
            for (int ly = 0; lx + ly <= budget; ++ly)
                for (std::uint64_t xv = 0; xv < (std::uint64_t{1} << lx); ++xv)
                    for (std::uint64_t yv = 0; yv < (std::uint64_t{1} << ly); ++yv) {
                        BitString x = BitString::from_uint(xv, lx), y = BitString::from_uint(yv, ly);
                        index.emplace(key(x, y), static_cast<int>(pairs.size()));
                        pairs.emplace_back(std::move(x), std::move(y));
                    }
    }
    std::uint64_t key(const BitString& x, const BitString& y) const {
        return (encode_bits(x) << shift) | encode_bits(y);
    }
    int find(const BitString& x, const BitString& y) const { return index.at(key(x, y)); }
};

// Undirected edges between distinct (x, y) pairs; every pair is also joined
// to itself across different z, which callers account for separately.
std::vector<Edge> pair_edges(const UgParams& p, const PairSpace& ps) {
    const int budget = p.budget();
    std::vector<Edge> out;
    for (int a = 0; a < static_cast<int>(ps.pairs.size()); ++a) {
        const auto& [x1, y1] = ps.pairs[a];
        for (std::size_t k = 0; k < x1.size(); ++k) {
            const int b = ps.find(x1.prefix(k), y1);
            out.emplace_back(std::min(a, b), std::max(a, b));
        }
        if (static_cast<int>(y1.size()) > p.successor_horizon()) continue;
        for (const auto& y2 : successor_set(y1, p.successor_horizon())) {
            if (y2 == y1) continue;
            for (int len = 0; len + static_cast<int>(y2.size()) <= budget; ++len) {
                const int k = type2_prefix(p, y1.size(), len);
                if (k < 0) continue;
                // x2 of length `len` with x2[0:k] ⋄ x1.
                const BitString fixed = k <= static_cast<int>(x1.size()) ? x1.prefix(k) : x1;
                const int free = len - static_cast<int>(fixed.size());
                for (std::uint64_t s = 0; s < (std::uint64_t{1} << free); ++s) {
                    BitString x2 = fixed;
                    x2.append(BitString::from_uint(s, free));
                    const int b = ps.find(x2, y2);
                    if (a != b) out.emplace_back(std::min(a, b), std::max(a, b));
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void check_cap(const UgParams& p, long double cap) {
    if (p.vertex_bound() > cap)
        throw Error("G_n too large to materialize (vertex bound " +
                    std::to_string(static_cast<double>(p.vertex_bound())) + "); use implicit mode");
}

}  // namespace

std::uint64_t count_edges(const UgParams& p, long double cap) {
    check_cap(p, cap);
    PairSpace ps(p.budget());
    const auto pe = pair_edges(p, ps);
    const std::uint64_t z = p.d + 1;
    return pe.size() * z * z + ps.pairs.size() * (z * (z - 1) / 2);
}

MaterializedUg materialize(const UgParams& p, long double cap) {
    check_cap(p, cap);
    PairSpace ps(p.budget());
    const auto pe = pair_edges(p, ps);
    const int z = p.d + 1;
    MaterializedUg m;
    m.params = p;
    for (const auto& [x, y] : ps.pairs)
        for (int c = 0; c < z; ++c) m.vertices.push_back({x, y, c});
    std::vector<Edge> es;
    es.reserve(pe.size() * z * z + ps.pairs.size() * z * (z - 1) / 2);
    for (auto [a, b] : pe)
        for (int c1 = 0; c1 < z; ++c1)
            for (int c2 = 0; c2 < z; ++c2) es.emplace_back(a * z + c1, b * z + c2);
    for (int a = 0; a < static_cast<int>(ps.pairs.size()); ++a)
        for (int c1 = 0; c1 < z; ++c1)
            for (int c2 = c1 + 1; c2 < z; ++c2) es.emplace_back(a * z + c1, a * z + c2);
    m.graph = Graph(static_cast<int>(m.vertices.size()), es, "G" + std::to_string(p.n));
    return m;
}

std::vector<UgVertex> embed(const UgParams& p, const Graph& g, const ProductWitness& w) {
    if (w.factors.size() != 2) throw Error("embed: witness must have a closure and a path factor");
    if (auto err = validate_witness(g, w)) throw Error("embed: invalid witness: " + *err);
    const ClosureGraph cg(p.d);
    std::vector<Coord> rows;
    for (const auto& c : w.coords) {
        if (!cg.contains(c[0])) throw Error("embed: closure key outside C_d");
        rows.push_back(c[1]);
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    auto row_of = [&](Vertex v) {
        return static_cast<int>(std::lower_bound(rows.begin(), rows.end(), w.coords[v][1]) - rows.begin());
    };
    const int h = static_cast<int>(rows.size());
    if (h == 0) return {};
    std::vector<std::vector<Key>> s(h);
    for (Vertex v = 0; v < g.size(); ++v) s[row_of(v)].push_back(w.coords[v][0]);
    const TreeSequence ts = build_tree_sequence(s);
    if (auto err = check_tree_sequence(ts)) throw Error("embed: tree sequence: " + *err);

    std::vector<Key> row_keys(h);
    std::vector<double> weights(h);
    for (int i = 0; i < h; ++i) row_keys[i] = i, weights[i] = static_cast<double>(ts.trees[i].size());
    const Bst row_tree = build_biased_bst(row_keys, weights);

    auto x_sig = [&](int row, Key key) {
        auto [lo, hi] = cg.descendant_interval(key);
        return ts.trees[row].signature(min_depth_in_range(ts.trees[row], lo, hi));
    };
    std::vector<UgVertex> image(g.size());
    for (Vertex v = 0; v < g.size(); ++v) {
        const int i = row_of(v);
        const Key key = w.coords[v][0];
        image[v] = {x_sig(i, key), row_tree.signature(i), cg.depth(key)};
        const int used = static_cast<int>(image[v].x.size() + image[v].y.size());
        if (used > p.budget())
            throw Error("embed: λ too small: |x|+|y| = " + std::to_string(used) + " exceeds " +
                        std::to_string(p.budget()));
    }
    for (auto [a, b] : g.edges()) {
        int ia = row_of(a), ib = row_of(b);
        if (ia == ib) continue;
        const Vertex upper = ia < ib ? b : a;
        const int i = std::min(ia, ib);
        const auto before = x_sig(i, w.coords[upper][0]);
        const auto len = p.codec.code_length(before, image[upper].x);
        if (static_cast<int>(len) > p.lambda)
            throw Error("embed: λ too small: transition code of length " + std::to_string(len) +
                        " exceeds " + std::to_string(p.lambda));
    }
    return image;
}

std::optional<std::string> verify_embedding(const UgParams& p, const Graph& g,
                                            const std::vector<UgVertex>& image) {
    if (static_cast<int>(image.size()) != g.size()) return "image size differs from graph";
    std::set<UgVertex> seen;
    for (Vertex v = 0; v < g.size(); ++v) {
        if (!valid_vertex(p, image[v])) return "vertex " + std::to_string(v) + " maps outside G_n";
        if (!seen.insert(image[v]).second) return "not injective at vertex " + std::to_string(v);
    }
    for (auto [a, b] : g.edges())
        if (!is_edge(p, image[a], image[b]))
            return "edge " + std::to_string(a) + "-" + std::to_string(b) + " maps to non-edge " +
                   image[a].str() + " " + image[b].str();
    return std::nullopt;
}

QtEmbedding embed_qt(const UgParams& p, const QtInstance& inst) {
    const Graph& g = inst.g;
    if (static_cast<std::uint64_t>(g.size()) > p.n) throw Error("embed_qt: instance larger than n");
    QtEmbedding out;
    out.params = p;
    if (g.size() == 0) return out;

    const ProductWitness trimmed = trim_witness(g, inst.witness);
    const Factor& hf = trimmed.factors[0];
    const int nh = static_cast<int>(hf.size());
    const auto& used = trimmed.original[0];  // trimmed host index -> host vertex

    // Decomposition of the used part of H, relabelled to trimmed indices.
    std::vector<int> relabel(inst.host.size(), -1);
    for (int i = 0; i < nh; ++i) relabel[used[i]] = i;
    TreeDecomposition td;
    td.tree = inst.td.tree;
    for (const auto& bag : inst.td.bags) {
        std::vector<Vertex> b;
        for (Vertex v : bag)
            if (relabel[v] >= 0) b.push_back(relabel[v]);
        std::sort(b.begin(), b.end());
        td.bags.push_back(std::move(b));
    }
    std::vector<Edge> hes;
    for (int a = 0; a < nh; ++a)
        for (int b = a + 1; b < nh; ++b)
            if (hf.adjacent(a, b)) hes.emplace_back(a, b);
    const Graph hgraph(nh, hes, "H'");
    if (auto err = validate_tree_decomposition(hgraph, td)) throw Error("embed_qt: " + *err);

    const PathDecomposition pd = tree_to_path_decomposition(td, nh);
    if (auto err = validate_path_decomposition(hgraph, pd)) throw Error("embed_qt: " + *err);
    if (pd.width() > path_width_bound(inst.t, nh)) throw Error("embed_qt: pathwidth above bound");
    out.pathwidth = pd.width();
    out.omega = pd.width() + 1;
    const IntervalRep rep = path_decomposition_to_intervals(pd, nh);
    const ClosureEmbedding ce = embed_interval_graph(rep, out.omega, nh);
    out.closure_depth = ce.d;

    std::vector<std::vector<Coord>> row_embed;
    for (auto [key, colour] : ce.place) row_embed.push_back({key, colour});
    const ProductWitness lifted =
        lift_embedding(g, trimmed, {ClosureGraph(ce.d).factor(), clique_factor(out.omega)}, row_embed);

    // Project away the clique coordinate and merge coinciding vertices.
    std::map<std::pair<Coord, Coord>, int> proj_index;
    std::vector<int> proj(g.size());
    ProductWitness pw;
    pw.factors = {ClosureGraph(p.d).factor(), path_factor(static_cast<int>(lifted.factors[2].size()))};
    for (Vertex v = 0; v < g.size(); ++v) {
        const auto key = std::make_pair(lifted.coords[v][0], lifted.coords[v][2] + 1);
        auto [it, fresh] = proj_index.emplace(key, static_cast<int>(pw.coords.size()));
        if (fresh) pw.coords.push_back({key.first, key.second});
        proj[v] = it->second;
    }
    std::vector<Edge> pes;
    for (auto [a, b] : g.edges())
        if (proj[a] != proj[b]) pes.emplace_back(proj[a], proj[b]);
    const Graph projected(static_cast<int>(pw.coords.size()), pes);
    const auto zeta = embed(p, projected, pw);

    for (Vertex v = 0; v < g.size(); ++v)
        out.image.push_back({zeta[proj[v]], static_cast<int>(lifted.coords[v][1])});
    if (auto err = verify_qt_embedding(out, g)) throw Error("embed_qt: " + *err);
    return out;
}

std::optional<std::string> verify_qt_embedding(const QtEmbedding& e, const Graph& g) {
    if (static_cast<int>(e.image.size()) != g.size()) return "image size differs from graph";
    std::set<std::pair<UgVertex, int>> seen;
    for (Vertex v = 0; v < g.size(); ++v) {
        const auto& im = e.image[v];
        if (!valid_vertex(e.params, im.u)) return "vertex " + std::to_string(v) + " maps outside G_n";
        if (im.colour < 1 || im.colour > e.omega) return "colour out of range";
        if (!seen.insert({im.u, im.colour}).second) return "not injective at vertex " + std::to_string(v);
    }
    for (auto [a, b] : g.edges()) {
        const auto& ia = e.image[a];
        const auto& ib = e.image[b];
        if (!(ia.u == ib.u || is_edge(e.params, ia.u, ib.u)))
            return "edge " + std::to_string(a) + "-" + std::to_string(b) + " maps to a non-edge";
    }
    return std::nullopt;
}

}  // namespace ugraph

namespace ugraph {

std::uint64_t vertex_index(const UgParams& p, const UgVertex& v) {
    if (!valid_vertex(p, v)) throw Error("vertex_index: invalid vertex " + v.str());
    const int lx = static_cast<int>(v.x.size()), ly = static_cast<int>(v.y.size());
    const int r = lx + ly;
    std::uint64_t off = 0;
    for (int s = 0; s < r; ++s) off += static_cast<std::uint64_t>(s + 1) << s;
    const std::uint64_t xv = lx ? v.x.read_uint(0, lx) : 0, yv = ly ? v.y.read_uint(0, ly) : 0;
    const std::uint64_t pair = off + (static_cast<std::uint64_t>(lx) << r) + (xv << ly) + yv;
    return pair * static_cast<std::uint64_t>(p.d + 1) + static_cast<std::uint64_t>(v.z);
}

UgVertex vertex_at(const UgParams& p, std::uint64_t index) {
    const std::uint64_t z = p.d + 1;
    std::uint64_t pair = index / z;
    UgVertex v;
    v.z = static_cast<int>(index % z);
    for (int r = 0; r <= p.budget(); ++r) {
        const std::uint64_t block = static_cast<std::uint64_t>(r + 1) << r;
        if (pair >= block) {
            pair -= block;
            continue;
        }
        const int lx = static_cast<int>(pair >> r);
        const std::uint64_t rest = pair & ((std::uint64_t{1} << r) - 1);
        const int ly = r - lx;
        v.x = BitString::from_uint(rest >> ly, lx);
        v.y = BitString::from_uint(rest & ((std::uint64_t{1} << ly) - 1), ly);
        return v;
    }
    throw Error("vertex_at: index out of range");
}

}  // namespace ugraph
