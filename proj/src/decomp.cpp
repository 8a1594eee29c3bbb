// SPDX-License-Identifier: Apache-2.0
#include "ugraph/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace ugraph {

namespace {

int max_bag(const std::vector<std::vector<Vertex>>& bags) {
    std::size_t m = 0;
    for (const auto& b : bags) m = std::max(m, b.size());
    return static_cast<int>(m) - 1;
}

bool is_tree(const Graph& t) {
    if (t.size() == 0) return true;
    if (t.edge_count() != static_cast<std::size_t>(t.size() - 1)) return false;
    std::vector<char> seen(t.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : t.neighbors(x))
            if (!seen[y]) seen[y] = 1, ++count, stack.push_back(y);
    }
    return count == t.size();
}

bool contains_sorted(const std::vector<Vertex>& bag, Vertex v) {
    return std::binary_search(bag.begin(), bag.end(), v);
}

}  // namespace

int TreeDecomposition::width() const { return max_bag(bags); }
int PathDecomposition::width() const { return max_bag(bags); }

std::optional<std::string> validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
    if (static_cast<int>(td.bags.size()) != td.tree.size()) return "bag count differs from tree size";
    if (!is_tree(td.tree)) return "decomposition tree is not a tree";
    for (const auto& b : td.bags) {
        if (!std::is_sorted(b.begin(), b.end()) || std::adjacent_find(b.begin(), b.end()) != b.end())
            return "bag not sorted or has duplicates";
        for (Vertex v : b)
            if (v < 0 || v >= g.size()) return "bag vertex out of range";
    }
    std::vector<std::vector<int>> where(g.size());
    for (int x = 0; x < td.tree.size(); ++x)
        for (Vertex v : td.bags[x]) where[v].push_back(x);
    for (Vertex v = 0; v < g.size(); ++v) {
        if (where[v].empty()) return "vertex " + std::to_string(v) + " in no bag";
        // Nodes holding v must induce a connected subtree.
        std::vector<char> holds(td.tree.size(), 0), seen(td.tree.size(), 0);
        for (int x : where[v]) holds[x] = 1;
        std::vector<int> stack{where[v][0]};
        seen[where[v][0]] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : td.tree.neighbors(x))
                if (holds[y] && !seen[y]) seen[y] = 1, ++count, stack.push_back(y);
        }
        if (count != where[v].size()) return "bags of vertex " + std::to_string(v) + " are disconnected";
    }
    for (auto [u, v] : g.edges()) {
        bool ok = false;
        for (int x : where[u])
            if (contains_sorted(td.bags[x], v)) ok = true;
        if (!ok) return "edge " + std::to_string(u) + "-" + std::to_string(v) + " not covered";
    }
    return std::nullopt;
}

std::optional<std::string> validate_path_decomposition(const Graph& g, const PathDecomposition& pd) {
    TreeDecomposition td;
    td.bags = pd.bags;
    td.tree = path_graph(static_cast<int>(pd.bags.size()));
    if (pd.bags.empty() && g.size() > 0) return "empty path decomposition";
    return validate_tree_decomposition(g, td);
}

int path_width_bound(int t, int n) { return (t + 1) * (ceil_log2(std::max(n, 1)) + 1) - 1; }

int path_width_reference(int t, int n) {
    return (t + 1) * static_cast<int>(std::floor(std::log(2.0 * n + 1) / std::log(3.0) + 1)) - 1;
}

namespace {

// Merges every bag contained in a neighbouring bag into that neighbour.
TreeDecomposition reduce(const TreeDecomposition& td) {
    const int m = td.tree.size();
    std::vector<std::set<int>> adj(m);
    for (auto [a, b] : td.tree.edges()) adj[a].insert(b), adj[b].insert(a);
    std::vector<char> alive(m, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < m; ++x) {
            if (!alive[x]) continue;
            for (int y : adj[x]) {
                const auto& bx = td.bags[x];
                const auto& by = td.bags[y];
                if (!std::includes(by.begin(), by.end(), bx.begin(), bx.end())) continue;
                for (int z : adj[x])
                    if (z != y) adj[z].erase(x), adj[z].insert(y), adj[y].insert(z);
                adj[y].erase(x);
                adj[x].clear();
                alive[x] = 0;
                changed = true;
                break;
            }
        }
    }
    std::vector<int> index(m, -1);
    TreeDecomposition out;
    for (int x = 0; x < m; ++x)
        if (alive[x]) index[x] = static_cast<int>(out.bags.size()), out.bags.push_back(td.bags[x]);
    std::vector<Edge> es;
    for (int x = 0; x < m; ++x)
        if (alive[x])
            for (int y : adj[x])
                if (x < y) es.emplace_back(index[x], index[y]);
    out.tree = Graph(static_cast<int>(out.bags.size()), es);
    return out;
}

std::vector<int> path_order(const Graph& tree) {
    if (tree.size() == 0) return {};
    int start = 0;
    for (int x = 0; x < tree.size(); ++x)
        if (tree.degree(x) <= 1) {
            start = x;
            break;
        }
    std::vector<int> order{start};
    int prev = -1, cur = start;
    while (static_cast<int>(order.size()) < tree.size()) {
        for (int y : tree.neighbors(cur))
            if (y != prev) {
                prev = cur;
                cur = y;
                break;
            }
        order.push_back(cur);
    }
    return order;
}

std::vector<std::vector<Vertex>> centroid_paths(const TreeDecomposition& td, std::vector<int> nodes,
                                                std::vector<char>& removed) {
    // Component sizes by a rooted traversal within the live component.
    const int root = nodes[0];
    std::vector<int> parent(td.tree.size(), -1), size(td.tree.size(), 1), order;
    std::vector<int> stack{root};
    parent[root] = root;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        order.push_back(x);
        for (int y : td.tree.neighbors(x))
            if (!removed[y] && parent[y] == -1) parent[y] = x, stack.push_back(y);
    }
    const int total = static_cast<int>(order.size());
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (*it != root) size[parent[*it]] += size[*it];
    int centroid = root;
    for (int x : order) {
        int biggest = total - size[x];
        for (int y : td.tree.neighbors(x))
            if (!removed[y] && parent[y] == x) biggest = std::max(biggest, size[y]);
        if (2 * biggest <= total) {
            centroid = x;
            break;
        }
    }
    removed[centroid] = 1;
    const auto& cbag = td.bags[centroid];
    std::vector<std::vector<Vertex>> out{cbag};
    for (int y : td.tree.neighbors(centroid)) {
        if (removed[y]) continue;
        for (auto& bag : centroid_paths(td, {y}, removed)) {
            std::vector<Vertex> merged;
            std::set_union(bag.begin(), bag.end(), cbag.begin(), cbag.end(), std::back_inserter(merged));
            out.push_back(std::move(merged));
        }
    }
    return out;
}

}  // namespace

PathDecomposition tree_to_path_decomposition(const TreeDecomposition& td, int n) {
    if (static_cast<int>(td.bags.size()) != td.tree.size() || !is_tree(td.tree))
        throw Error("tree_to_path_decomposition: invalid decomposition tree");
    PathDecomposition pd;
    bool is_path = true;
    for (int x = 0; x < td.tree.size(); ++x)
        if (td.tree.degree(x) > 2) is_path = false;
    if (is_path) {
        for (int x : path_order(td.tree)) pd.bags.push_back(td.bags[x]);
        return pd;
    }
    const TreeDecomposition r = reduce(td);
    if (r.tree.size() > std::max(n, 1))
        throw Error("tree_to_path_decomposition: reduced tree larger than n; bags out of range?");
    std::vector<char> removed(r.tree.size(), 0);
    pd.bags = centroid_paths(r, {0}, removed);
    return pd;
}

IntervalRep path_decomposition_to_intervals(const PathDecomposition& pd, int n) {
    std::vector<int> first(n, -1), last(n, -1);
    for (int i = 0; i < static_cast<int>(pd.bags.size()); ++i)
        for (Vertex v : pd.bags[i]) {
            if (v < 0 || v >= n) throw Error("path_decomposition_to_intervals: vertex out of range");
            if (first[v] < 0) first[v] = i + 1;
            last[v] = i + 1;
        }
    IntervalRep rep;
    for (Vertex v = 0; v < n; ++v) {
        if (first[v] < 0) throw Error("path_decomposition_to_intervals: vertex in no bag");
        rep.iv.push_back({first[v], last[v]});
    }
    return rep;
}

Vertex TTree::parent(Vertex v, int i) const {
    for (Vertex w : family.at(v))
        if (colour[w] == i) return w;
    throw Error("ttree: no parent of colour " + std::to_string(i));
}

TreeDecomposition TTree::decomposition() const {
    TreeDecomposition td;
    td.bags = family;
    std::vector<Edge> es;
    for (Vertex v = 0; v < size(); ++v)
        if (attach[v] >= 0) es.emplace_back(v, attach[v]);
    td.tree = Graph(size(), es);
    return td;
}

std::optional<std::string> validate_ttree(const TTree& tt) {
    const int n = tt.size();
    const int t = tt.t;
    if (n < t + 1) return "fewer than t+1 vertices";
    if (static_cast<int>(tt.order.size()) != n || static_cast<int>(tt.family.size()) != n ||
        static_cast<int>(tt.colour.size()) != n)
        return "table sizes differ from vertex count";
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) pos.at(tt.order[i]) = i;
    for (int i = 0; i < n; ++i) {
        const Vertex v = tt.order[i];
        int earlier = 0;
        for (Vertex w : tt.graph.neighbors(v))
            if (pos[w] < i) ++earlier;
        if (earlier != std::min(i, t)) return "vertex " + std::to_string(v) + " has wrong earlier degree";
    }
    for (Vertex v = 0; v < n; ++v) {
        const auto& c = tt.family[v];
        if (static_cast<int>(c.size()) != t + 1) return "family clique of wrong size";
        if (!contains_sorted(c, v)) return "family clique missing its vertex";
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a + 1; b < c.size(); ++b)
                if (!tt.graph.has_edge(c[a], c[b])) return "family clique is not a clique";
        for (Vertex w : c)
            if (w != v && pos[w] > std::max(pos[v], t)) return "family member too late in the order";
        if (tt.colour[v] < 1 || tt.colour[v] > t + 1) return "colour out of range";
        if (tt.parent(v, tt.colour[v]) != v) return "p_phi(v)(v) != v";
    }
    for (auto [u, v] : tt.graph.edges())
        if (tt.colour[u] == tt.colour[v]) return "colouring is not proper";
    return std::nullopt;
}

namespace {

// Fills family cliques and the position table once order, graph, colour and
// attach are known.
void finish_ttree(TTree& tt) {
    const int n = tt.size();
    tt.position.assign(n, 0);
    for (int i = 0; i < n; ++i) tt.position[tt.order[i]] = i;
    tt.family.assign(n, {});
    for (int i = 0; i < n; ++i) {
        const Vertex v = tt.order[i];
        auto& c = tt.family[v];
        c.push_back(v);
        for (Vertex w : tt.graph.neighbors(v))
            if (tt.position[w] <= std::max(i, tt.t)) c.push_back(w);
        std::sort(c.begin(), c.end());
    }
}

}  // namespace

TTree build_ttree(int t, int n, std::uint64_t seed) {
    if (t < 1) throw Error("build_ttree: t must be positive");
    if (n <= t) throw Error("build_ttree: need n > t");
    std::mt19937_64 rng(seed);
    TTree tt;
    tt.t = t;
    tt.colour.assign(n, 0);
    tt.attach.assign(n, -1);
    std::vector<Edge> es;
    std::vector<std::vector<Vertex>> fam(n);
    for (Vertex v = 0; v <= t; ++v) {
        tt.order.push_back(v);
        tt.colour[v] = v + 1;
        if (v > 0) tt.attach[v] = v - 1;
        for (Vertex w = 0; w < v; ++w) es.emplace_back(w, v);
    }
    for (Vertex v = 0; v <= t; ++v) {
        fam[v].resize(t + 1);
        std::iota(fam[v].begin(), fam[v].end(), 0);
    }
    for (Vertex v = t + 1; v < n; ++v) {
        const Vertex u = std::uniform_int_distribution<Vertex>(0, v - 1)(rng);
        const int drop = std::uniform_int_distribution<int>(0, t)(rng);
        const Vertex m = fam[u][drop];
        tt.colour[v] = tt.colour[m];
        tt.attach[v] = u;
        fam[v].push_back(v);
        for (Vertex w : fam[u])
            if (w != m) es.emplace_back(w, v), fam[v].push_back(w);
        std::sort(fam[v].begin(), fam[v].end());
        tt.order.push_back(v);
    }
    tt.graph = Graph(n, es, "t-tree");
    finish_ttree(tt);
    return tt;
}

TTree ttree_from_order(const Graph& g, int t, const std::vector<Vertex>& order) {
    const int n = g.size();
    if (t < 1 || n <= t) throw Error("ttree_from_order: need t ≥ 1 and n > t");
    if (static_cast<int>(order.size()) != n) throw Error("ttree_from_order: order must list every vertex");
    TTree tt;
    tt.t = t;
    tt.graph = g;
    tt.order = order;
    tt.colour.assign(n, 0);
    tt.attach.assign(n, -1);
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
        if (order[i] < 0 || order[i] >= n || pos[order[i]] >= 0) throw Error("ttree_from_order: order is not a permutation");
        pos[order[i]] = i;
    }
    finish_ttree(tt);
    for (int i = 0; i < n; ++i) {
        const Vertex v = order[i];
        if (static_cast<int>(tt.family[v].size()) != t + 1)
            throw Error("ttree_from_order: vertex " + std::to_string(v) + " has the wrong number of earlier neighbours");
        if (i <= t) {
            tt.colour[v] = i + 1;
            if (i > 0) tt.attach[v] = order[i - 1];
            continue;
        }
        std::vector<Vertex> earlier;
        for (Vertex w : tt.family[v])
            if (w != v) earlier.push_back(w);
        for (int k = 0; k < i && tt.attach[v] < 0; ++k) {
            const auto& c = tt.family[order[k]];
            if (std::includes(c.begin(), c.end(), earlier.begin(), earlier.end())) tt.attach[v] = order[k];
        }
        if (tt.attach[v] < 0) throw Error("ttree_from_order: earlier neighbours of " + std::to_string(v) + " are not a family clique");
        std::vector<char> used(t + 2, 0);
        for (Vertex w : earlier) used[tt.colour[w]] = 1;
        for (int c = 1; c <= t + 1; ++c)
            if (!used[c]) tt.colour[v] = c;
    }
    if (auto err = validate_ttree(tt)) throw Error("ttree_from_order: " + *err);
    return tt;
}

TTree ttree_from_decomposition(const Graph& g, const TreeDecomposition& td, int t) {
    if (auto err = validate_tree_decomposition(g, td)) throw Error("ttree_from_decomposition: " + *err);
    if (td.width() > t) throw Error("ttree_from_decomposition: decomposition wider than t");
    const int n = g.size();
    if (n <= t) throw Error("ttree_from_decomposition: need n > t");

    // Order by BFS depth of the topmost bag, bags visited in BFS order.
    std::vector<int> bfs, seen(td.tree.size(), 0);
    if (td.tree.size() > 0) {
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            bfs.push_back(x);
            for (int y : td.tree.neighbors(x))
                if (!seen[y]) seen[y] = 1, q.push(y);
        }
    }
    std::vector<char> placed(n, 0);
    std::vector<Vertex> order;
    std::vector<int> top(n, -1);
    for (int x : bfs)
        for (Vertex v : td.bags[x])
            if (!placed[v]) placed[v] = 1, order.push_back(v), top[v] = x;

    TTree tt;
    tt.t = t;
    tt.order = order;
    tt.colour.assign(n, 0);
    tt.attach.assign(n, -1);
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    std::set<Edge> es;
    auto add = [&](Vertex a, Vertex b) { es.insert({std::min(a, b), std::max(a, b)}); };
    std::vector<std::vector<Vertex>> fam(n);
    for (int i = 0; i <= t; ++i) {
        const Vertex v = order[i];
        tt.colour[v] = i + 1;
        if (i > 0) tt.attach[v] = order[i - 1];
        for (int j = 0; j < i; ++j) add(order[j], v);
    }
    for (int i = 0; i <= t; ++i) {
        fam[order[i]].assign(order.begin(), order.begin() + t + 1);
        std::sort(fam[order[i]].begin(), fam[order[i]].end());
    }
    for (int i = t + 1; i < n; ++i) {
        const Vertex v = order[i];
        // Earlier neighbours in the filled graph all lie in v's top bag.
        std::vector<Vertex> k;
        for (Vertex w : td.bags[top[v]])
            if (pos[w] < i) k.push_back(w);
        Vertex host = -1;
        for (int j = 0; j < i && host < 0; ++j) {
            const auto& c = fam[order[j]];
            if (std::includes(c.begin(), c.end(), k.begin(), k.end())) host = order[j];
        }
        if (host < 0) throw Error("ttree_from_decomposition: no family clique contains the earlier neighbours");
        Vertex drop = -1;
        for (Vertex w : fam[host])
            if (!std::binary_search(k.begin(), k.end(), w)) {
                drop = w;
                break;
            }
        tt.colour[v] = tt.colour[drop];
        tt.attach[v] = host;
        fam[v].push_back(v);
        for (Vertex w : fam[host])
            if (w != drop) add(w, v), fam[v].push_back(w);
        std::sort(fam[v].begin(), fam[v].end());
    }
    std::vector<Edge> ev(es.begin(), es.end());
    tt.graph = Graph(n, ev, "t-tree");
    finish_ttree(tt);
    for (auto [u, v] : g.edges())
        if (!tt.graph.has_edge(u, v)) throw Error("ttree_from_decomposition: lost an edge");
    return tt;
}

std::vector<Vertex> reachable_ancestors(const TTree& tt, Vertex v, int d) {
    std::vector<int> dist(tt.size(), -1);
    std::vector<Vertex> frontier{v}, out{v};
    dist[v] = 0;
    for (int step = 1; step <= d; ++step) {
        std::vector<Vertex> next;
        for (Vertex x : frontier)
            for (Vertex w : tt.family[x])
                if (dist[w] < 0) dist[w] = step, next.push_back(w), out.push_back(w);
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

QtInstance make_qt_instance(const Graph& g, const TTree& host, const std::vector<Vertex>& host_vertex,
                            const std::vector<int>& rows) {
    QtInstance q;
    q.t = host.t;
    q.g = g;
    q.host = host;
    q.h = rows.empty() ? 0 : *std::max_element(rows.begin(), rows.end());
    q.witness.factors = {explicit_factor(host.graph), path_factor(q.h)};
    for (Vertex v = 0; v < g.size(); ++v) q.witness.coords.push_back({host_vertex.at(v), rows.at(v)});
    q.td = host.decomposition();
    if (auto err = validate_witness(g, q.witness)) throw Error("qt instance: " + *err);
    return q;
}

QtInstance generate_qt_instance(int t, int n, int h, std::uint64_t seed) {
    if (t < 1 || n < 1 || h < 1) throw Error("generate_qt_instance: parameters must be positive");
    if (n < h) throw Error("generate_qt_instance: need n >= h so every row is used");
    std::mt19937_64 rng(seed);
    const int lo = (n + h - 1) / h;
    const int m = std::max(t + 1, std::uniform_int_distribution<int>(lo, n)(rng));
    if (static_cast<long long>(m) * h < n) throw Error("generate_qt_instance: infeasible parameters");
    TTree host = build_ttree(t, m, rng());

    std::set<std::pair<int, Vertex>> chosen;  // (row, host vertex)
    for (int y = 1; y <= h; ++y) chosen.insert({y, std::uniform_int_distribution<Vertex>(0, m - 1)(rng)});
    std::vector<std::pair<int, Vertex>> rest;
    for (int y = 1; y <= h; ++y)
        for (Vertex v = 0; v < m; ++v)
            if (!chosen.count({y, v})) rest.emplace_back(y, v);
    std::shuffle(rest.begin(), rest.end(), rng);
    for (std::size_t i = 0; static_cast<int>(chosen.size()) < n; ++i) chosen.insert(rest[i]);

    std::vector<std::pair<int, Vertex>> vs(chosen.begin(), chosen.end());
    std::vector<Edge> es;
    std::bernoulli_distribution keep(0.7);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            auto [ya, va] = vs[a];
            auto [yb, vb] = vs[b];
            if (std::abs(ya - yb) > 1) continue;
            if (va != vb && !host.graph.has_edge(va, vb)) continue;
            if (keep(rng)) es.emplace_back(a, b);
        }
    std::vector<Vertex> hv;
    std::vector<int> rows;
    for (auto [y, v] : vs) rows.push_back(y), hv.push_back(v);
    QtInstance q = make_qt_instance(Graph(n, es, "Q" + std::to_string(t)), host, hv, rows);
    q.seed = seed;
    return q;
}

}  // namespace ugraph
