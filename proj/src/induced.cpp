// SPDX-License-Identifier: Apache-2.0
#include "ugraph/induced.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <unordered_map>

namespace ugraph {

LabelInput label_input(const QtInstance& inst) {
    LabelInput in;
    in.g = inst.g;
    in.host = inst.host;
    for (const auto& c : inst.witness.coords) {
        in.host_vertex.push_back(static_cast<Vertex>(c[0]));
        in.rows.push_back(static_cast<int>(c[1]));
    }
    const PathDecomposition pd = tree_to_path_decomposition(inst.host.decomposition(), inst.host.size());
    in.rep = path_decomposition_to_intervals(pd, inst.host.size());
    return in;
}

int fixup_assignment(const Bst& t, const std::vector<std::vector<Vertex>>& family,
                     std::vector<int>& assign) {
    if (t.empty()) return 0;
    std::vector<std::vector<Vertex>> bucket(t.size());
    for (Vertex v = 0; v < static_cast<Vertex>(assign.size()); ++v)
        if (assign[v] >= 0) bucket[assign[v]].push_back(v);
    int moves = 0;
    std::vector<int> stack{t.root()};
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        const int d = t.depth_of_node(x);
        // Entries are stale when their vertex has since moved elsewhere.
        for (std::size_t k = 0; k < bucket[x].size(); ++k) {
            const Vertex v = bucket[x][k];
            if (assign[v] != x) continue;
            for (Vertex w : family[v]) {
                if (assign[w] < 0 || t.depth_of_node(assign[w]) <= d + 1) continue;
                assign[w] = t.ancestor_at_depth(assign[w], d + 1);
                bucket[assign[w]].push_back(w);
                ++moves;
            }
        }
        if (t.right(x) != Bst::kNone) stack.push_back(t.right(x));
        if (t.left(x) != Bst::kNone) stack.push_back(t.left(x));
    }
    return moves;
}

std::vector<std::vector<Vertex>> LabelContext::families_in(int y) const {
    std::vector<std::vector<Vertex>> fam(in.host.size());
    for (Vertex v : Splus[y])
        for (Vertex w : in.host.family[v])
            if (member(y, w)) fam[v].push_back(w);
    return fam;
}

namespace {

std::vector<Vertex> set_union_of(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::vector<Vertex> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// First-fit colouring of every bag, members visited in key order.
std::vector<int> colour_bags(const LabelContext& ctx, int y, const std::vector<int>& assign) {
    std::vector<Vertex> members = ctx.Splus[y];
    std::sort(members.begin(), members.end(), [&](Vertex a, Vertex b) {
        return std::pair(ctx.lo[a], a) < std::pair(ctx.lo[b], b);
    });
    std::vector<int> colour(ctx.in.host.size(), 0), next(ctx.trees[y].size(), 1);
    for (Vertex v : members) colour[v] = next[assign[v]]++;
    return colour;
}

BitString node_sig(const LabelContext& ctx, int y, int node) {
    return ctx.trees[y].signature_of_node(node);
}

// Deepest node among the assigned nodes of C_v in row y.
int deepest_family_node(const LabelContext& ctx, int y, Vertex v, const std::vector<int>& assign) {
    int best = -1;
    for (Vertex w : ctx.in.host.family[v]) {
        if (assign[w] < 0) throw Error("labels: family member outside S+ (context bug)");
        if (best < 0 || ctx.trees[y].depth_of_node(assign[w]) > ctx.trees[y].depth_of_node(best))
            best = assign[w];
    }
    return best;
}

}  // namespace

LabelContext build_context(const LabelInput& in, const LabelFormat& fmt) {
    LabelContext ctx;
    ctx.fmt = fmt;
    ctx.in = in;
    const Graph& g = in.g;
    const TTree& host = in.host;
    const int nh = host.size();
    if (static_cast<int>(in.host_vertex.size()) != g.size() || static_cast<int>(in.rows.size()) != g.size())
        throw Error("build_context: per-vertex tables have the wrong size");
    if (host.t != fmt.t) throw Error("build_context: host t differs from the label format");
    if (static_cast<std::uint64_t>(nh) > fmt.field_max() ||
        static_cast<std::uint64_t>(g.size()) > fmt.field_max())
        throw Error("build_context: instance exceeds the label format");
    if (in.rep.size() != nh) throw Error("build_context: one interval per host vertex required");
    if (!represents_supergraph(in.rep, host.graph))
        throw Error("build_context: interval supergraph missing an edge of H");

    std::vector<int> rows = in.rows;
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    ctx.h = static_cast<int>(rows.size());
    const int h = ctx.h;
    ctx.row.resize(g.size());
    for (Vertex u = 0; u < g.size(); ++u) {
        ctx.row[u] = static_cast<int>(std::lower_bound(rows.begin(), rows.end(), in.rows[u]) - rows.begin()) + 1;
        if (in.host_vertex[u] < 0 || in.host_vertex[u] >= nh) throw Error("build_context: host vertex out of range");
        if (!ctx.at.emplace(std::pair(in.host_vertex[u], ctx.row[u]), u).second)
            throw Error("build_context: two vertices share a product position");
    }
    for (auto [a, b] : g.edges()) {
        const Vertex va = in.host_vertex[a], vb = in.host_vertex[b];
        if (std::abs(in.rows[a] - in.rows[b]) > 1 || (va != vb && !host.graph.has_edge(va, vb)))
            throw Error("build_context: G is not a subgraph of H ⊠ P");
    }

    ctx.L.assign(h + 2, {});
    ctx.S.assign(h + 2, {});
    ctx.Splus.assign(h + 2, {});
    for (Vertex u = 0; u < g.size(); ++u) ctx.L[ctx.row[u]].push_back(in.host_vertex[u]);
    for (int y = 1; y <= h; ++y) {
        std::sort(ctx.L[y].begin(), ctx.L[y].end());
        std::set<Vertex> s;
        for (Vertex v : ctx.L[y]) s.insert(host.family[v].begin(), host.family[v].end());
        ctx.S[y].assign(s.begin(), s.end());
    }
    for (int y = 1; y <= h; ++y)
        ctx.Splus[y] = set_union_of(set_union_of(ctx.S[y - 1], ctx.S[y]), ctx.S[y + 1]);

    ctx.lo.assign(nh, 0);
    ctx.hi.assign(nh, 0);
    ctx.trees.assign(h + 2, Bst{});
    if (in.trees.empty()) {
        std::vector<Rational> values;
        for (const auto& i : in.rep.iv) values.push_back(i.a), values.push_back(i.b);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        auto rank = [&](const Rational& r) {
            return static_cast<Key>(std::lower_bound(values.begin(), values.end(), r) - values.begin()) + 1;
        };
        for (Vertex v = 0; v < nh; ++v) ctx.lo[v] = rank(in.rep.iv[v].a), ctx.hi[v] = rank(in.rep.iv[v].b);
        for (int y = 1; y <= h; ++y) {
            std::vector<Key> keys;
            for (Vertex v : ctx.Splus[y]) keys.push_back(ctx.lo[v]);
            std::sort(keys.begin(), keys.end());
            keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
            ctx.trees[y] = build_balanced_bst(keys);
        }
    } else {
        if (static_cast<int>(in.trees.size()) != h) throw Error("build_context: one prescribed tree per row required");
        for (Vertex v = 0; v < nh; ++v) ctx.lo[v] = in.rep.iv[v].a.ceil(), ctx.hi[v] = in.rep.iv[v].b.floor();
        for (int y = 1; y <= h; ++y) ctx.trees[y] = in.trees[y - 1];
    }

    ctx.x.assign(h + 2, std::vector<int>(nh, -1));
    for (int y = 1; y <= h; ++y)
        for (Vertex v : ctx.Splus[y])
            ctx.x[y][v] = ctx.trees[y].node_of(min_depth_in_range(ctx.trees[y], ctx.lo[v], ctx.hi[v]));
    ctx.psi_legacy.assign(h + 2, std::vector<int>(nh, 0));
    for (int y = 1; y <= h; ++y) ctx.psi_legacy[y] = colour_bags(ctx, y, ctx.x[y]);

    std::vector<Key> row_keys(h);
    std::vector<double> weights(h);
    for (int y = 1; y <= h; ++y) row_keys[y - 1] = y, weights[y - 1] = static_cast<double>(ctx.Splus[y].size());
    if (h > 0) ctx.row_tree = build_biased_bst(row_keys, weights);
    run_fixup(ctx);
    return ctx;
}

void run_fixup(LabelContext& ctx) {
    ctx.xp = ctx.x;
    ctx.psi.assign(ctx.h + 2, std::vector<int>(ctx.in.host.size(), 0));
    ctx.fixup_moves = 0;
    for (int y = 1; y <= ctx.h; ++y) {
        ctx.fixup_moves += fixup_assignment(ctx.trees[y], ctx.families_in(y), ctx.xp[y]);
        ctx.psi[y] = colour_bags(ctx, y, ctx.xp[y]);
    }
}

std::optional<std::string> check_root_paths(const LabelContext& ctx) {
    for (int y = 1; y <= ctx.h; ++y) {
        const Bst& t = ctx.trees[y];
        for (int b = -1; b <= 1; ++b)
            for (Vertex v : ctx.L[y + b]) {
                const auto& c = ctx.in.host.family[v];
                for (Vertex w1 : c)
                    for (Vertex w2 : c) {
                        const int n1 = ctx.x[y][w1], n2 = ctx.x[y][w2];
                        if (n1 < 0 || n2 < 0) return "family member outside S+ in row " + std::to_string(y);
                        if (!t.is_ancestor(n1, n2) && !t.is_ancestor(n2, n1))
                            return "X_y(v) not on one root path: row " + std::to_string(y) + ", vertex " +
                                   std::to_string(v);
                    }
            }
    }
    return std::nullopt;
}

std::optional<std::string> check_fixup(const LabelContext& ctx) {
    for (int y = 1; y <= ctx.h; ++y) {
        const Bst& t = ctx.trees[y];
        const auto fam = ctx.families_in(y);
        for (Vertex v : ctx.Splus[y]) {
            if (!t.is_ancestor(ctx.xp[y][v], ctx.x[y][v]))
                return "x' is not an ancestor of x: row " + std::to_string(y) + ", vertex " + std::to_string(v);
            for (Vertex w : fam[v])
                if (t.depth_of_node(ctx.xp[y][w]) > t.depth_of_node(ctx.xp[y][v]) + 1)
                    return "parent depth gap above 1: row " + std::to_string(y) + ", vertices " +
                           std::to_string(v) + "," + std::to_string(w);
        }
        auto again = ctx.xp[y];
        if (fixup_assignment(t, fam, again) != 0 || again != ctx.xp[y])
            return "fixup is not idempotent in row " + std::to_string(y);
    }
    return std::nullopt;
}

std::optional<std::string> check_unique_match(const LabelContext& ctx) {
    for (int y = 1; y <= ctx.h; ++y) {
        std::set<std::pair<int, int>> plain, fixed;
        for (Vertex v : ctx.Splus[y]) {
            if (ctx.psi_legacy[y][v] < 1 || !plain.insert({ctx.x[y][v], ctx.psi_legacy[y][v]}).second)
                return "(x, psi) not unique in row " + std::to_string(y);
            if (ctx.psi[y][v] < 1 || !fixed.insert({ctx.xp[y][v], ctx.psi[y][v]}).second)
                return "(x', psi') not unique in row " + std::to_string(y);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_tree_heights(const LabelContext& ctx) {
    if (!ctx.in.trees.empty()) return std::nullopt;  // prescribed shapes are taken as given
    for (int y = 1; y <= ctx.h; ++y)
        if (height_slack(ctx.trees[y].height(), ctx.Splus[y].size()) > 0)
            return "tree " + std::to_string(y) + " taller than log2|S+|";
    return std::nullopt;
}

std::optional<std::string> check_transition_codes(const LabelContext& ctx) {
    const auto codec = ctx.fmt.codec();
    for (int y = 1; y < ctx.h; ++y)
        for (Vertex v : ctx.Splus[y]) {
            if (!ctx.member(y + 1, v)) continue;
            const auto before = node_sig(ctx, y, ctx.x[y][v]);
            const auto after = node_sig(ctx, y + 1, ctx.x[y + 1][v]);
            if (codec.decode(before, codec.encode(before, after)) != after)
                return "transition code roundtrip failed: row " + std::to_string(y) + ", vertex " +
                       std::to_string(v);
        }
    return std::nullopt;
}

BagStats bag_stats(const LabelContext& ctx) {
    BagStats st;
    st.max_load = max_load(ctx.in.rep);
    const double lg = std::log2(std::max(2, ctx.fmt.n));
    st.reference = ctx.fmt.t * std::pow(lg, ctx.fmt.t + 2);
    auto binom = [](int a, int b) {
        double r = 1;
        for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    for (int y = 1; y <= ctx.h; ++y) {
        const Bst& t = ctx.trees[y];
        std::vector<int> plain(t.size(), 0), fixed(t.size(), 0);
        for (Vertex v : ctx.Splus[y]) ++plain[ctx.x[y][v]], ++fixed[ctx.xp[y][v]];
        for (int node = 0; node < static_cast<int>(t.size()); ++node) {
            st.max_bag = std::max(st.max_bag, plain[node]);
            st.max_bag_fixed = std::max(st.max_bag_fixed, fixed[node]);
            double bound = 0;
            int cur = node;
            for (int d = 0; cur != Bst::kNone; ++d, cur = t.parent(cur)) bound += plain[cur] * binom(d + ctx.fmt.t, ctx.fmt.t);
            if (fixed[node] > bound) ++st.accounting_violations;
        }
    }
    return st;
}

std::optional<BitString> LabelCore::next_alpha() const {
    if (!has_succ) return std::nullopt;
    if (!succ_case) return strip_successor(alpha1);
    BitString s = alpha1;
    s.push_back(true);
    s.append(BitString::zeros(succ_j));
    return s;
}

namespace {

LabelCore make_core(const LabelContext& ctx, Vertex gv, const std::vector<std::vector<int>>& assign,
                    const std::vector<std::vector<int>>& colour) {
    const Vertex v = ctx.in.host_vertex[gv];
    const int y = ctx.row[gv];
    const int t = ctx.fmt.t;
    LabelCore c;
    c.alpha1 = ctx.row_tree.signature(y);
    if (y < ctx.h) {
        const BitString next = ctx.row_tree.signature(y + 1);
        c.has_succ = true;
        if (strip_successor(c.alpha1) == next) {
            c.succ_case = false;
        } else {
            c.succ_case = true;
            c.succ_j = next.size() - c.alpha1.size() - 1;
            if (c.next_alpha() != next) throw Error("labels: row successor not encodable (context bug)");
        }
    }
    c.phi = ctx.in.host.colour[v];
    for (int b = 0; b <= 1; ++b) {
        if (y + b > ctx.h) continue;
        std::vector<std::uint64_t> ds;
        for (int i = 1; i <= t + 1; ++i) {
            const int node = assign[y + b][ctx.in.host.parent(v, i)];
            if (node < 0) throw Error("labels: parent outside S+ (context bug)");
            ds.push_back(static_cast<std::uint64_t>(ctx.trees[y + b].depth_of_node(node)));
        }
        c.depth[b] = std::move(ds);
    }
    for (int b = -1; b <= 1; ++b) {
        if (y + b < 1 || y + b > ctx.h) continue;
        std::vector<std::uint64_t> ps;
        for (int i = 1; i <= t + 1; ++i) {
            const int col = colour[y + b][ctx.in.host.parent(v, i)];
            if (col < 1) throw Error("labels: parent outside S+ (context bug)");
            ps.push_back(static_cast<std::uint64_t>(col));
        }
        c.psi[b + 1] = std::move(ps);
    }
    c.adj.assign(3 * (t + 1), false);
    for (int b = -1; b <= 1; ++b)
        for (int i = 1; i <= t + 1; ++i) {
            auto it = ctx.at.find({ctx.in.host.parent(v, i), y + b});
            if (it != ctx.at.end() && it->second != gv && ctx.in.g.has_edge(gv, it->second))
                c.adj[(b + 1) * (t + 1) + (i - 1)] = true;
        }
    return c;
}

}  // namespace

Label make_label(const LabelContext& ctx, Vertex gv) {
    const Vertex v = ctx.in.host_vertex.at(gv);
    const int y = ctx.row[gv];
    Label l;
    l.core = make_core(ctx, gv, ctx.xp, ctx.psi);
    l.sig = node_sig(ctx, y, ctx.x[y][v]);
    if (y < ctx.h) l.mu = ctx.fmt.codec().encode(l.sig, node_sig(ctx, y + 1, ctx.x[y + 1][v]));
    for (int b = -1; b <= 1; ++b) {
        if (y + b < 1 || y + b > ctx.h) continue;
        const BitString own = node_sig(ctx, y + b, ctx.xp[y + b][v]);
        const BitString deep = node_sig(ctx, y + b, deepest_family_node(ctx, y + b, v, ctx.xp[y + b]));
        if (!own.is_prefix_of(deep) || deep.size() > own.size() + 1)
            throw Error("labels: P'(v) does not extend x'(v) by at most one step");
        l.r[b + 1] = deep.suffix_from(own.size());
    }
    return l;
}

LegacyLabel make_label_legacy(const LabelContext& ctx, Vertex gv) {
    const Vertex v = ctx.in.host_vertex.at(gv);
    const int y = ctx.row[gv];
    LegacyLabel l;
    l.core = make_core(ctx, gv, ctx.x, ctx.psi_legacy);
    l.path = node_sig(ctx, y, deepest_family_node(ctx, y, v, ctx.x[y]));
    if (y < ctx.h)
        l.eta = ctx.fmt.codec().encode(l.path, node_sig(ctx, y + 1, deepest_family_node(ctx, y + 1, v, ctx.x[y + 1])));
    return l;
}

std::vector<Label> make_labels(const LabelContext& ctx) {
    std::vector<Label> out;
    for (Vertex u = 0; u < ctx.in.g.size(); ++u) out.push_back(make_label(ctx, u));
    return out;
}

std::vector<LegacyLabel> make_legacy_labels(const LabelContext& ctx) {
    std::vector<LegacyLabel> out;
    for (Vertex u = 0; u < ctx.in.g.size(); ++u) out.push_back(make_label_legacy(ctx, u));
    return out;
}

namespace {

void put_string(BitString& out, const BitString& s, const LabelFormat& fmt) {
    if (s.size() > fmt.field_max()) throw Error("label: field longer than the format allows");
    out.append_uint(s.size(), fmt.field_bits());
    out.append(s);
}

BitString get_string(BitReader& r, const LabelFormat& fmt) {
    return r.read_bits(r.read_uint(fmt.field_bits()));
}

void put_optional(BitString& out, const std::optional<BitString>& s, const LabelFormat& fmt) {
    out.push_back(s.has_value());
    if (s) put_string(out, *s, fmt);
}

std::optional<BitString> get_optional(BitReader& r, const LabelFormat& fmt) {
    if (!r.read_bit()) return std::nullopt;
    return get_string(r, fmt);
}

void put_values(BitString& out, const std::optional<std::vector<std::uint64_t>>& vs, const LabelFormat& fmt) {
    out.push_back(vs.has_value());
    if (!vs) return;
    for (auto v : *vs) {
        if (v > fmt.field_max()) throw Error("label: value exceeds the format");
        out.append_uint(v, fmt.field_bits());
    }
}

std::optional<std::vector<std::uint64_t>> get_values(BitReader& r, const LabelFormat& fmt) {
    if (!r.read_bit()) return std::nullopt;
    std::vector<std::uint64_t> vs;
    for (int i = 0; i <= fmt.t; ++i) vs.push_back(r.read_uint(fmt.field_bits()));
    return vs;
}

void put_core(BitString& out, const LabelCore& c, const LabelFormat& fmt) {
    put_string(out, c.alpha1, fmt);
    out.push_back(c.has_succ);
    out.push_back(c.succ_case);
    out.append_uint(c.succ_j, fmt.field_bits());
    out.append_uint(static_cast<std::uint64_t>(c.phi - 1), fmt.colour_bits());
    for (const auto& d : c.depth) put_values(out, d, fmt);
    for (const auto& p : c.psi) put_values(out, p, fmt);
    for (bool b : c.adj) out.push_back(b);
}

LabelCore get_core(BitReader& r, const LabelFormat& fmt) {
    LabelCore c;
    c.alpha1 = get_string(r, fmt);
    c.has_succ = r.read_bit();
    c.succ_case = r.read_bit();
    c.succ_j = r.read_uint(fmt.field_bits());
    c.phi = static_cast<int>(r.read_uint(fmt.colour_bits())) + 1;
    if (c.phi > fmt.t + 1) throw Error("label: colour out of range");
    for (auto& d : c.depth) d = get_values(r, fmt);
    for (auto& p : c.psi) p = get_values(r, fmt);
    c.adj.resize(3 * (fmt.t + 1));
    for (std::size_t i = 0; i < c.adj.size(); ++i) c.adj[i] = r.read_bit();
    if (!c.depth[0] || !c.psi[1]) throw Error("label: own-row fields missing");
    if (c.has_succ != (c.depth[1].has_value() && c.psi[2].has_value()))
        throw Error("label: next-row fields inconsistent with the successor hint");
    return c;
}

void finish(const BitReader& r) {
    if (r.remaining() != 0) throw Error("label: trailing bits");
}

}  // namespace

BitString Label::serialize(const LabelFormat& fmt) const {
    BitString out;
    put_core(out, core, fmt);
    put_string(out, sig, fmt);
    put_optional(out, mu, fmt);
    for (const auto& s : r) {
        if (s.size() > 1) throw Error("label: r field longer than one bit");
        out.append_uint(s.empty() ? 0 : (s[0] ? 2 : 1), 2);
    }
    return out;
}

Label Label::parse(const BitString& bits, const LabelFormat& fmt) {
    BitReader rd(bits);
    Label l;
    l.core = get_core(rd, fmt);
    l.sig = get_string(rd, fmt);
    l.mu = get_optional(rd, fmt);
    for (auto& s : l.r) {
        const auto code = rd.read_uint(2);
        if (code == 3) throw Error("label: bad r code");
        if (code) s = BitString::from_uint(code == 2 ? 1 : 0, 1);
    }
    finish(rd);
    if (l.core.has_succ != l.mu.has_value()) throw Error("label: transition code presence mismatch");
    return l;
}

BitString LegacyLabel::serialize(const LabelFormat& fmt) const {
    BitString out;
    put_core(out, core, fmt);
    put_string(out, path, fmt);
    put_optional(out, eta, fmt);
    return out;
}

LegacyLabel LegacyLabel::parse(const BitString& bits, const LabelFormat& fmt) {
    BitReader rd(bits);
    LegacyLabel l;
    l.core = get_core(rd, fmt);
    l.path = get_string(rd, fmt);
    l.eta = get_optional(rd, fmt);
    finish(rd);
    if (l.core.has_succ != l.eta.has_value()) throw Error("label: transition code presence mismatch");
    return l;
}

namespace {

// What a label knows about one row: the signature of the vertex's own node,
// the path covering its family, and per-parent depths and colours.
struct RowView {
    BitString self, path;
    const std::vector<std::uint64_t>* depths = nullptr;
    const std::vector<std::uint64_t>* psi = nullptr;
    int phi = 1;
};

RowView view(const LabelCore& c, int b, const BitString& own_sig, const BitString& r, bool sig_is_path) {
    RowView v;
    v.depths = &*c.depth[b];
    v.psi = &*c.psi[b + 1];
    v.phi = c.phi;
    const auto d = (*v.depths)[c.phi - 1];
    if (d > own_sig.size()) throw Error("label: depth exceeds signature length");
    v.self = own_sig.prefix(d);
    v.path = sig_is_path ? own_sig : v.self + r;
    for (auto di : *v.depths)
        if (di > v.path.size()) throw Error("label: parent depth exceeds path length");
    return v;
}

// a is p_i(b) in the shared row.
bool is_parent(const RowView& a, const RowView& b, int i) {
    return b.path.prefix((*b.depths)[i - 1]) == a.self && (*b.psi)[i - 1] == (*a.psi)[a.phi - 1];
}

template <class L, class OwnView, class UpView>
bool decide(const L& first, const L& second, const LabelFormat& fmt, OwnView own, UpView up) {
    const int t = fmt.t;
    auto bit = [t](const LabelCore& c, int b, int i) { return c.adj[(b + 1) * (t + 1) + (i - 1)]; };
    if (first.core.alpha1 == second.core.alpha1) {
        const RowView v1 = own(first), v2 = own(second);
        for (int i = 1; i <= t + 1; ++i) {
            if (is_parent(v1, v2, i)) return bit(second.core, 0, i);
            if (is_parent(v2, v1, i)) return bit(first.core, 0, i);
        }
        return false;
    }
    const L* lower = nullptr;
    const L* upper = nullptr;
    if (first.core.next_alpha() == second.core.alpha1)
        lower = &first, upper = &second;
    else if (second.core.next_alpha() == first.core.alpha1)
        lower = &second, upper = &first;
    else
        return false;
    const RowView v1 = up(*lower), v2 = own(*upper);
    for (int i = 1; i <= t + 1; ++i) {
        if (is_parent(v1, v2, i)) return bit(upper->core, -1, i);
        if (is_parent(v2, v1, i)) return bit(lower->core, 1, i);
    }
    return false;
}

}  // namespace

bool adjacency_test(const Label& a, const Label& b, const LabelFormat& fmt) {
    const auto codec = fmt.codec();
    auto own = [](const Label& l) { return view(l.core, 0, l.sig, l.r[1], false); };
    auto up = [&codec](const Label& l) {
        auto next = codec.decode(l.sig, *l.mu);
        if (!next) throw Error("label: undecodable transition code");
        return view(l.core, 1, *next, l.r[2], false);
    };
    // Evaluate in a canonical order so the test is symmetric.
    if (b.serialize(fmt) < a.serialize(fmt)) return decide(b, a, fmt, own, up);
    return decide(a, b, fmt, own, up);
}

bool adjacency_test(const LegacyLabel& a, const LegacyLabel& b, const LabelFormat& fmt) {
    const auto codec = fmt.codec();
    auto own = [](const LegacyLabel& l) { return view(l.core, 0, l.path, {}, true); };
    auto up = [&codec](const LegacyLabel& l) {
        auto next = codec.decode(l.path, *l.eta);
        if (!next) throw Error("label: undecodable transition code");
        return view(l.core, 1, *next, {}, true);
    };
    if (b.serialize(fmt) < a.serialize(fmt)) return decide(b, a, fmt, own, up);
    return decide(a, b, fmt, own, up);
}

bool adjacency_test_bits(const BitString& a, const BitString& b, const LabelFormat& fmt) {
    return adjacency_test(Label::parse(a, fmt), Label::parse(b, fmt), fmt);
}

std::optional<std::string> check_labelling(const Graph& g, const std::vector<Label>& labels,
                                           const LabelFormat& fmt) {
    if (static_cast<int>(labels.size()) != g.size()) return "label count differs from vertex count";
    std::set<BitString> seen;
    for (Vertex u = 0; u < g.size(); ++u)
        if (!seen.insert(labels[u].serialize(fmt)).second) return "duplicate label at vertex " + std::to_string(u);
    for (Vertex u = 0; u < g.size(); ++u)
        for (Vertex v = u + 1; v < g.size(); ++v)
            if (adjacency_test(labels[u], labels[v], fmt) != g.has_edge(u, v))
                return "adjacency test wrong for pair " + std::to_string(u) + "," + std::to_string(v);
    return std::nullopt;
}

int UniversalGraph::index_of(const BitString& label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) return -1;
    return static_cast<int>(it - labels.begin());
}

UniversalGraph assemble_universal(const LabelFormat& fmt, const std::vector<std::vector<BitString>>& corpus) {
    if (corpus.empty()) throw Error("assemble_universal: empty corpus");
    UniversalGraph u;
    u.fmt = fmt;
    for (const auto& member : corpus) u.labels.insert(u.labels.end(), member.begin(), member.end());
    std::sort(u.labels.begin(), u.labels.end());
    u.labels.erase(std::unique(u.labels.begin(), u.labels.end()), u.labels.end());
    std::vector<Label> parsed;
    parsed.reserve(u.labels.size());
    for (const auto& s : u.labels) parsed.push_back(Label::parse(s, fmt));
    std::unordered_map<BitString, std::vector<int>> by_row;
    for (int i = 0; i < static_cast<int>(parsed.size()); ++i) by_row[parsed[i].core.alpha1].push_back(i);
    std::vector<Edge> es;
    for (int i = 0; i < static_cast<int>(parsed.size()); ++i) {
        for (int j : by_row[parsed[i].core.alpha1])
            if (j > i && adjacency_test(parsed[i], parsed[j], fmt)) es.emplace_back(i, j);
        if (auto next = parsed[i].core.next_alpha()) {
            auto it = by_row.find(*next);
            if (it == by_row.end()) continue;
            for (int j : it->second)
                if (j != i && adjacency_test(parsed[i], parsed[j], fmt)) es.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    u.graph = Graph(static_cast<int>(u.labels.size()), es, "U");
    return u;
}

UniversalGraph assemble_universal(const std::vector<LabelledMember>& corpus) {
    if (corpus.empty()) throw Error("assemble_universal: empty corpus");
    std::vector<std::vector<BitString>> labels;
    for (const auto& m : corpus) {
        if (!(m.fmt == corpus.front().fmt)) throw Error("assemble_universal: label format differs across the corpus");
        labels.push_back(m.labels);
    }
    return assemble_universal(corpus.front().fmt, labels);
}

std::optional<std::string> check_induced(const UniversalGraph& u, const Graph& g,
                                         const std::vector<BitString>& labels) {
    if (static_cast<int>(labels.size()) != g.size()) return "label count differs from vertex count";
    std::vector<int> idx;
    std::set<int> seen;
    for (const auto& l : labels) {
        const int i = u.index_of(l);
        if (i < 0) return "label missing from U";
        if (!seen.insert(i).second) return "two vertices share a label";
        idx.push_back(i);
    }
    for (Vertex a = 0; a < g.size(); ++a)
        for (Vertex b = a + 1; b < g.size(); ++b)
            if (u.graph.has_edge(idx[a], idx[b]) != g.has_edge(a, b))
                return "U disagrees with G on pair " + std::to_string(a) + "," + std::to_string(b);
    return std::nullopt;
}

std::uint64_t count_label_edges(const std::vector<BitString>& labels, const LabelFormat& fmt, bool legacy) {
    std::vector<BitString> ls = labels;
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    std::uint64_t count = 0;
    if (legacy) {
        std::vector<LegacyLabel> p;
        for (const auto& s : ls) p.push_back(LegacyLabel::parse(s, fmt));
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j) count += adjacency_test(p[i], p[j], fmt);
    } else {
        std::vector<Label> p;
        for (const auto& s : ls) p.push_back(Label::parse(s, fmt));
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j) count += adjacency_test(p[i], p[j], fmt);
    }
    return count;
}

}  // namespace ugraph
