// SPDX-License-Identifier: Apache-2.0
#include "ugraph/closure.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace ugraph {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw Error("rational: overflow");
    return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational make(i128 n, i128 d) {
    if (d == 0) throw Error("rational: zero denominator");
    if (d < 0) n = -n, d = -d;
    const i128 g = gcd128(n, d);
    if (g > 1) n /= g, d /= g;
    Rational r;
    r.num = narrow(n);
    r.den = narrow(d);
    return r;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const i128 l = static_cast<i128>(a.num) * b.den;
    const i128 r = static_cast<i128>(b.num) * a.den;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational operator+(const Rational& a, const Rational& b) {
    return make(static_cast<i128>(a.num) * b.den + static_cast<i128>(b.num) * a.den,
                static_cast<i128>(a.den) * b.den);
}
Rational operator-(const Rational& a, const Rational& b) {
    return make(static_cast<i128>(a.num) * b.den - static_cast<i128>(b.num) * a.den,
                static_cast<i128>(a.den) * b.den);
}
Rational operator*(const Rational& a, const Rational& b) {
    return make(static_cast<i128>(a.num) * b.num, static_cast<i128>(a.den) * b.den);
}
Rational operator/(const Rational& a, const Rational& b) {
    return make(static_cast<i128>(a.num) * b.den, static_cast<i128>(a.den) * b.num);
}

std::int64_t Rational::floor() const {
    std::int64_t q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}

std::int64_t Rational::ceil() const {
    std::int64_t q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return q;
}

std::string Rational::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Graph intersection_graph(const IntervalRep& rep) {
    std::vector<Edge> es;
    for (int u = 0; u < rep.size(); ++u)
        for (int v = u + 1; v < rep.size(); ++v)
            if (rep.iv[u].intersects(rep.iv[v])) es.emplace_back(u, v);
    return Graph(rep.size(), es);
}

int max_load(const IntervalRep& rep) {
    // Opens sort before closes at equal coordinates since intervals are closed.
    std::vector<std::pair<Rational, int>> events;
    for (const auto& i : rep.iv) {
        events.emplace_back(i.a, 0);
        events.emplace_back(i.b, 1);
    }
    std::sort(events.begin(), events.end());
    int load = 0, best = 0;
    for (const auto& [x, kind] : events) {
        load += kind == 0 ? 1 : -1;
        best = std::max(best, load);
    }
    return best;
}

bool represents_supergraph(const IntervalRep& rep, const Graph& g) {
    if (rep.size() != g.size()) return false;
    for (auto [u, v] : g.edges())
        if (!rep.iv[u].intersects(rep.iv[v])) return false;
    return true;
}

IntervalRep perturb_left_endpoints(const IntervalRep& rep) {
    std::vector<int> order(rep.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int u, int v) { return rep.iv[u].a < rep.iv[v].a; });
    int max_group = 1;
    for (std::size_t i = 0, j = 0; i < order.size(); i = j) {
        while (j < order.size() && rep.iv[order[j]].a == rep.iv[order[i]].a) ++j;
        max_group = std::max(max_group, static_cast<int>(j - i));
    }
    if (max_group == 1) return rep;

    std::vector<Rational> values;
    for (const auto& i : rep.iv) {
        values.push_back(i.a);
        values.push_back(i.b);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    Rational gap = 1;
    for (std::size_t i = 1; i < values.size(); ++i) gap = std::min(gap, values[i] - values[i - 1]);
    const Rational delta = gap / Rational(2 * max_group);

    IntervalRep out = rep;
    for (std::size_t i = 0, j = 0; i < order.size(); i = j) {
        while (j < order.size() && rep.iv[order[j]].a == rep.iv[order[i]].a) ++j;
        for (std::size_t k = i + 1; k < j; ++k)
            out.iv[order[k]].a = rep.iv[order[k]].a - delta * Rational(static_cast<std::int64_t>(k - i));
    }
    return out;
}

Separation interval_separator(const IntervalRep& rep, int omega, const std::vector<int>& subset) {
    std::vector<int> vs = subset;
    if (vs.empty()) {
        vs.resize(rep.size());
        std::iota(vs.begin(), vs.end(), 0);
    }
    Separation s;
    if (vs.empty()) return s;
    std::sort(vs.begin(), vs.end(), [&](int u, int v) { return rep.iv[u].a < rep.iv[v].a; });
    for (std::size_t i = 1; i < vs.size(); ++i)
        if (rep.iv[vs[i]].a == rep.iv[vs[i - 1]].a)
            throw Error("interval separator: duplicate left endpoints; perturb first");
    const Rational pivot = rep.iv[vs[vs.size() / 2]].a;
    for (int v : vs) {
        const auto& i = rep.iv[v];
        if (i.b < pivot)
            s.x1.push_back(v);
        else if (pivot < i.a)
            s.x2.push_back(v);
        else
            s.z.push_back(v);
    }
    if (static_cast<int>(s.z.size()) > omega)
        throw Error("interval separator: clique number exceeds omega");
    return s;
}

ClosureGraph::ClosureGraph(int d) : d_(d) {
    if (d < 0 || d > 60) throw Error("closure: depth parameter out of range");
}

int ClosureGraph::subtree_height(Key v) const {
    if (!contains(v)) throw Error("closure: node " + std::to_string(v) + " out of range");
    return std::countr_zero(static_cast<std::uint64_t>(v));
}

std::pair<Key, Key> ClosureGraph::descendant_interval(Key v) const {
    const Key r = (Key{1} << subtree_height(v)) - 1;
    return {v - r, v + r};
}

bool ClosureGraph::is_ancestor(Key a, Key b) const {
    auto [lo, hi] = descendant_interval(a);
    if (!contains(b)) throw Error("closure: node " + std::to_string(b) + " out of range");
    return lo <= b && b <= hi;
}

BitString ClosureGraph::signature(Key v) const {
    const int k = subtree_height(v);
    BitString s;
    Key cur = root();
    for (int h = d_; h > k; --h) {
        const Key step = Key{1} << (h - 1);
        if (v < cur) {
            s.push_back(false);
            cur -= step;
        } else {
            s.push_back(true);
            cur += step;
        }
    }
    return s;
}

Factor ClosureGraph::factor() const {
    ClosureGraph self = *this;
    return Factor{"C" + std::to_string(d_), 1, size(),
                  [self](Coord u, Coord v) { return self.adjacent(u, v); }};
}

int ceil_log2(std::uint64_t n) {
    return n <= 1 ? 0 : static_cast<int>(std::bit_width(n - 1));
}

Key min_depth_in_range(const Bst& t, Key lo, Key hi) {
    int node = t.root();
    while (node != Bst::kNone) {
        const Key k = t.key(node);
        if (k < lo)
            node = t.right(node);
        else if (k > hi)
            node = t.left(node);
        else
            return k;
    }
    throw Error("min_depth_in_range: no key in [" + std::to_string(lo) + ", " +
                std::to_string(hi) + "]");
}

ProductWitness ClosureEmbedding::witness() const {
    ProductWitness w;
    w.factors = {ClosureGraph(d).factor(), clique_factor(omega)};
    for (auto [key, colour] : place) w.coords.push_back({key, colour});
    return w;
}

namespace {

void embed_rec(const IntervalRep& rep, int omega, const std::vector<int>& vs, Key centre, int height,
               ClosureEmbedding& out) {
    if (vs.empty()) return;
    Separation s = interval_separator(rep, omega, vs);
    int colour = 1;
    for (int v : s.z) out.place[v] = {centre, colour++};
    if (s.x1.empty() && s.x2.empty()) return;
    if (height == 0) throw Error("embed_interval_graph: closure too shallow for the input");
    const Key step = Key{1} << (height - 1);
    embed_rec(rep, omega, s.x1, centre - step, height - 1, out);
    embed_rec(rep, omega, s.x2, centre + step, height - 1, out);
}

}  // namespace

ClosureEmbedding embed_interval_graph(const IntervalRep& rep, int omega, int n) {
    if (rep.size() > n) throw Error("embed_interval_graph: more intervals than n");
    if (omega < 1 && rep.size() > 0) throw Error("embed_interval_graph: omega must be positive");
    if (max_load(rep) > omega) throw Error("embed_interval_graph: clique number exceeds omega");
    const IntervalRep distinct = perturb_left_endpoints(rep);
    ClosureEmbedding out;
    out.d = ceil_log2(static_cast<std::uint64_t>(std::max(n, 1)));
    out.omega = std::max(omega, 1);
    out.place.assign(rep.size(), {0, 0});
    std::vector<int> all(rep.size());
    std::iota(all.begin(), all.end(), 0);
    embed_rec(distinct, out.omega, all, Key{1} << out.d, out.d, out);
    return out;
}

}  // namespace ugraph
