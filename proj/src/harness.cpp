// SPDX-License-Identifier: Apache-2.0
#include "ugraph/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace ugraph {

int bad_example_size(int n) { return 5 + n / 3; }

namespace {

// Builds the shape of a balanced tree over ranks [l, r) into left/right.
int balanced_shape(int l, int r, std::vector<int>& left, std::vector<int>& right) {
    if (l >= r) return Bst::kNone;
    const int m = l + (r - l) / 2;
    left[m] = balanced_shape(l, m, left, right);
    right[m] = balanced_shape(m + 1, r, left, right);
    return m;
}

}  // namespace

BadExample gen_bad_example(int n, int i, int j) {
    if (n <= 0 || n % 12 != 0) throw Error("gen_bad_example: n must be a positive multiple of 12");
    const int q = n / 12;
    if (i < 1 || i > q || j < 1 || j > q) throw Error("gen_bad_example: i and j must lie in 1..n/12");
    const int p = 2 * q;  // w = α_p, u = β_p

    BadExample ex;
    ex.n = n, ex.i = i, ex.j = j;
    auto side = [&](int cut) {
        std::vector<int> ks;
        for (int k = 1; k <= cut; ++k) ks.push_back(k);
        for (int k = 2 * q + 1; k <= 3 * q - cut; ++k) ks.push_back(k);
        for (int k = n / 4 + 1; k <= n / 4 + q; ++k) ks.push_back(k);
        return ks;
    };
    const std::vector<int> alpha_leaves = side(i), beta_leaves = side(j);

    // Spine ids are fixed; leaves follow, α side first.
    std::vector<Rational> a{Rational(n / 2 + 1), Rational(n / 2 + p), Rational(1),
                            Rational(p), Rational(1)};
    std::vector<Rational> b{Rational(n - 1), Rational(n / 2 + p), Rational(n),
                            Rational(p), Rational(n - 1, 2)};
    ex.leaf_index = {0, p, 0, p, 0};
    std::vector<Edge> es{{ex.beta, ex.u}, {ex.u, ex.v}, {ex.v, ex.w}, {ex.w, ex.alpha}};
    std::vector<Vertex> alpha_ids, beta_ids;
    for (int k : alpha_leaves) {
        const Vertex id = static_cast<Vertex>(a.size());
        a.push_back(Rational(k)), b.push_back(Rational(k));
        ex.leaf_index.push_back(k);
        es.emplace_back(ex.alpha, id);
        alpha_ids.push_back(id);
    }
    for (int k : beta_leaves) {
        const Vertex id = static_cast<Vertex>(a.size());
        a.push_back(Rational(n / 2 + k)), b.push_back(Rational(n / 2 + k));
        ex.leaf_index.push_back(k);
        es.emplace_back(ex.beta, id);
        beta_ids.push_back(id);
    }
    const int size = static_cast<int>(a.size());
    ex.g = Graph(size, es, "H_" + std::to_string(i) + "," + std::to_string(j));
    for (int k = 0; k < size; ++k) ex.rep.iv.push_back({a[k], b[k]});

    std::vector<Vertex> order{ex.w, ex.v, ex.u, ex.beta};
    order.insert(order.end(), beta_ids.begin(), beta_ids.end());
    order.push_back(ex.alpha);
    order.insert(order.end(), alpha_ids.begin(), alpha_ids.end());
    ex.host = ttree_from_order(ex.g, 1, order);

    // T_1: root n/2, children n/4 and 3n/4, each quarter balanced.
    std::vector<Key> keys{n / 2, n / 4, 3 * n / 4, p, n / 2 + p};
    for (int k : alpha_leaves) keys.push_back(k);
    for (int k : beta_leaves) keys.push_back(n / 2 + k);
    std::sort(keys.begin(), keys.end());
    std::vector<int> left(keys.size(), Bst::kNone), right(keys.size(), Bst::kNone);
    auto rank = [&](Key k) { return static_cast<int>(std::lower_bound(keys.begin(), keys.end(), k) - keys.begin()); };
    const int root = rank(n / 2), l1 = rank(n / 4), r1 = rank(3 * n / 4);
    left[root] = l1, right[root] = r1;
    left[l1] = balanced_shape(0, l1, left, right);
    right[l1] = balanced_shape(l1 + 1, root, left, right);
    left[r1] = balanced_shape(root + 1, r1, left, right);
    right[r1] = balanced_shape(r1 + 1, static_cast<int>(keys.size()), left, right);
    ex.tree = Bst::from_shape(keys, left, right, root);
    return ex;
}

LabelInput bad_example_input(const BadExample& ex) {
    LabelInput in;
    in.g = ex.g;
    in.host = ex.host;
    for (Vertex v = 0; v < ex.g.size(); ++v) in.host_vertex.push_back(v);
    in.rows.assign(ex.g.size(), 1);
    in.rep = ex.rep;
    in.trees = {ex.tree};
    return in;
}

BadExampleCounts bad_example_counts(int n) {
    BadExampleCounts c;
    c.n = n;
    const LabelFormat fmt{n, 1};
    std::set<BitString> legacy_l, legacy_r, new_l, new_r;
    for (int i = 1; i <= n / 12; ++i)
        for (int j = 1; j <= n / 12; ++j) {
            const BadExample ex = gen_bad_example(n, i, j);
            const LabelContext ctx = build_context(bad_example_input(ex), fmt);
            legacy_l.insert(make_label_legacy(ctx, ex.v).serialize(fmt));
            legacy_r.insert(make_label_legacy(ctx, ex.u).serialize(fmt));
            new_l.insert(make_label(ctx, ex.v).serialize(fmt));
            new_r.insert(make_label(ctx, ex.u).serialize(fmt));
        }
    c.legacy_left = legacy_l.size(), c.legacy_right = legacy_r.size();
    c.new_left = new_l.size(), c.new_right = new_r.size();
    for (const auto& a : legacy_l)
        for (const auto& b : legacy_r)
            c.legacy_edges += adjacency_test(LegacyLabel::parse(a, fmt), LegacyLabel::parse(b, fmt), fmt);
    for (const auto& a : new_l)
        for (const auto& b : new_r) c.new_edges += adjacency_test_bits(a, b, fmt);
    return c;
}

ClosureInstance random_closure_instance(int n, int max_rows, double density, Rng& rng) {
    if (n < 1 || max_rows < 1) throw Error("random_closure_instance: parameters must be positive");
    ClosureInstance ci;
    ci.d = ceil_log2(static_cast<std::uint64_t>(n));
    const ClosureGraph cg(ci.d);
    const int h = std::uniform_int_distribution<int>(1, max_rows)(rng);
    std::set<std::pair<Key, int>> cells;
    std::uniform_int_distribution<Key> key(1, cg.size());
    std::uniform_int_distribution<int> row(1, h);
    while (static_cast<int>(cells.size()) < n) cells.insert({key(rng), row(rng)});
    std::vector<std::pair<Key, int>> vs(cells.begin(), cells.end());
    std::shuffle(vs.begin(), vs.end(), rng);
    std::bernoulli_distribution keep(density);
    std::vector<Edge> es;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const bool same_key = vs[a].first == vs[b].first;
            const bool key_ok = same_key || cg.adjacent(vs[a].first, vs[b].first);
            if (key_ok && std::abs(vs[a].second - vs[b].second) <= 1 && keep(rng)) es.emplace_back(a, b);
        }
    ci.g = Graph(n, es);
    ci.witness.factors = {cg.factor(), path_factor(h)};
    for (auto [k, y] : vs) ci.witness.coords.push_back({k, y});
    return ci;
}

IntervalRep random_intervals(int n, int span, Rng& rng) {
    IntervalRep rep;
    std::uniform_int_distribution<int> pos(1, std::max(1, span));
    for (int v = 0; v < n; ++v) {
        int a = pos(rng), b = pos(rng);
        if (a > b) std::swap(a, b);
        rep.iv.push_back({Rational(a), Rational(b)});
    }
    return rep;
}

Corpus generate_corpus(const CorpusConfig& cfg) {
    if (cfg.count < 1) throw Error("generate_corpus: empty corpus");
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) throw Error("generate_corpus: bad size range");
    Corpus c;
    c.config = cfg;
    Rng rng(cfg.seed);
    for (int k = 0; k < cfg.count; ++k) {
        const int n = std::uniform_int_distribution<int>(cfg.n_min, cfg.n_max)(rng);
        const int h = std::uniform_int_distribution<int>(1, std::max(1, n / 4))(rng);
        QtInstance inst = generate_qt_instance(cfg.t, n, h, rng());
        if (auto err = validate_witness(inst.g, inst.witness)) throw Error("generate_corpus: " + *err);
        if (auto err = validate_ttree(inst.host)) throw Error("generate_corpus: " + *err);
        c.instances.push_back(std::move(inst));
    }
    return c;
}

LabelFormat corpus_format(const Corpus& c) {
    LabelFormat fmt;
    fmt.t = c.config.t;
    fmt.n = c.config.n_max;
    for (const auto& inst : c.instances) fmt.n = std::max({fmt.n, inst.g.size(), inst.host.size()});
    return fmt;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw Error("loglog_slope: need two or more points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] <= 0 || y[k] <= 0) throw Error("loglog_slope: values must be positive");
        const double lx = std::log(x[k]), ly = std::log(y[k]);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

bool Report::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::check(std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
}

nlohmann::json Report::to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"suite", suite},     {"config", config},   {"ok", ok()},
            {"checks", cs},       {"measurements", measurements}, {"seconds", seconds}};
}

std::string Report::to_csv() const {
    std::ostringstream out;
    auto row = [&out](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
        out << '\n';
    };
    row(csv_header);
    for (const auto& r : csv_rows) row(r);
    return out.str();
}

nlohmann::json SuiteConfig::to_json() const {
    return {{"n", n}, {"t", t}, {"count", count}, {"lambda", lambda}, {"seed", seed}};
}

}  // namespace ugraph
