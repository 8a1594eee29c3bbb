// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "ugraph/compressor.hpp"
#include "ugraph/harness.hpp"
#include "ugraph/unigraph.hpp"

namespace ugraph {

namespace {

using Suite = std::function<void(const SuiteConfig&, Report&)>;

int count_or(const SuiteConfig& cfg, int fallback) { return cfg.count > 0 ? cfg.count : fallback; }

UgParams params_for(const SuiteConfig& cfg, std::uint64_t n) {
    return cfg.lambda >= 0 ? UgParams::make(n, cfg.lambda) : UgParams::with_default_lambda(n);
}

// First failure wins; later ones are only counted.
struct Tally {
    std::uint64_t runs = 0, failures = 0;
    std::string first;
    void fail(const std::string& what) {
        if (!failures++) first = what;
    }
    void report(Report& r, const std::string& name) const {
        r.check(name, failures == 0,
                std::to_string(runs) + " runs, " + std::to_string(failures) + " failures" +
                    (first.empty() ? "" : "; first: " + first));
    }
};

void suite_bst(const SuiteConfig& cfg, Report& r) {
    Rng rng(cfg.seed);
    Tally depth, succ;
    for (int k = 0; k < count_or(cfg, 2000); ++k) {
        const int m = std::uniform_int_distribution<int>(1, std::max(1, cfg.n))(rng);
        std::vector<Key> keys(m);
        std::vector<double> w(m);
        double total = 0;
        for (int y = 0; y < m; ++y) {
            keys[y] = y + 1;
            w[y] = std::uniform_real_distribution<double>(0.01, 100.0)(rng);
            total += w[y];
        }
        const Bst t = build_biased_bst(keys, w);
        ++depth.runs;
        for (int y = 0; y < m; ++y)
            if (t.depth(keys[y]) > std::log2(total / w[y]) + 1e-9) {
                depth.fail("key " + std::to_string(y + 1) + " of " + std::to_string(m));
                break;
            }
        ++succ.runs;
        for (int y = 0; y + 1 < m; ++y) {
            const auto l = successor_set(t.signature(keys[y]), t.height());
            if (!std::binary_search(l.begin(), l.end(), t.signature(keys[y + 1]))) {
                succ.fail("consecutive pair " + std::to_string(y + 1));
                break;
            }
        }
    }
    depth.report(r, "biased depth ≤ log2(W/w)");
    succ.report(r, "consecutive signatures in successor set");
}

void suite_treeseq(const SuiteConfig& cfg, Report& r) {
    Rng rng(cfg.seed);
    Tally seq, codec;
    for (int k = 0; k < count_or(cfg, 300); ++k) {
        const int h = std::uniform_int_distribution<int>(1, 8)(rng);
        std::vector<std::vector<Key>> rows(h);
        for (auto& row : rows) {
            std::set<Key> s;
            const int m = std::uniform_int_distribution<int>(1, std::max(1, cfg.n))(rng);
            while (static_cast<int>(s.size()) < m) s.insert(std::uniform_int_distribution<Key>(1, 4 * cfg.n)(rng));
            row.assign(s.begin(), s.end());
        }
        const TreeSequence ts = build_tree_sequence(rows);
        ++seq.runs;
        if (auto err = check_tree_sequence(ts)) seq.fail(*err);
        const TransitionCodec c(ts.max_height() + 1);
        for (std::size_t y = 0; y + 1 < ts.row_count(); ++y)
            for (Key z : ts.rows[y + 1]) {
                if (!ts.trees[y].contains(z)) continue;
                ++codec.runs;
                const auto code = transition_code(ts, c, y, z);
                if (c.decode(ts.trees[y].signature(z), code) != ts.trees[y + 1].signature(z))
                    codec.fail("row " + std::to_string(y) + " key " + std::to_string(z));
            }
    }
    seq.report(r, "tree sequence properties");
    codec.report(r, "codec roundtrip");
}

void suite_intervals(const SuiteConfig& cfg, Report& r) {
    Rng rng(cfg.seed);
    Tally emb, sep;
    for (int k = 0; k < count_or(cfg, 1000); ++k) {
        const int n = std::uniform_int_distribution<int>(1, std::max(1, std::min(cfg.n, 128)))(rng);
        const IntervalRep rep = random_intervals(n, 2 * n, rng);
        const Graph g = intersection_graph(rep);
        const int omega = max_load(rep);
        ++emb.runs;
        try {
            const ClosureEmbedding e = embed_interval_graph(rep, omega, n);
            if (auto err = validate_witness(g, e.witness())) emb.fail(*err);
        } catch (const Error& ex) {
            emb.fail(ex.what());
        }
        ++sep.runs;
        const IntervalRep pr = perturb_left_endpoints(rep);
        const Separation s = interval_separator(pr, omega);
        bool ok = static_cast<int>(s.z.size()) <= omega && 2 * static_cast<int>(s.x1.size()) <= n &&
                  2 * static_cast<int>(s.x2.size()) <= n;
        for (int a : s.x1)
            for (int b : s.x2) ok = ok && !g.has_edge(a, b);
        if (!ok) sep.fail("n=" + std::to_string(n));
    }
    emb.report(r, "interval graphs embed into C_d ⊠ K_ω");
    sep.report(r, "separator postconditions");
}

void suite_sizes(const SuiteConfig& cfg, Report& r) {
    r.csv_header = {"n", "d", "lambda", "vertices", "vertex_bound", "edges", "edge_bound"};
    bool ok = true;
    std::string first;
    for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(std::max(1, cfg.n)); n *= 2)
        for (int lambda = 0; lambda <= 3; ++lambda) {
            const UgParams p = UgParams::make(n, lambda);
            const auto v = vertex_count(p);
            const auto e = count_edges(p);
            const bool row_ok = v <= p.vertex_bound() && e <= p.edge_bound();
            if (!row_ok && ok) first = "n=" + std::to_string(n) + " λ=" + std::to_string(lambda);
            ok = ok && row_ok;
            r.csv_rows.push_back({std::to_string(n), std::to_string(p.d), std::to_string(lambda), std::to_string(v),
                                  std::to_string(static_cast<double>(p.vertex_bound())), std::to_string(e),
                                  std::to_string(static_cast<double>(p.edge_bound()))});
            r.measurements["rows"].push_back({{"n", n}, {"lambda", lambda}, {"vertices", v}, {"edges", e}});
        }
    r.check("|V|, |E| within closed-form bounds", ok, first);
}

void suite_universality(const SuiteConfig& cfg, Report& r) {
    Rng rng(cfg.seed);
    Tally closure, qt;
    for (int k = 0; k < count_or(cfg, 100); ++k) {
        const int n = std::uniform_int_distribution<int>(2, std::max(2, cfg.n))(rng);
        const ClosureInstance ci = random_closure_instance(n, std::max(1, n / 4), 0.5, rng);
        const UgParams p = params_for(cfg, static_cast<std::uint64_t>(n));
        ++closure.runs;
        try {
            if (auto err = verify_embedding(p, ci.g, embed(p, ci.g, ci.witness))) closure.fail(*err);
        } catch (const Error& ex) {
            closure.fail(ex.what());
        }
    }
    for (int k = 0; k < std::max(1, count_or(cfg, 100) / 4); ++k) {
        const int n = std::uniform_int_distribution<int>(cfg.t + 1, std::max(cfg.t + 1, cfg.n))(rng);
        const int h = std::uniform_int_distribution<int>(1, std::max(1, n / 4))(rng);
        const QtInstance inst = generate_qt_instance(cfg.t, n, h, rng());
        ++qt.runs;
        try {
            const QtEmbedding e = embed_qt(params_for(cfg, static_cast<std::uint64_t>(n)), inst);
            if (auto err = verify_qt_embedding(e, inst.g)) qt.fail(*err);
        } catch (const Error& ex) {
            qt.fail(ex.what());
        }
    }
    closure.report(r, "C_d ⊠ P_h instances embed into G_n");
    qt.report(r, "Q_t instances embed into G_n ⊠ K_ω");
}

void suite_compressor(const SuiteConfig& cfg, Report& r) {
    Tally hall, emb;
    std::uint64_t hall_failures = 0, regenerated = 0;
    for (int k = 0; k < count_or(cfg, 100); ++k) {
        const int n = 1 + k % 8;
        const Saturator s = build_saturator(20, 2, 0.25, cfg.seed + k);
        ++hall.runs;
        if (!verify_saturation(s, n).ok) hall.fail("seed " + std::to_string(cfg.seed + k));
        // Reduced degree, for the failure-rate measurement only.
        if (!verify_saturation(build_saturator(20, 2, 0.25, cfg.seed + k, 3), n).ok) ++hall_failures;
    }
    r.measurements["hall_failure_rate_dsat3"] = static_cast<double>(hall_failures) / std::max<std::uint64_t>(1, hall.runs);

    const UgParams small = UgParams::make(2, 0);
    const MaterializedUg mu = materialize(small);
    const Saturator s0 = build_saturator(mu.graph.size(), 2, 1.0, cfg.seed, 3);
    const Graph hn = compress(mu.graph, s0);
    const std::uint64_t limit = static_cast<std::uint64_t>(s0.d_sat) * s0.d_sat * mu.graph.edge_count();
    r.check("|E(H_n)| ≤ d_sat²|E(G)|", hn.edge_count() <= limit,
            std::to_string(hn.edge_count()) + " ≤ " + std::to_string(limit));

    const UgParams p = params_for(cfg, 8);
    const int omega = path_width_bound(cfg.t, 8) + 1;
    const std::int64_t N = static_cast<std::int64_t>(vertex_count(p)) * omega;
    HostAdjacency host = [&](std::int64_t a, std::int64_t b) {
        const UgVertex ua = vertex_at(p, static_cast<std::uint64_t>(a / omega));
        const UgVertex ub = vertex_at(p, static_cast<std::uint64_t>(b / omega));
        if (ua == ub) return a % omega != b % omega;
        return is_edge(p, ua, ub);
    };
    Rng rng(cfg.seed);
    std::uint64_t seed = cfg.seed;
    Saturator s = build_saturator(static_cast<int>(N), 4, 1.0, seed, 8);
    for (int k = 0; k < count_or(cfg, 100); ++k) {
        const int n = std::uniform_int_distribution<int>(cfg.t + 1, 8)(rng);
        const QtInstance inst = generate_qt_instance(cfg.t, n, std::uniform_int_distribution<int>(1, 2)(rng), rng());
        ++emb.runs;
        try {
            const QtEmbedding e = embed_qt(p, inst);
            std::vector<std::int64_t> idx;
            for (const auto& im : e.image)
                idx.push_back(static_cast<std::int64_t>(vertex_index(p, im.u)) * omega + (im.colour - 1));
            // Saturators are random; a Hall failure means drawing another one.
            for (int attempt = 0;; ++attempt) {
                try {
                    const auto image = embed_compressed(inst.g, idx, s);
                    if (auto err = validate_compressed_embedding(inst.g, image, s, host)) emb.fail(*err);
                    break;
                } catch (const Error&) {
                    ++regenerated;
                    if (attempt == 20) throw;
                    s = build_saturator(static_cast<int>(N), 4, 1.0, ++seed, 8);
                }
            }
        } catch (const Error& ex) {
            emb.fail(ex.what());
        }
    }
    r.measurements["regenerated_saturators"] = regenerated;
    hall.report(r, "exhaustive Hall verification");
    emb.report(r, "compressed embeddings validate");
}

void suite_labels(const SuiteConfig& cfg, Report& r) {
    CorpusConfig cc;
    cc.count = count_or(cfg, 30);
    cc.t = cfg.t;
    cc.n_min = cfg.t + 1;
    cc.n_max = std::max(cfg.t + 1, cfg.n);
    cc.seed = cfg.seed;
    const Corpus corpus = generate_corpus(cc);
    const LabelFormat fmt = corpus_format(corpus);
    Tally props, fix, adj;
    std::vector<std::vector<BitString>> all;
    std::size_t max_len = 0;
    for (const auto& inst : corpus.instances) {
        const LabelContext ctx = build_context(label_input(inst), fmt);
        ++props.runs, ++fix.runs, ++adj.runs;
        for (auto chk : {check_root_paths, check_unique_match, check_tree_heights, check_transition_codes})
            if (auto err = chk(ctx)) props.fail(*err);
        if (auto err = check_fixup(ctx)) fix.fail(*err);
        const auto labels = make_labels(ctx);
        if (auto err = check_labelling(inst.g, labels, fmt)) adj.fail(*err);
        std::vector<BitString> bits;
        for (const auto& l : labels) bits.push_back(l.serialize(fmt)), max_len = std::max(max_len, bits.back().size());
        all.push_back(std::move(bits));
    }
    props.report(r, "context properties");
    fix.report(r, "fixup properties");
    adj.report(r, "adjacency test matches G on all pairs");
    const UniversalGraph u = assemble_universal(fmt, all);
    Tally ind;
    for (std::size_t k = 0; k < all.size(); ++k) {
        ++ind.runs;
        if (auto err = check_induced(u, corpus.instances[k].g, all[k])) ind.fail(*err);
    }
    ind.report(r, "corpus members induced in U");
    r.measurements["u_vertices"] = u.graph.size();
    r.measurements["u_edges"] = u.graph.edge_count();
    r.measurements["max_label_bits"] = max_len;
}

void suite_bad_example(const SuiteConfig&, Report& r) {
    std::vector<double> xs, legacy, fresh;
    r.csv_header = {"n", "legacy_edges", "new_edges"};
    for (int n : {120, 240, 480}) {
        const BadExampleCounts c = bad_example_counts(n);
        xs.push_back(n);
        legacy.push_back(static_cast<double>(std::max<std::uint64_t>(1, c.legacy_edges)));
        fresh.push_back(static_cast<double>(std::max<std::uint64_t>(1, c.new_edges)));
        r.csv_rows.push_back({std::to_string(n), std::to_string(c.legacy_edges), std::to_string(c.new_edges)});
    }
    const double sl = loglog_slope(xs, legacy), sn = loglog_slope(xs, fresh);
    r.measurements["legacy_slope"] = sl;
    r.measurements["new_slope"] = sn;
    r.check("legacy edge count slope ≥ 1.8", sl >= 1.8, std::to_string(sl));
    r.check("fixup edge count slope ≤ 1.5", sn <= 1.5, std::to_string(sn));
}

void suite_bags(const SuiteConfig& cfg, Report& r) {
    r.csv_header = {"t", "n", "max_bag", "max_bag_fixed", "reference"};
    double c = 0;
    int violations = 0;
    for (int t = 1; t <= std::min(cfg.t, 2); ++t)
        for (int n = 64; n <= std::max(64, cfg.n); n *= 2) {
            CorpusConfig cc;
            cc.count = count_or(cfg, 5);
            cc.t = t;
            cc.n_min = cc.n_max = n;
            cc.seed = cfg.seed + n;
            const Corpus corpus = generate_corpus(cc);
            BagStats worst;
            for (const auto& inst : corpus.instances) {
                const BagStats st = bag_stats(build_context(label_input(inst), corpus_format(corpus)));
                worst.max_bag = std::max(worst.max_bag, st.max_bag);
                worst.max_bag_fixed = std::max(worst.max_bag_fixed, st.max_bag_fixed);
                worst.reference = st.reference;
                violations += st.accounting_violations;
            }
            c = std::max(c, worst.max_bag_fixed / worst.reference);
            r.csv_rows.push_back({std::to_string(t), std::to_string(n), std::to_string(worst.max_bag),
                                  std::to_string(worst.max_bag_fixed), std::to_string(worst.reference)});
        }
    r.measurements["fitted_c"] = c;
    r.check("bag accounting bound", violations == 0, std::to_string(violations) + " violations");
}

const std::map<std::string, Suite>& registry() {
    static const std::map<std::string, Suite> suites{
        {"bst", suite_bst},         {"treeseq", suite_treeseq},       {"intervals", suite_intervals},
        {"sizes", suite_sizes},     {"universality", suite_universality}, {"compressor", suite_compressor},
        {"labels", suite_labels},   {"bad-example", suite_bad_example},  {"bags", suite_bags},
    };
    return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& [name, _] : registry()) out.push_back(name);
    return out;
}

Report run_suite(const std::string& name, const SuiteConfig& cfg) {
    auto it = registry().find(name);
    if (it == registry().end()) throw Error("unknown suite: " + name);
    Report r;
    r.suite = name;
    r.config = cfg.to_json();
    const auto start = std::chrono::steady_clock::now();
    it->second(cfg, r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.checks.empty()) throw Error("suite " + name + " ran no checks");
    return r;
}

}  // namespace ugraph
