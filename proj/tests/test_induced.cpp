// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "ugraph/harness.hpp"
#include "ugraph/induced.hpp"

using namespace ugraph;

namespace {

struct Labelled {
    QtInstance inst;
    LabelFormat fmt;
    LabelContext ctx;
    std::vector<Label> labels;
};

Labelled label(const QtInstance& inst, int fmt_n = 0) {
    Labelled l{inst, {fmt_n ? fmt_n : std::max(inst.g.size(), inst.host.size()), inst.t}, {}, {}};
    l.ctx = build_context(label_input(inst), l.fmt);
    l.labels = make_labels(l.ctx);
    return l;
}

const std::vector<Labelled>& corpus() {
    static const std::vector<Labelled> c = [] {
        std::vector<Labelled> out;
        for (int t = 1; t <= 3; ++t) {
            CorpusConfig cc;
            cc.count = 10, cc.t = t, cc.n_min = t + 1, cc.n_max = 80, cc.seed = 40 + t;
            const Corpus corp = generate_corpus(cc);
            for (const auto& inst : corp.instances) out.push_back(label(inst, corpus_format(corp).n));
        }
        return out;
    }();
    return c;
}

QtInstance single_vertex() { return make_qt_instance(Graph(1), build_ttree(1, 2, 1), {0}, {1}); }

}  // namespace

TEST(Context, SingleVertex) {
    const Labelled l = label(single_vertex());
    EXPECT_EQ(l.ctx.h, 1);
    EXPECT_EQ(l.ctx.S[1], l.inst.host.family[0]);
    EXPECT_LE(l.ctx.trees[1].size(), 2u);
    const Label& lab = l.labels[0];
    EXPECT_EQ(lab.core.alpha1.str(), "");
    EXPECT_EQ(lab.sig.str(), "");
    for (bool b : lab.core.adj) EXPECT_FALSE(b);
    EXPECT_FALSE(lab.mu.has_value());
}

TEST(Context, MissingSupergraphEdge) {
    const QtInstance inst = generate_qt_instance(1, 6, 1, 3);
    LabelInput in = label_input(inst);
    for (auto& iv : in.rep.iv) iv = {Rational(0), Rational(0)};
    in.rep.iv[0] = {Rational(5), Rational(5)};
    EXPECT_THROW(build_context(in, {6, 1}), Error);
}

TEST(Context, RootPathsOnRandomInstance) {
    const Labelled l = label(generate_qt_instance(2, 64, 5, 12));
    EXPECT_FALSE(check_root_paths(l.ctx).has_value());
    // Independent replay: every pair of X_y(v) is ancestor-related.
    for (int y = 1; y <= l.ctx.h; ++y)
        for (Vertex v : l.ctx.L[y])
            for (Vertex a : l.inst.host.family[v])
                for (Vertex b : l.inst.host.family[v]) {
                    const Bst& t = l.ctx.trees[y];
                    const BitString sa = t.signature_of_node(l.ctx.x[y][a]), sb = t.signature_of_node(l.ctx.x[y][b]);
                    EXPECT_TRUE(sa.compatible(sb));
                }
}

TEST(Context, XIsMinimumDepthInRange) {
    const Labelled l = label(generate_qt_instance(2, 40, 3, 8));
    for (int y = 1; y <= l.ctx.h; ++y) {
        const Bst& t = l.ctx.trees[y];
        for (Vertex v : l.ctx.Splus[y]) {
            int best = -1;
            for (int node = 0; node < static_cast<int>(t.size()); ++node)
                if (t.key(node) >= l.ctx.lo[v] && t.key(node) <= l.ctx.hi[v] &&
                    (best < 0 || t.depth_of_node(node) < t.depth_of_node(best)))
                    best = node;
            EXPECT_EQ(l.ctx.x[y][v], best);
        }
    }
}

TEST(Context, BagsWithinLoad) {
    for (const auto& l : corpus()) EXPECT_LE(bag_stats(l.ctx).max_bag, bag_stats(l.ctx).max_load);
}

TEST(Fixup, NoViolationsIsIdentity) {
    const Bst t = build_balanced_bst(std::vector<Key>{1, 2, 3, 4, 5, 6, 7});
    std::vector<std::vector<Vertex>> fam{{0, 1}, {1}};
    std::vector<int> assign{t.node_of(4), t.node_of(2)};
    EXPECT_EQ(fixup_assignment(t, fam, assign), 0);
    EXPECT_EQ(assign, (std::vector<int>{t.node_of(4), t.node_of(2)}));
}

TEST(Fixup, PullsParentUp) {
    const Bst t = build_balanced_bst(std::vector<Key>{1, 2, 3, 4, 5, 6, 7});
    std::vector<std::vector<Vertex>> fam{{0, 1}, {1}};
    std::vector<int> assign{t.node_of(4), t.node_of(1)};
    EXPECT_EQ(fixup_assignment(t, fam, assign), 1);
    EXPECT_EQ(t.depth_of_node(assign[1]), 1);
    EXPECT_TRUE(t.is_ancestor(assign[1], t.node_of(1)));
    auto again = assign;
    EXPECT_EQ(fixup_assignment(t, fam, again), 0);
    EXPECT_EQ(again, assign);
}

TEST(Fixup, CorpusProperties) {
    for (const auto& l : corpus()) {
        EXPECT_FALSE(check_fixup(l.ctx).has_value());
        for (int y = 1; y <= l.ctx.h; ++y) {
            const Bst& t = l.ctx.trees[y];
            for (Vertex v : l.ctx.Splus[y]) {
                EXPECT_TRUE(t.is_ancestor(l.ctx.xp[y][v], l.ctx.x[y][v]));
                for (Vertex w : l.inst.host.family[v])
                    if (l.ctx.member(y, w))
                        EXPECT_LE(t.depth_of_node(l.ctx.xp[y][w]), t.depth_of_node(l.ctx.xp[y][v]) + 1);
            }
        }
        LabelContext copy = l.ctx;
        run_fixup(copy);
        EXPECT_EQ(copy.xp, l.ctx.xp);
    }
}

TEST(Context, UniqueMatchAndHeights) {
    for (const auto& l : corpus()) {
        EXPECT_FALSE(check_unique_match(l.ctx).has_value());
        EXPECT_FALSE(check_tree_heights(l.ctx).has_value());
        EXPECT_FALSE(check_transition_codes(l.ctx).has_value());
    }
}

TEST(BagStats, TreesStayBelowReference) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Labelled l = label(generate_qt_instance(1, 128, 4, seed));
        const BagStats st = bag_stats(l.ctx);
        EXPECT_LT(st.max_bag_fixed, st.reference);
        EXPECT_EQ(st.accounting_violations, 0);
    }
}

TEST(BagStats, SingleRowWithoutViolations) {
    const Labelled l = label(single_vertex());
    EXPECT_EQ(l.ctx.fixup_moves, 0);
    EXPECT_EQ(l.ctx.xp, l.ctx.x);
    const BagStats st = bag_stats(l.ctx);
    EXPECT_EQ(st.max_bag, st.max_bag_fixed);
}

TEST(Labels, TransitionCodesDecode) {
    for (const auto& l : corpus()) {
        const auto codec = l.fmt.codec();
        for (Vertex u = 0; u < l.inst.g.size(); ++u) {
            const Label& lab = l.labels[u];
            const int y = l.ctx.row[u];
            const Vertex v = l.ctx.in.host_vertex[u];
            ASSERT_EQ(lab.mu.has_value(), y < l.ctx.h);
            if (lab.mu)
                EXPECT_EQ(codec.decode(lab.sig, *lab.mu), l.ctx.trees[y + 1].signature_of_node(l.ctx.x[y + 1][v]));
        }
    }
}

TEST(Labels, RIsAtMostOneBit) {
    for (const auto& l : corpus())
        for (Vertex u = 0; u < l.inst.g.size(); ++u)
            for (const auto& r : l.labels[u].r) EXPECT_LE(r.size(), 1u);
}

TEST(Labels, PathContract) {
    for (const auto& l : corpus())
        for (Vertex u = 0; u < l.inst.g.size(); ++u) {
            const int y = l.ctx.row[u];
            const Vertex v = l.ctx.in.host_vertex[u];
            const Bst& t = l.ctx.trees[y];
            int deepest = l.ctx.xp[y][v];
            for (Vertex w : l.inst.host.family[v])
                if (t.depth_of_node(l.ctx.xp[y][w]) > t.depth_of_node(deepest)) deepest = l.ctx.xp[y][w];
            EXPECT_EQ(t.signature_of_node(l.ctx.xp[y][v]) + l.labels[u].r[1], t.signature_of_node(deepest));
        }
}

TEST(Labels, AlphaSuccessorContract) {
    for (const auto& l : corpus())
        for (Vertex a = 0; a < l.inst.g.size(); ++a)
            for (Vertex b = 0; b < l.inst.g.size(); ++b) {
                const auto next = l.labels[a].core.next_alpha();
                const bool is_next = next && *next == l.labels[b].core.alpha1;
                EXPECT_EQ(is_next, l.ctx.row[b] == l.ctx.row[a] + 1);
            }
}

TEST(Labels, SerializeRoundTrip) {
    for (const auto& l : corpus())
        for (const auto& lab : l.labels) {
            const BitString bits = lab.serialize(l.fmt);
            const Label back = Label::parse(bits, l.fmt);
            EXPECT_EQ(back.serialize(l.fmt), bits);
            EXPECT_THROW(Label::parse(bits.prefix(bits.size() - 1), l.fmt), Error);
            EXPECT_THROW(Label::parse(bits + BitString::parse("0"), l.fmt), Error);
        }
}

TEST(Labels, DistinctWithinInstance) {
    for (const auto& l : corpus()) {
        std::set<BitString> seen;
        for (const auto& lab : l.labels) seen.insert(lab.serialize(l.fmt));
        EXPECT_EQ(seen.size(), l.labels.size());
    }
}

TEST(Adjacency, FullPairTable) {
    for (const auto& l : corpus()) {
        const int n = l.inst.g.size();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                ASSERT_EQ(adjacency_test(l.labels[a], l.labels[b], l.fmt), l.inst.g.has_edge(a, b));
            }
    }
}

TEST(Adjacency, LegacySchemeIsAlsoSound) {
    for (const auto& l : corpus()) {
        const auto legacy = make_legacy_labels(l.ctx);
        const int n = l.inst.g.size();
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) ASSERT_EQ(adjacency_test(legacy[a], legacy[b], l.fmt), l.inst.g.has_edge(a, b));
    }
}

TEST(Adjacency, RowsFarApart) {
    for (const auto& l : corpus())
        for (Vertex a = 0; a < l.inst.g.size(); ++a)
            for (Vertex b = 0; b < l.inst.g.size(); ++b)
                if (std::abs(l.ctx.row[a] - l.ctx.row[b]) >= 2) EXPECT_FALSE(adjacency_test(l.labels[a], l.labels[b], l.fmt));
}

TEST(Adjacency, NonEdgeInsideFamily) {
    int found = 0;
    for (const auto& l : corpus())
        for (Vertex a = 0; a < l.inst.g.size(); ++a)
            for (Vertex b = 0; b < l.inst.g.size(); ++b) {
                const Vertex va = l.ctx.in.host_vertex[a], vb = l.ctx.in.host_vertex[b];
                const auto& fam = l.inst.host.family[vb];
                if (a == b || l.ctx.row[a] != l.ctx.row[b] || va == vb) continue;
                if (std::find(fam.begin(), fam.end(), va) == fam.end() || l.inst.g.has_edge(a, b)) continue;
                ++found;
                EXPECT_FALSE(adjacency_test(l.labels[a], l.labels[b], l.fmt));
            }
    EXPECT_GT(found, 0);
}

TEST(Adjacency, CheckerDetectsTampering) {
    const Labelled& l = corpus().front();
    ASSERT_GT(l.inst.g.edge_count(), 0u);
    auto labels = l.labels;
    for (auto& lab : labels) std::fill(lab.core.adj.begin(), lab.core.adj.end(), false);
    EXPECT_TRUE(check_labelling(l.inst.g, labels, l.fmt).has_value());
    EXPECT_FALSE(check_labelling(l.inst.g, l.labels, l.fmt).has_value());
}

TEST(Adjacency, UndecodableLabelThrows) {
    const Labelled& l = corpus().front();
    EXPECT_THROW(adjacency_test_bits(BitString::parse("1"), l.labels[0].serialize(l.fmt), l.fmt), Error);
}

TEST(Universal, SingleInstanceIsInduced) {
    const Labelled& l = corpus()[3];
    std::vector<BitString> bits;
    for (const auto& lab : l.labels) bits.push_back(lab.serialize(l.fmt));
    const UniversalGraph u = assemble_universal(l.fmt, {bits});
    EXPECT_EQ(u.graph.size(), l.inst.g.size());
    EXPECT_FALSE(check_induced(u, l.inst.g, bits).has_value());
    EXPECT_EQ(u.graph.edge_count(), l.inst.g.edge_count());
}

TEST(Universal, CorpusMembersInduced) {
    std::vector<LabelledMember> members;
    for (const auto& l : corpus())
        if (l.fmt == corpus().front().fmt) {
            LabelledMember m{l.fmt, {}};
            for (const auto& lab : l.labels) m.labels.push_back(lab.serialize(l.fmt));
            members.push_back(m);
        }
    const UniversalGraph u = assemble_universal(members);
    std::set<BitString> all;
    for (const auto& m : members) all.insert(m.labels.begin(), m.labels.end());
    EXPECT_EQ(static_cast<std::size_t>(u.graph.size()), all.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
        const auto& l = corpus()[k];
        EXPECT_FALSE(check_induced(u, l.inst.g, members[k].labels).has_value());
    }
}

TEST(Universal, DisjointLabelSetsAddUp) {
    const Labelled a = label(generate_qt_instance(1, 12, 1, 1), 40), b = label(generate_qt_instance(1, 30, 6, 2), 40);
    std::vector<BitString> la, lb;
    for (const auto& l : a.labels) la.push_back(l.serialize(a.fmt));
    for (const auto& l : b.labels) lb.push_back(l.serialize(b.fmt));
    std::set<BitString> sa(la.begin(), la.end());
    bool disjoint = true;
    for (const auto& x : lb) disjoint = disjoint && !sa.count(x);
    const UniversalGraph u = assemble_universal(a.fmt, {la, lb});
    if (disjoint) EXPECT_EQ(static_cast<std::size_t>(u.graph.size()), la.size() + lb.size());
    EXPECT_FALSE(check_induced(u, a.inst.g, la).has_value());
    EXPECT_FALSE(check_induced(u, b.inst.g, lb).has_value());
}

TEST(Universal, FormatMismatch) {
    EXPECT_THROW(assemble_universal(std::vector<LabelledMember>{{{8, 1}, {}}, {{9, 1}, {}}}), Error);
    EXPECT_THROW(assemble_universal(std::vector<LabelledMember>{}), Error);
}
