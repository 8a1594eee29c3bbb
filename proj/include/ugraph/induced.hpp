// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ugraph/closure.hpp"
#include "ugraph/decomp.hpp"
#include "ugraph/graph.hpp"
#include "ugraph/treeseq.hpp"

namespace ugraph {

/// Global parameters shared by every label of a corpus. All numeric label
/// fields are written in bits_for((t+1)·n) bits; the transition codec
/// addresses signatures up to the same bound.
struct LabelFormat {
    static constexpr std::uint8_t kVersion = 1;
    int n = 1;
    int t = 1;

    std::uint64_t field_max() const noexcept { return static_cast<std::uint64_t>(t + 1) * n; }
    std::size_t field_bits() const noexcept { return bits_for(field_max()); }
    std::size_t colour_bits() const noexcept { return bits_for(static_cast<std::uint64_t>(t + 1)); }
    TransitionCodec codec() const { return TransitionCodec(static_cast<int>(field_max())); }
    friend bool operator==(const LabelFormat&, const LabelFormat&) = default;
};

/// A graph G ⊆ H ⊠ P with H a t-tree and an interval supergraph of H.
struct LabelInput {
    Graph g;
    TTree host;
    std::vector<Vertex> host_vertex;  // per G vertex
    std::vector<int> rows;            // per G vertex
    IntervalRep rep;                  // per host vertex
    /// Optional prescribed tree per (compacted) row. Keys are then compared
    /// against [⌈a_v⌉, ⌊b_v⌋] directly instead of coordinate-compressed ranks.
    std::vector<Bst> trees;
};

/// Interval supergraph of the host from its family-clique decomposition.
LabelInput label_input(const QtInstance& inst);

/// Moves nodes up so every family member of a vertex sits at most one level
/// below it. `family[v]` lists C_v ∩ S (members only), `assign[v]` is the
/// node (rank in `t`) of member v or -1. Returns the number of moves.
int fixup_assignment(const Bst& t, const std::vector<std::vector<Vertex>>& family,
                     std::vector<int>& assign);

struct LabelContext {
    LabelFormat fmt;
    LabelInput in;
    int h = 0;
    std::vector<int> row;                          // compacted row (1..h) per G vertex
    std::map<std::pair<Vertex, int>, Vertex> at;   // (host vertex, row) -> G vertex
    std::vector<Key> lo, hi;                       // key range per host vertex
    // Indexed by row 0..h+1; rows 0 and h+1 are empty sentinels.
    std::vector<std::vector<Vertex>> L, S, Splus;
    std::vector<Bst> trees;                        // index 1..h
    std::vector<std::vector<int>> x, xp;           // node per host vertex, -1 outside S⁺
    std::vector<std::vector<int>> psi, psi_legacy; // colour per host vertex, 0 outside S⁺
    Bst row_tree;                                  // keys 1..h
    int fixup_moves = 0;

    bool member(int y, Vertex v) const { return y >= 1 && y <= h && x[y][v] >= 0; }
    /// C_v ∩ S⁺_y.
    std::vector<std::vector<Vertex>> families_in(int y) const;
};

LabelContext build_context(const LabelInput& in, const LabelFormat& fmt);

/// Recomputes x' and ψ' from x. build_context already calls this.
void run_fixup(LabelContext& ctx);

/// Each check returns the first violation or nullopt.
std::optional<std::string> check_root_paths(const LabelContext& ctx);     // X_y(v) lies on a root path
std::optional<std::string> check_fixup(const LabelContext& ctx);          // x' above x, parent gap ≤ 1
std::optional<std::string> check_unique_match(const LabelContext& ctx);   // one member per (node, colour)
std::optional<std::string> check_tree_heights(const LabelContext& ctx);   // height slack
std::optional<std::string> check_transition_codes(const LabelContext& ctx);  // μ decodes to the next row

struct BagStats {
    int max_bag = 0;         // max |B_{y,x}|
    int max_bag_fixed = 0;   // max |B'_{y,x}|
    int max_load = 0;        // interval load of the representation
    double reference = 0;    // t·(log2 n)^(t+2)
    int accounting_violations = 0;  // |B'| > Σ_d |B_{x_d}|·binom(d+t,t)
};
BagStats bag_stats(const LabelContext& ctx);

/// Fields shared by both schemes.
struct LabelCore {
    BitString alpha1;
    bool has_succ = false;
    bool succ_case = false;  // false: strip form, true: alpha1∘1∘0^j
    std::uint64_t succ_j = 0;
    int phi = 1;
    std::array<std::optional<std::vector<std::uint64_t>>, 2> depth;  // rows y, y+1
    std::array<std::optional<std::vector<std::uint64_t>>, 3> psi;    // rows y-1, y, y+1
    std::vector<bool> adj;  // bit (b+1)(t+1) + (i-1): edge to (p_i(v), y+b)

    /// N(α): alpha1 of the next row, if any.
    std::optional<BitString> next_alpha() const;
};

struct Label {
    LabelCore core;
    BitString sig;                   // σ_y(x_y(v))
    std::optional<BitString> mu;     // transition code to row y+1
    std::array<BitString, 3> r;      // rows y-1, y, y+1

    BitString serialize(const LabelFormat& fmt) const;
    static Label parse(const BitString& bits, const LabelFormat& fmt);
};

struct LegacyLabel {
    LabelCore core;
    BitString path;                  // σ_y(P_y(v))
    std::optional<BitString> eta;    // transition code of the path to row y+1

    BitString serialize(const LabelFormat& fmt) const;
    static LegacyLabel parse(const BitString& bits, const LabelFormat& fmt);
};

Label make_label(const LabelContext& ctx, Vertex gv);
LegacyLabel make_label_legacy(const LabelContext& ctx, Vertex gv);
std::vector<Label> make_labels(const LabelContext& ctx);
std::vector<LegacyLabel> make_legacy_labels(const LabelContext& ctx);

bool adjacency_test(const Label& a, const Label& b, const LabelFormat& fmt);
bool adjacency_test(const LegacyLabel& a, const LegacyLabel& b, const LabelFormat& fmt);
/// Parses both strings; throws on undecodable input.
bool adjacency_test_bits(const BitString& a, const BitString& b, const LabelFormat& fmt);

/// First pair (u, v) whose test disagrees with G, or distinct vertices
/// sharing a label; nullopt when the labelling is exact.
std::optional<std::string> check_labelling(const Graph& g, const std::vector<Label>& labels,
                                           const LabelFormat& fmt);

/// Induced-universal graph over the distinct labels of a corpus. Only
/// labels in the same or consecutive rows (by α) are tested.
struct UniversalGraph {
    LabelFormat fmt;
    std::vector<BitString> labels;  // sorted, distinct
    Graph graph;
    int index_of(const BitString& label) const;
};

UniversalGraph assemble_universal(const LabelFormat& fmt, const std::vector<std::vector<BitString>>& corpus);

/// Labels of one corpus member with the format they were written in.
struct LabelledMember {
    LabelFormat fmt;
    std::vector<BitString> labels;
};
/// Throws when the members disagree on the format.
UniversalGraph assemble_universal(const std::vector<LabelledMember>& corpus);

/// Labels of one member map injectively onto vertices of U and edges match.
std::optional<std::string> check_induced(const UniversalGraph& u, const Graph& g,
                                         const std::vector<BitString>& labels);

/// Edges among the given label strings (deduplicated) under either scheme.
std::uint64_t count_label_edges(const std::vector<BitString>& labels, const LabelFormat& fmt,
                                bool legacy);

}  // namespace ugraph
