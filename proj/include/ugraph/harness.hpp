// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "ugraph/closure.hpp"
#include "ugraph/decomp.hpp"
#include "ugraph/induced.hpp"
#include "ugraph/product.hpp"

namespace ugraph {

using Rng = std::mt19937_64;

/// The adversarial tree for the legacy labels: spine β-u-v-w-α with
/// leaves on α and β, restricted to the vertex set H_{i,j}, together with
/// its intervals and the prescribed search tree T_1.
struct BadExample {
    int n = 0, i = 0, j = 0;
    Graph g;
    TTree host;          // construction order: preorder from w
    IntervalRep rep;
    Bst tree;            // T_1
    Vertex beta = 0, u = 1, v = 2, w = 3, alpha = 4;
    std::vector<int> leaf_index;  // α_k -> k, β_k -> k, spine -> 0
};

/// n must be a multiple of 12 and 1 ≤ i, j ≤ n/12. w is placed at α_p and
/// u at β_p with p = 2n/12.
BadExample gen_bad_example(int n, int i, int j);
/// 5 + n/3.
int bad_example_size(int n);
LabelInput bad_example_input(const BadExample& ex);

/// Edges between the labels of v (one per i) and the labels of u (one per
/// j) across the whole family, for the legacy and the Fixup scheme.
struct BadExampleCounts {
    int n = 0;
    std::size_t legacy_left = 0, legacy_right = 0, new_left = 0, new_right = 0;
    std::uint64_t legacy_edges = 0, new_edges = 0;
};
BadExampleCounts bad_example_counts(int n);

/// A graph together with a witness into C_d ⊠ P_h.
struct ClosureInstance {
    int d = 0;
    Graph g;
    ProductWitness witness;  // factors {C_d, P_h}
};

/// n distinct random cells of C_d ⊠ P_h with d = ⌈log2 n⌉ and h random in
/// 1..max_rows; each product edge between chosen cells kept with
/// probability `density`.
ClosureInstance random_closure_instance(int n, int max_rows, double density, Rng& rng);

/// Random interval representation with integer endpoints in 1..span.
IntervalRep random_intervals(int n, int span, Rng& rng);

struct CorpusConfig {
    int count = 100;
    int t = 2;
    int n_min = 4;
    int n_max = 64;
    std::uint64_t seed = 1;
};

struct Corpus {
    CorpusConfig config;
    std::vector<QtInstance> instances;
};

/// Every instance is checked against its witness before it is returned.
Corpus generate_corpus(const CorpusConfig& cfg);

/// Label format shared by every member of a corpus.
LabelFormat corpus_format(const Corpus& c);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct Report {
    std::string suite;
    nlohmann::json config;
    std::vector<Check> checks;
    nlohmann::json measurements = nlohmann::json::object();
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    double seconds = 0;

    bool ok() const;
    void check(std::string name, bool pass, std::string detail = {});
    nlohmann::json to_json() const;
    std::string to_csv() const;
};

struct SuiteConfig {
    int n = 64;
    int t = 2;
    int count = 0;  // 0: suite default
    int lambda = -1;
    std::uint64_t seed = 1;
    nlohmann::json to_json() const;
};

std::vector<std::string> suite_names();
/// Throws on an unknown suite name.
Report run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace ugraph
