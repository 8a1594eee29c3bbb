// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ugraph/decomp.hpp"
#include "ugraph/graph.hpp"
#include "ugraph/induced.hpp"
#include "ugraph/unigraph.hpp"

namespace ugraph {

using json = nlohmann::json;

json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

/// {"kind":"qt", t, h, seed, g, host {n, edges, order}, host_vertex, rows}.
json instance_to_json(const QtInstance& inst);
QtInstance instance_from_json(const json& j);

std::vector<json> read_jsonl(const std::string& path);
void write_jsonl(const std::string& path, const std::vector<json>& records);

/// One record per vertex: {"v", "x", "y", "z", "c"}.
std::vector<json> embedding_records(const QtEmbedding& e);

/// Binary label file: "ULBL", version, codec id, legacy flag, n, t, λ,
/// record count, then per record a bit length and the packed bits.
struct LabelFile {
    LabelFormat fmt;
    int lambda = 0;
    bool legacy = false;
    std::vector<BitString> labels;
};

void write_label_file(const std::string& path, const LabelFile& f);
LabelFile read_label_file(const std::string& path);
void write_label_file(std::ostream& out, const LabelFile& f);
LabelFile read_label_file(std::istream& in);

}  // namespace ugraph
