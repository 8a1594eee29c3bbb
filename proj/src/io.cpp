// SPDX-License-Identifier: Apache-2.0
#include "ugraph/io.hpp"

#include <fstream>
#include <sstream>

namespace ugraph {

json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return {{"n", g.size()}, {"edges", edges}};
}

Graph graph_from_json(const json& j) {
    std::vector<Edge> es;
    for (const auto& e : j.at("edges")) es.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return Graph(j.at("n").get<int>(), es);
}

json instance_to_json(const QtInstance& inst) {
    json host = graph_to_json(inst.host.graph);
    host["order"] = inst.host.order;
    std::vector<int> hv, rows;
    for (const auto& c : inst.witness.coords) {
        hv.push_back(static_cast<int>(c[0]));
        rows.push_back(static_cast<int>(c[1]));
    }
    return {{"kind", "qt"}, {"t", inst.t},      {"h", inst.h},   {"seed", inst.seed},
            {"g", graph_to_json(inst.g)}, {"host", host}, {"host_vertex", hv}, {"rows", rows}};
}

QtInstance instance_from_json(const json& j) {
    if (j.value("kind", "") != "qt") throw Error("instance: unsupported kind");
    const int t = j.at("t").get<int>();
    const TTree host = ttree_from_order(graph_from_json(j.at("host")), t,
                                        j.at("host").at("order").get<std::vector<Vertex>>());
    QtInstance inst = make_qt_instance(graph_from_json(j.at("g")), host,
                                       j.at("host_vertex").get<std::vector<Vertex>>(),
                                       j.at("rows").get<std::vector<int>>());
    inst.seed = j.value("seed", std::uint64_t{0});
    return inst;
}

std::vector<json> read_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<json> out;
    std::string line;
    while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(json::parse(line));
    return out;
}

void write_jsonl(const std::string& path, const std::vector<json>& records) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    for (const auto& r : records) out << r.dump() << '\n';
}

std::vector<json> embedding_records(const QtEmbedding& e) {
    std::vector<json> out;
    for (std::size_t v = 0; v < e.image.size(); ++v) {
        const auto& im = e.image[v];
        out.push_back({{"v", v}, {"x", im.u.x.str()}, {"y", im.u.y.str()}, {"z", im.u.z}, {"c", im.colour}});
    }
    return out;
}

namespace {

constexpr char kMagic[4] = {'U', 'L', 'B', 'L'};

void put_u32(std::ostream& out, std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out.put(static_cast<char>((v >> s) & 0xff));
}

std::uint32_t get_u32(std::istream& in) {
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) {
        const int c = in.get();
        if (c == EOF) throw Error("label file: truncated");
        v = (v << 8) | static_cast<std::uint32_t>(c);
    }
    return v;
}

std::uint8_t get_u8(std::istream& in) {
    const int c = in.get();
    if (c == EOF) throw Error("label file: truncated");
    return static_cast<std::uint8_t>(c);
}

}  // namespace

void write_label_file(std::ostream& out, const LabelFile& f) {
    out.write(kMagic, 4);
    out.put(static_cast<char>(LabelFormat::kVersion));
    out.put(static_cast<char>(TransitionCodec::kCodecId));
    out.put(static_cast<char>(f.legacy ? 1 : 0));
    put_u32(out, static_cast<std::uint32_t>(f.fmt.n));
    put_u32(out, static_cast<std::uint32_t>(f.fmt.t));
    put_u32(out, static_cast<std::uint32_t>(f.lambda));
    put_u32(out, static_cast<std::uint32_t>(f.labels.size()));
    for (const auto& l : f.labels) {
        put_u32(out, static_cast<std::uint32_t>(l.size()));
        for (std::size_t i = 0; i < l.size(); i += 8) {
            unsigned byte = 0;
            for (std::size_t k = 0; k < 8; ++k) byte = (byte << 1) | (i + k < l.size() && l[i + k] ? 1u : 0u);
            out.put(static_cast<char>(byte));
        }
    }
}

LabelFile read_label_file(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMagic)) throw Error("label file: bad magic");
    if (get_u8(in) != LabelFormat::kVersion) throw Error("label file: unsupported version");
    if (get_u8(in) != TransitionCodec::kCodecId) throw Error("label file: unknown codec");
    LabelFile f;
    f.legacy = get_u8(in) != 0;
    f.fmt.n = static_cast<int>(get_u32(in));
    f.fmt.t = static_cast<int>(get_u32(in));
    f.lambda = static_cast<int>(get_u32(in));
    const std::uint32_t count = get_u32(in);
    for (std::uint32_t r = 0; r < count; ++r) {
        const std::uint32_t len = get_u32(in);
        BitString l;
        for (std::uint32_t i = 0; i < len; i += 8) {
            const unsigned byte = get_u8(in);
            for (std::uint32_t k = 0; k < 8 && i + k < len; ++k) l.push_back((byte >> (7 - k)) & 1u);
        }
        f.labels.push_back(std::move(l));
    }
    return f;
}

void write_label_file(const std::string& path, const LabelFile& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    write_label_file(out, f);
}

LabelFile read_label_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    return read_label_file(in);
}

}  // namespace ugraph
