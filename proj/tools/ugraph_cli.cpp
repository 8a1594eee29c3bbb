// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ugraph/compressor.hpp"
#include "ugraph/harness.hpp"
#include "ugraph/io.hpp"
#include "ugraph/unigraph.hpp"

using namespace ugraph;

namespace {

struct AssertionFailure : Error {
    using Error::Error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw AssertionFailure(what);
}

void emit(const json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << '\n';
}

QtInstance load_instance(const std::string& path, std::size_t index) {
    const auto records = read_jsonl(path);
    if (index >= records.size()) throw Error("instance index out of range");
    return instance_from_json(records[index]);
}

UgParams params(std::uint64_t n, int lambda) {
    return lambda >= 0 ? UgParams::make(n, lambda) : UgParams::with_default_lambda(n);
}

std::vector<std::string> label_files(const std::string& path) {
    namespace fs = std::filesystem;
    std::vector<std::string> out;
    if (fs::is_directory(path)) {
        for (const auto& e : fs::directory_iterator(path))
            if (e.path().extension() == ".bin") out.push_back(e.path().string());
        std::sort(out.begin(), out.end());
    } else {
        out.push_back(path);
    }
    if (out.empty()) throw Error("no label files in " + path);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Universal graphs for strong products of bounded-treewidth graphs and paths"};
    app.require_subcommand(1);

    std::string kind = "qt", out, instance, embedding, labels, corpus, pairs = "all", csv;
    int n = 32, t = 2, h = 4, count = 1, lambda = -1, i = 1, j = 1, k = 2, dsat = 0, fmt_n = 0;
    std::uint64_t seed = 1;
    std::size_t index = 0;
    bool legacy = false;

    auto* gen = app.add_subcommand("gen", "generate instances as JSONL");
    gen->add_option("--kind", kind, "qt or bad")->check(CLI::IsMember({"qt", "bad"}));
    gen->add_option("--n", n);
    gen->add_option("--t", t);
    gen->add_option("--rows", h, "rows of the path factor");
    gen->add_option("--i", i);
    gen->add_option("--j", j);
    gen->add_option("--count", count);
    gen->add_option("--seed", seed);
    gen->add_option("--out", out)->required();

    auto* emb = app.add_subcommand("embed", "embed a Q_t instance into G_n ⊠ K_ω");
    emb->add_option("--instance", instance)->required();
    emb->add_option("--index", index);
    emb->add_option("--lambda", lambda);
    emb->add_option("--out", out)->required();

    auto* ver = app.add_subcommand("verify", "check an embedding edge by edge");
    ver->add_option("--instance", instance)->required();
    ver->add_option("--index", index);
    ver->add_option("--embedding", embedding)->required();
    ver->add_option("--lambda", lambda);

    auto* bug = app.add_subcommand("build-ug", "materialize G_n");
    bug->add_option("--n", n);
    bug->add_option("--lambda", lambda);
    bug->add_option("--out", out)->required();

    auto* cnt = app.add_subcommand("count", "vertex and edge counts of G_n with their bounds");
    cnt->add_option("--n", n);
    cnt->add_option("--lambda", lambda);

    auto* cmp = app.add_subcommand("compress", "compress a materialized G_n through a saturator");
    cmp->add_option("--n", n);
    cmp->add_option("--lambda", lambda);
    cmp->add_option("--k", k);
    cmp->add_option("--dsat", dsat);
    cmp->add_option("--seed", seed);

    auto* lab = app.add_subcommand("label", "label a Q_t instance");
    lab->add_option("--instance", instance)->required();
    lab->add_option("--index", index);
    lab->add_option("--format-n", fmt_n, "n of the label format (default: instance size)");
    lab->add_flag("--legacy", legacy);
    lab->add_option("--out", out)->required();

    auto* adj = app.add_subcommand("test-adjacency", "evaluate the adjacency tester on label pairs");
    adj->add_option("--labels", labels)->required();
    adj->add_option("--pairs", pairs)->check(CLI::IsMember({"all"}));
    adj->add_option("--instance", instance, "compare against this instance's edges");
    adj->add_option("--index", index);

    auto* asm_ = app.add_subcommand("assemble", "assemble U from label files");
    asm_->add_option("--corpus", corpus)->required();
    asm_->add_option("--out", out)->required();

    std::string suite, json_out;
    auto* run = app.add_subcommand("run-suite", "run a named verification suite");
    run->add_option("suite", suite)->required();
    run->add_option("--n", n);
    run->add_option("--t", t);
    run->add_option("--count", count);
    run->add_option("--lambda", lambda);
    run->add_option("--seed", seed);
    run->add_option("--json", json_out);
    run->add_option("--csv", csv);

    std::string report_in;
    auto* rep = app.add_subcommand("report", "summarize a JSON report");
    rep->add_option("report", report_in)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            std::vector<json> recs;
            if (kind == "bad") {
                const BadExample ex = gen_bad_example(n, i, j);
                recs.push_back({{"kind", "bad"}, {"n", n}, {"i", i}, {"j", j}, {"g", graph_to_json(ex.g)}});
            } else {
                CorpusConfig cc;
                cc.count = count;
                cc.t = t;
                cc.n_min = cc.n_max = n;
                cc.seed = seed;
                Rng rng(seed);
                for (int c = 0; c < count; ++c) recs.push_back(instance_to_json(generate_qt_instance(t, n, h, rng())));
            }
            write_jsonl(out, recs);
        } else if (*emb) {
            const QtInstance inst = load_instance(instance, index);
            const QtEmbedding e = embed_qt(params(inst.g.size(), lambda), inst);
            require(!verify_qt_embedding(e, inst.g), "embedding failed verification");
            write_jsonl(out, embedding_records(e));
            std::cout << json{{"n", e.params.n}, {"d", e.params.d}, {"lambda", e.params.lambda},
                              {"omega", e.omega}, {"pathwidth", e.pathwidth}}.dump() << '\n';
        } else if (*ver) {
            const QtInstance inst = load_instance(instance, index);
            QtEmbedding e;
            e.params = params(inst.g.size(), lambda);
            for (const auto& r : read_jsonl(embedding)) {
                QtImage im{{BitString::parse(r.at("x").get<std::string>()), BitString::parse(r.at("y").get<std::string>()),
                            r.at("z").get<int>()},
                           r.at("c").get<int>()};
                e.image.push_back(im);
                e.omega = std::max(e.omega, im.colour);
            }
            const auto err = verify_qt_embedding(e, inst.g);
            std::cout << (err ? "FAIL: " + *err : std::string("ok")) << '\n';
            require(!err, "verification failed");
        } else if (*bug) {
            const MaterializedUg mu = materialize(params(n, lambda));
            std::vector<json> recs;
            for (const auto& v : mu.vertices) recs.push_back({{"x", v.x.str()}, {"y", v.y.str()}, {"z", v.z}});
            json edges = json::array();
            for (auto [a, b] : mu.graph.edges()) edges.push_back({a, b});
            recs.push_back({{"edges", edges}});
            write_jsonl(out, recs);
        } else if (*cnt) {
            const UgParams p = params(n, lambda);
            const auto v = vertex_count(p);
            const auto e = count_edges(p);
            emit({{"n", n}, {"d", p.d}, {"lambda", p.lambda}, {"vertices", v},
                  {"vertex_bound", static_cast<double>(p.vertex_bound())}, {"edges", e},
                  {"edge_bound", static_cast<double>(p.edge_bound())}},
                 "-");
            require(v <= p.vertex_bound() && e <= p.edge_bound(), "size bound violated");
        } else if (*cmp) {
            const MaterializedUg mu = materialize(params(n, lambda));
            const Saturator s = build_saturator(mu.graph.size(), k, 1.0, seed, dsat);
            const Graph hn = compress(mu.graph, s);
            const SaturationReport sr = verify_saturation(s, n);
            emit({{"gU_vertices", mu.graph.size()}, {"gU_edges", mu.graph.edge_count()}, {"k", s.k}, {"d_sat", s.d_sat},
                  {"H_vertices", hn.size()}, {"H_edges", hn.edge_count()}, {"hall_ok", sr.ok},
                  {"hall_exhaustive", sr.exhaustive}, {"sets_checked", sr.sets_checked}},
                 "-");
            require(hn.edge_count() <= static_cast<std::uint64_t>(s.d_sat) * s.d_sat * mu.graph.edge_count(),
                    "compressed edge count above d_sat²|E|");
        } else if (*lab) {
            const QtInstance inst = load_instance(instance, index);
            LabelFile f;
            f.fmt = {fmt_n > 0 ? fmt_n : std::max(inst.g.size(), inst.host.size()), inst.t};
            f.legacy = legacy;
            const LabelContext ctx = build_context(label_input(inst), f.fmt);
            if (legacy)
                for (const auto& l : make_legacy_labels(ctx)) f.labels.push_back(l.serialize(f.fmt));
            else
                for (const auto& l : make_labels(ctx)) f.labels.push_back(l.serialize(f.fmt));
            write_label_file(out, f);
            std::size_t max_len = 0;
            for (const auto& l : f.labels) max_len = std::max(max_len, l.size());
            std::cout << json{{"labels", f.labels.size()}, {"max_bits", max_len}, {"fixup_moves", ctx.fixup_moves}}.dump()
                      << '\n';
        } else if (*adj) {
            const LabelFile f = read_label_file(labels);
            std::optional<QtInstance> inst;
            if (!instance.empty()) inst = load_instance(instance, index);
            std::uint64_t edges = 0, mismatches = 0;
            const int m = static_cast<int>(f.labels.size());
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b) {
                    const bool e = f.legacy ? adjacency_test(LegacyLabel::parse(f.labels[a], f.fmt),
                                                             LegacyLabel::parse(f.labels[b], f.fmt), f.fmt)
                                            : adjacency_test_bits(f.labels[a], f.labels[b], f.fmt);
                    edges += e;
                    if (inst && e != inst->g.has_edge(a, b)) ++mismatches;
                }
            json j{{"labels", m}, {"edges", edges}};
            if (inst) j["mismatches"] = mismatches;
            emit(j, "-");
            require(mismatches == 0, "adjacency tester disagrees with the instance");
        } else if (*asm_) {
            std::vector<LabelledMember> members;
            for (const auto& path : label_files(corpus)) {
                LabelFile f = read_label_file(path);
                if (f.legacy) throw Error("assemble: legacy label files are not supported");
                members.push_back({f.fmt, std::move(f.labels)});
            }
            const UniversalGraph u = assemble_universal(members);
            std::vector<json> recs;
            for (const auto& l : u.labels) recs.push_back({{"label", l.str()}});
            json edges = json::array();
            for (auto [a, b] : u.graph.edges()) edges.push_back({a, b});
            recs.push_back({{"edges", edges}});
            write_jsonl(out, recs);
            std::cout << json{{"vertices", u.graph.size()}, {"edges", u.graph.edge_count()}}.dump() << '\n';
        } else if (*run) {
            SuiteConfig cfg;
            cfg.n = n, cfg.t = t, cfg.lambda = lambda, cfg.seed = seed;
            cfg.count = run->count("--count") ? count : 0;
            const Report r = run_suite(suite, cfg);
            if (!json_out.empty()) emit(r.to_json(), json_out);
            if (!csv.empty()) {
                std::ofstream c(csv);
                c << r.to_csv();
            }
            for (const auto& c : r.checks)
                std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")")
                          << '\n';
            if (!r.csv_rows.empty() && csv.empty()) std::cout << r.to_csv();
            return r.ok() ? 0 : 1;
        } else if (*rep) {
            std::ifstream in(report_in);
            if (!in) throw Error("cannot open " + report_in);
            const json r = json::parse(in);
            std::cout << r.at("suite").get<std::string>() << ": " << (r.at("ok").get<bool>() ? "pass" : "FAIL") << " in "
                      << r.at("seconds").get<double>() << " s\n";
            for (const auto& c : r.at("checks"))
                std::cout << "  " << (c.at("pass").get<bool>() ? "PASS " : "FAIL ") << c.at("name").get<std::string>()
                          << '\n';
            return r.at("ok").get<bool>() ? 0 : 1;
        }
    } catch (const AssertionFailure& e) {
        std::cerr << "assertion failed: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
