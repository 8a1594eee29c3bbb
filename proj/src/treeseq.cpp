// SPDX-License-Identifier: Apache-2.0
#include "ugraph/treeseq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ugraph {

TransitionCodec::TransitionCodec(int height_cap)
    : height_cap_(height_cap), lcp_bits_(bits_for(static_cast<std::uint64_t>(std::max(0, height_cap)))) {
    if (height_cap < 0) throw Error("codec: negative height cap");
}

BitString TransitionCodec::encode(const BitString& before, const BitString& after) const {
    const auto k = before.common_prefix_length(after);
    if (k > static_cast<std::size_t>(height_cap_))
        throw Error("codec: common prefix exceeds the height cap");
    BitString code = BitString::from_uint(k, lcp_bits_);
    code.append(after.suffix_from(k));
    return code;
}

std::optional<BitString> TransitionCodec::decode(const BitString& before,
                                                 const BitString& code) const {
    if (code.size() < lcp_bits_) return std::nullopt;
    const auto k = code.read_uint(0, lcp_bits_);
    if (k > before.size()) return std::nullopt;
    return before.prefix(k) + code.suffix_from(lcp_bits_);
}

std::size_t TransitionCodec::code_length(const BitString& before, const BitString& after) const {
    return lcp_bits_ + after.size() - before.common_prefix_length(after);
}

std::size_t TreeSequence::total_row_size() const noexcept {
    std::size_t s = 0;
    for (const auto& r : rows) s += r.size();
    return s;
}

std::size_t TreeSequence::total_tree_size() const noexcept {
    std::size_t s = 0;
    for (const auto& t : trees) s += t.size();
    return s;
}

int TreeSequence::max_height() const noexcept {
    int h = 0;
    for (const auto& t : trees) h = std::max(h, t.height());
    return h;
}

int height_slack(int height, std::size_t size) {
    int slack = 0;
    while (height - slack > 0 && (std::uint64_t{1} << (height - slack)) > size) ++slack;
    return slack;
}

TreeSequence build_tree_sequence(std::vector<std::vector<Key>> rows) {
    TreeSequence ts;
    for (auto& r : rows) {
        if (r.empty()) throw Error("tree sequence: empty row");
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
    }
    ts.rows = std::move(rows);
    const auto h = ts.rows.size();
    ts.trees.reserve(h);
    for (std::size_t y = 0; y < h; ++y) {
        std::vector<Key> keys = ts.rows[y];
        if (y + 1 < h) {
            std::vector<Key> merged;
            std::set_union(keys.begin(), keys.end(), ts.rows[y + 1].begin(), ts.rows[y + 1].end(),
                           std::back_inserter(merged));
            keys = std::move(merged);
        }
        ts.trees.push_back(build_balanced_bst(keys));
        ts.lambda_height =
            std::max(ts.lambda_height, height_slack(ts.trees.back().height(), keys.size()));
    }
    return ts;
}

std::optional<std::string> check_tree_sequence(const TreeSequence& ts) {
    const auto h = ts.rows.size();
    if (ts.trees.size() != h) return "tree count differs from row count";
    for (std::size_t y = 0; y < h; ++y) {
        for (Key k : ts.rows[y])
            if (!ts.trees[y].contains(k)) return "row " + std::to_string(y + 1) + " key missing from its tree";
        if (y + 1 < h)
            for (Key k : ts.rows[y + 1])
                if (!ts.trees[y].contains(k))
                    return "row " + std::to_string(y + 2) + " key missing from tree " + std::to_string(y + 1);
        if (ts.trees[y].height() - ts.lambda_height > 0 &&
            (std::uint64_t{1} << (ts.trees[y].height() - ts.lambda_height)) > ts.trees[y].size())
            return "tree " + std::to_string(y + 1) + " exceeds the height slack";
    }
    if (ts.total_tree_size() > 4 * ts.total_row_size()) return "total tree size exceeds 4n";
    return std::nullopt;
}

BitString transition_code(const TreeSequence& ts, const TransitionCodec& codec, std::size_t y,
                          Key z) {
    if (y + 1 >= ts.trees.size()) throw Error("transition code: no next tree");
    const auto& a = ts.trees[y];
    const auto& b = ts.trees[y + 1];
    if (!a.contains(z) || !b.contains(z))
        throw Error("transition code: key " + std::to_string(z) + " not shared by both trees");
    return codec.encode(a.signature(z), b.signature(z));
}

int lambda_default(std::uint64_t n, double c) {
    if (n < 2) throw Error("lambda_default: n must be at least 2");
    const double lg = std::log2(static_cast<double>(n));
    const double lglg = std::max(1.0, std::log2(lg));
    return static_cast<int>(std::ceil(c * std::sqrt(lg * lglg) - 1e-12));
}

}  // namespace ugraph
