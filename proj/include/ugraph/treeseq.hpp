// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ugraph/bst.hpp"

namespace ugraph {

/// Transition codec: maps the signature of a key in one tree to its
/// signature in the next. A code is ⟨k in `lcp_bits()` bits⟩ ∘ tail and
/// decodes to before[0:k] ∘ tail. `height_cap` bounds every signature
/// length the codec must address, which fixes the width of the k field.
class TransitionCodec {
public:
    static constexpr std::uint8_t kCodecId = 1;

    explicit TransitionCodec(int height_cap);

    int height_cap() const noexcept { return height_cap_; }
    std::size_t lcp_bits() const noexcept { return lcp_bits_; }

    BitString encode(const BitString& before, const BitString& after) const;
    /// B(before, code). nullopt when the code is malformed or refers past
    /// the end of `before`.
    std::optional<BitString> decode(const BitString& before, const BitString& code) const;
    /// Length of encode(before, after) without building it.
    std::size_t code_length(const BitString& before, const BitString& after) const;

    friend bool operator==(const TransitionCodec&, const TransitionCodec&) = default;

private:
    int height_cap_;
    std::size_t lcp_bits_;
};

/// T_1..T_h over row sets S_1..S_h, with T_y built over S_y ∪ S_{y+1}
/// (T_h over S_h) using unit weights.
struct TreeSequence {
    std::vector<std::vector<Key>> rows;
    std::vector<Bst> trees;
    /// Smallest L ≥ 0 with h(T_y) ≤ log2|V(T_y)| + L for every y.
    int lambda_height = 0;

    std::size_t row_count() const noexcept { return rows.size(); }
    std::size_t total_row_size() const noexcept;
    std::size_t total_tree_size() const noexcept;
    int max_height() const noexcept;
};

TreeSequence build_tree_sequence(std::vector<std::vector<Key>> rows);

/// Checks containment, the 4n total-size bound and the height slack; returns
/// a description of the first violation, or nullopt.
std::optional<std::string> check_tree_sequence(const TreeSequence& ts);

/// ν_y(z): code taking σ_{T_y}(z) to σ_{T_{y+1}}(z). `y` is 0-based.
BitString transition_code(const TreeSequence& ts, const TransitionCodec& codec, std::size_t y,
                          Key z);

/// ⌈c·sqrt(log2 n · max(1, log2 log2 n))⌉.
int lambda_default(std::uint64_t n, double c = 1.0);

/// Smallest L ≥ 0 such that 2^(height - L) ≤ size.
int height_slack(int height, std::size_t size);

}  // namespace ugraph
