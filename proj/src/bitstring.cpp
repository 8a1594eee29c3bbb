// SPDX-License-Identifier: Apache-2.0
#include "ugraph/bitstring.hpp"

#include <algorithm>
#include <bit>

namespace ugraph {

BitString BitString::parse(std::string_view text) {
    BitString out;
    if (text == "ε") return out;
    for (char c : text) {
        if (c != '0' && c != '1')
            throw Error("bitstring: invalid character '" + std::string(1, c) + "'");
    }
    out.bits_.assign(text.begin(), text.end());
    return out;
}

BitString BitString::zeros(std::size_t count) {
    BitString out;
    out.bits_.assign(count, '0');
    return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
    BitString out;
    out.append_uint(value, width);
    return out;
}

void BitString::append_uint(std::uint64_t value, std::size_t width) {
    if (width < 64 && (value >> width) != 0)
        throw Error("bitstring: value " + std::to_string(value) + " does not fit in " +
                    std::to_string(width) + " bits");
    for (std::size_t i = width; i-- > 0;)
        push_back(i < 64 && ((value >> i) & 1u));
}

BitString BitString::prefix(std::size_t len) const {
    if (len > size()) throw Error("bitstring: prefix longer than string");
    BitString out;
    out.bits_ = bits_.substr(0, len);
    return out;
}

BitString BitString::suffix_from(std::size_t pos) const {
    if (pos > size()) throw Error("bitstring: suffix start past end");
    BitString out;
    out.bits_ = bits_.substr(pos);
    return out;
}

bool BitString::is_prefix_of(const BitString& other) const noexcept {
    return size() <= other.size() && std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

bool BitString::compatible(const BitString& other) const noexcept {
    return is_prefix_of(other) || other.is_prefix_of(*this);
}

std::size_t BitString::common_prefix_length(const BitString& other) const noexcept {
    auto [a, b] = std::mismatch(bits_.begin(), bits_.end(), other.bits_.begin(), other.bits_.end());
    return static_cast<std::size_t>(a - bits_.begin());
}

std::uint64_t BitString::read_uint(std::size_t pos, std::size_t width) const {
    if (width > 64 || pos + width > size()) throw Error("bitstring: read past end");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) v = (v << 1) | ((*this)[pos + i] ? 1u : 0u);
    return v;
}

BitString operator+(BitString a, const BitString& b) {
    a.append(b);
    return a;
}

bool BitReader::read_bit() {
    if (pos_ >= bits_.size()) throw Error("label: truncated bitstring");
    return bits_[pos_++];
}

std::uint64_t BitReader::read_uint(std::size_t width) {
    if (pos_ + width > bits_.size()) throw Error("label: truncated bitstring");
    auto v = bits_.read_uint(pos_, width);
    pos_ += width;
    return v;
}

BitString BitReader::read_bits(std::size_t count) {
    if (pos_ + count > bits_.size()) throw Error("label: truncated bitstring");
    BitString out = bits_.suffix_from(pos_).prefix(count);
    pos_ += count;
    return out;
}

std::size_t bits_for(std::uint64_t max_value) noexcept {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::bit_width(max_value)));
}

}  // namespace ugraph
