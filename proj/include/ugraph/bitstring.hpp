// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ugraph {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A finite 0/1 sequence. Carries tree signatures, transition codes and
/// label fields. The empty string is a valid value.
class BitString {
public:
    BitString() = default;

    /// Parses ASCII '0'/'1'. Throws on any other character.
    static BitString parse(std::string_view text);
    static BitString zeros(std::size_t count);
    /// `width` low-order bits of `value`, most significant first.
    static BitString from_uint(std::uint64_t value, std::size_t width);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    bool operator[](std::size_t i) const { return bits_[i] == '1'; }

    void push_back(bool bit) { bits_.push_back(bit ? '1' : '0'); }
    void pop_back() { bits_.pop_back(); }
    void append(const BitString& other) { bits_ += other.bits_; }
    void append_uint(std::uint64_t value, std::size_t width);

    /// The first `len` bits. Throws if `len > size()`.
    BitString prefix(std::size_t len) const;
    /// Bits from `pos` to the end.
    BitString suffix_from(std::size_t pos) const;

    /// x ⪯ y: this string is a prefix of `other` (reflexive).
    bool is_prefix_of(const BitString& other) const noexcept;
    /// x ⋄ y: one is a prefix of the other.
    bool compatible(const BitString& other) const noexcept;
    std::size_t common_prefix_length(const BitString& other) const noexcept;

    /// Reads `width` bits starting at `pos` as an unsigned integer.
    std::uint64_t read_uint(std::size_t pos, std::size_t width) const;

    const std::string& str() const noexcept { return bits_; }
    /// Like str(), but renders the empty string as "ε".
    std::string display() const { return bits_.empty() ? "ε" : bits_; }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString& a, const BitString& b) {
        return a.bits_ <=> b.bits_;
    }

private:
    std::string bits_;
};

BitString operator+(BitString a, const BitString& b);

/// Sequential reader over a BitString, used by label and code decoders.
class BitReader {
public:
    explicit BitReader(const BitString& bits) : bits_(bits) {}
    bool read_bit();
    std::uint64_t read_uint(std::size_t width);
    BitString read_bits(std::size_t count);
    std::size_t remaining() const noexcept { return bits_.size() - pos_; }
    std::size_t position() const noexcept { return pos_; }

private:
    const BitString& bits_;
    std::size_t pos_ = 0;
};

/// Number of bits needed to write every value in [0, max_value]; at least 1.
std::size_t bits_for(std::uint64_t max_value) noexcept;

}  // namespace ugraph

template <>
struct std::hash<ugraph::BitString> {
    std::size_t operator()(const ugraph::BitString& b) const noexcept {
        return std::hash<std::string>{}(b.str());
    }
};
