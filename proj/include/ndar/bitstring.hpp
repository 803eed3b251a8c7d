// Copyright 2026 The NDAR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Bit strings and bit-flip gauge masks.
 *
 * Bit i of a BitString is qubit / spin i. The textual form writes bit 0
 * first, so "100" has bit 0 set. Ordering is lexicographic in index order.
 */

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ndar/errors.hpp"

namespace ndar {

class BitString {
  public:
    BitString() = default;
    explicit BitString(std::size_t n) : bits_(n, 0) {}
    explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        for (auto &b : bits_) {
            detail::require(b <= 1, "BitString: values must be 0 or 1");
        }
    }

    static BitString zeros(std::size_t n) { return BitString(n); }
    static BitString ones(std::size_t n) { return BitString(std::vector<std::uint8_t>(n, 1)); }

    /// Parses "0101"; bit 0 is the first character.
    static BitString from_string(std::string_view text) {
        std::vector<std::uint8_t> bits;
        bits.reserve(text.size());
        for (char c : text) {
            detail::require(c == '0' || c == '1', "BitString: expected only '0' and '1'");
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        return BitString(std::move(bits));
    }

    /// Bit i is bit i of `index` (little-endian decomposition).
    static BitString from_index(std::uint64_t index, std::size_t n) {
        BitString out(n);
        for (std::size_t i = 0; i < n; ++i) {
            out.bits_[i] = static_cast<std::uint8_t>((index >> i) & 1U);
        }
        return out;
    }

    std::uint64_t to_index() const {
        detail::require(bits_.size() <= 64, "BitString: too long for an integer index");
        std::uint64_t index = 0;
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            index |= static_cast<std::uint64_t>(bits_[i]) << i;
        }
        return index;
    }

    std::string to_string() const {
        std::string s(bits_.size(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            s[i] = static_cast<char>('0' + bits_[i]);
        }
        return s;
    }

    std::size_t size() const noexcept { return bits_.size(); }
    std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }
    void set(std::size_t i, bool value) noexcept { bits_[i] = value ? 1 : 0; }
    void flip(std::size_t i) noexcept { bits_[i] ^= 1U; }

    const std::vector<std::uint8_t> &bits() const noexcept { return bits_; }

    /// Indices of the 1-bits, ascending.
    std::vector<std::uint32_t> support() const {
        std::vector<std::uint32_t> out;
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            if (bits_[i] != 0) {
                out.push_back(static_cast<std::uint32_t>(i));
            }
        }
        return out;
    }

    BitString complement() const {
        BitString out(*this);
        for (auto &b : out.bits_) {
            b ^= 1U;
        }
        return out;
    }

    friend bool operator==(const BitString &, const BitString &) = default;
    friend auto operator<=>(const BitString &a, const BitString &b) { return a.bits_ <=> b.bits_; }

  private:
    std::vector<std::uint8_t> bits_;
};

inline std::size_t hamming_weight(const BitString &x) {
    return static_cast<std::size_t>(std::count(x.bits().begin(), x.bits().end(), std::uint8_t{1}));
}

inline std::size_t hamming_distance(const BitString &a, const BitString &b) {
    detail::require(a.size() == b.size(), "hamming_distance: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += static_cast<std::size_t>(a[i] != b[i]);
    }
    return d;
}

/// A bit-flip operator P_y at the classical level. Masks form a group under
/// XOR with the all-zeros mask as identity.
class GaugeMask {
  public:
    GaugeMask() = default;
    explicit GaugeMask(BitString bits) : bits_(std::move(bits)) {}

    static GaugeMask identity(std::size_t n) { return GaugeMask(BitString::zeros(n)); }

    const BitString &bits() const noexcept { return bits_; }
    std::size_t size() const noexcept { return bits_.size(); }
    std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }

    friend bool operator==(const GaugeMask &, const GaugeMask &) = default;

  private:
    BitString bits_;
};

/// x XOR y; the classical action of P_y on a basis state.
inline BitString apply_mask(const GaugeMask &y, const BitString &x) {
    detail::require(y.size() == x.size(), "apply_mask: length mismatch");
    std::vector<std::uint8_t> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(x[i] ^ y[i]);
    }
    return BitString(std::move(out));
}

inline GaugeMask compose_masks(const GaugeMask &a, const GaugeMask &b) {
    detail::require(a.size() == b.size(), "compose_masks: length mismatch");
    return GaugeMask(apply_mask(a, b.bits()));
}

} // namespace ndar
