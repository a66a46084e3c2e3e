// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "support/gestalt_oracle.hpp"

namespace foodkg::testing {

// Every string of length 0..max_len over the first `alphabet` letters,
// ordered by length, with its packed form for the oracle.
struct SymbolString {
    std::u32string text;
    PackedString packed;
    std::uint32_t distinct = 0;
    // Symbols already appear in first-use order a, b, c, ...
    bool canonical = false;
    // continues[d]: read after a prefix that used d distinct symbols, the new
    // symbols of this string still appear in first-use order.
    std::array<bool, 5> continues{};
};

inline std::uint32_t symbol_at(const PackedString& s, std::uint32_t i) { return (s.code >> (2 * i)) & 3u; }

inline std::vector<SymbolString> all_symbol_strings(std::uint32_t alphabet, std::uint32_t max_len)
{
    std::vector<SymbolString> out;
    for (std::uint32_t len = 0; len <= max_len; ++len) {
        std::uint64_t total = 1;
        for (std::uint32_t i = 0; i < len; ++i)
            total *= alphabet;
        for (std::uint64_t c = 0; c < total; ++c) {
            SymbolString s;
            s.packed.size = len;
            std::uint64_t x = c;
            std::array<bool, 4> seen{};
            for (std::uint32_t i = 0; i < len; ++i) {
                const auto sym = static_cast<std::uint32_t>(x % alphabet);
                x /= alphabet;
                s.packed.code |= sym << (2 * i);
                s.text.push_back(static_cast<char32_t>(U'a' + sym));
                if (!seen[sym]) {
                    seen[sym] = true;
                    ++s.distinct;
                }
            }
            for (std::uint32_t d = 0; d <= alphabet; ++d) {
                std::uint32_t next = d;
                bool ok = true;
                for (std::uint32_t i = 0; i < len && ok; ++i) {
                    const std::uint32_t sym = symbol_at(s.packed, i);
                    if (sym == next)
                        ++next;
                    else if (sym > next)
                        ok = false;
                }
                s.continues[d] = ok;
            }
            s.canonical = s.continues[0];
            out.push_back(std::move(s));
        }
    }
    return out;
}

// Symbols of x followed by y, relabelled to first-use order.
// Positions past the end hold 0xff.
using SymbolSequence = std::array<std::uint8_t, 32>;

inline SymbolSequence canonical_concat(const PackedString& x, const PackedString& y)
{
    std::array<std::uint8_t, 4> label{4, 4, 4, 4};
    std::uint8_t next = 0;
    SymbolSequence out;
    out.fill(0xff);
    std::size_t pos = 0;
    const auto push = [&](std::uint32_t sym) {
        if (label[sym] == 4)
            label[sym] = next++;
        out[pos++] = label[sym];
    };
    for (std::uint32_t i = 0; i < x.size; ++i)
        push(symbol_at(x, i));
    for (std::uint32_t i = 0; i < y.size; ++i)
        push(symbol_at(y, i));
    return out;
}

// The representative of the unordered pair {x, y} under renaming of symbols:
// the shorter string first (the smaller relabelled concatenation on equal
// lengths), relabelled to first-use order. Returned as the concatenation.
inline SymbolSequence pair_representative(const PackedString& x, const PackedString& y)
{
    if (x.size != y.size)
        return x.size < y.size ? canonical_concat(x, y) : canonical_concat(y, x);
    return std::min(canonical_concat(x, y), canonical_concat(y, x));
}

// Calls fn(a, b) once for the representative of every unordered pair of
// strings in `strings` (which must come from all_symbol_strings).
template <typename Fn>
void for_each_pair_representative(const std::vector<SymbolString>& strings, Fn&& fn)
{
    std::size_t length_start = 0;
    for (std::size_t i = 0; i < strings.size(); ++i) {
        const SymbolString& a = strings[i];
        if (i > 0 && strings[i - 1].packed.size != a.packed.size)
            length_start = i;
        if (!a.canonical)
            continue;
        for (std::size_t j = length_start; j < strings.size(); ++j) {
            const SymbolString& b = strings[j];
            if (!b.continues[a.distinct])
                continue;
            if (b.packed.size == a.packed.size &&
                canonical_concat(b.packed, a.packed) < canonical_concat(a.packed, b.packed))
                continue;
            fn(a, b);
        }
    }
}

} // namespace foodkg::testing
