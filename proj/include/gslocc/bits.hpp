// Copyright 2026 The gslocc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "gslocc/error.hpp"

namespace gslocc {

// Bit strings over qubit sites: bit k of a Bits value refers to site k.
// This is independent of the dense basis-index convention (see state.hpp),
// where site 0 is the most significant index bit.
using Bits = std::uint64_t;

constexpr int kMaxSites = 64;

inline Bits all_sites_mask(int n) {
    return n >= 64 ? ~Bits{0} : ((Bits{1} << n) - 1);
}

inline bool get_bit(Bits b, int k) { return (b >> k) & 1u; }

inline int popcount(Bits b) { return std::popcount(b); }

inline bool parity(Bits b) { return std::popcount(b) & 1; }

// Renders site 0 as the leftmost character, matching the qubit order used
// in operator strings like "ZXZ".
inline std::string bits_to_string(Bits b, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int k = 0; k < n; ++k)
        if (get_bit(b, k)) s[static_cast<std::size_t>(k)] = '1';
    return s;
}

inline Bits bits_from_string(const std::string& s) {
    if (s.empty() || s.size() > kMaxSites)
        throw ParseError("bit string must have 1..64 characters, got \"" + s + "\"");
    Bits b = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == '1')
            b |= Bits{1} << k;
        else if (s[k] != '0')
            throw ParseError("bit string may contain only 0/1, got \"" + s + "\"");
    }
    return b;
}

// Advances mask to the next larger value with the same popcount (Gosper).
// Returns false once the next mask no longer fits below 2^n.
inline bool next_combination(Bits& mask, int n) {
    if (mask == 0) return false;
    Bits c = mask & (~mask + 1);
    Bits r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
    return n >= 64 || mask < (Bits{1} << n);
}

inline std::vector<int> bits_to_sites(Bits b) {
    std::vector<int> sites;
    while (b) {
        sites.push_back(std::countr_zero(b));
        b &= b - 1;
    }
    return sites;
}

}  // namespace gslocc
