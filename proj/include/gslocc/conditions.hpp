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

#include <cstdint>
#include <string>
#include <vector>

#include "gslocc/graph.hpp"

namespace gslocc {

enum class Rhs : std::uint8_t { Zero, DetS };
enum class Category : std::uint8_t { I, II, III };

inline const char* category_name(Category c) {
    switch (c) {
        case Category::I: return "I";
        case Category::II: return "II";
        default: return "III";
    }
}

// One equivalence constraint, indexed by a stabilizer selector b and a Z
// selector j. With q = Y_V * sigma_b * Z_{j(1)} (exact phase i^alpha kept in
// q), the testable equation reads
//
//   alpha * psi^T (Y_V x conjugated letters of q) psi = rhs,
//
// where the conjugated letters are the unknown transformed Paulis on the
// support of q and rhs is 0 or det(S). rhs = DetS exactly when j = 0.
struct Condition {
    Bits b = 0;
    Bits j = 0;
    PauliWord q;
    Bits support = 0;
    std::string labels;       // letters of q on the support, ascending site order
    std::uint8_t alpha = 0;   // exponent of i
    Rhs rhs = Rhs::Zero;
};

// All conditions whose unknown word has exactly the given support, plus the
// category the set falls into:
//   I   : n - |support| odd (satisfied by every pure state),
//   III : some member has rhs = DetS,
//   II  : everything else (satisfied by every image, S-independent).
struct ConditionGroup {
    int n = 0;
    Bits support = 0;
    Category category = Category::I;
    std::vector<Condition> conditions;
};

Condition derive_condition(const Graph& g, Bits b, Bits j);

// Every (b, j) pair whose condition has support exactly `support`, without
// scanning all 4^n pairs: bits of b off the support are forced to 1 and the
// off-support bits of j are forced so those letters cancel to identity. The
// group always has exactly 3^|support| members, one per letter combination.
ConditionGroup enumerate_support(const Graph& g, Bits support, std::size_t cap = 1'000'000);

Category classify(ConditionGroup& group);

// The unique support-empty condition (exists for every graph; it carries no
// unknowns at all).
ConditionGroup empty_support_group(const Graph& g);

// All groups with 1 <= |J| <= max_support and |J| = n (mod 2), plus the
// support-empty group when n is even, in ascending support size then
// ascending support mask. Wrong-parity supports are skipped entirely: those
// conditions hold for every pure state and carry no information.
std::vector<ConditionGroup> scan(const Graph& g, int max_support, std::size_t cap = 1'000'000);

}  // namespace gslocc
