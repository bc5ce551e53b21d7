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
#include <string_view>

#include "gslocc/bits.hpp"
#include "gslocc/dense.hpp"

namespace gslocc {

// An n-qubit Pauli operator in binary symplectic form with an exact global
// phase: the operator is i^phase * (P_0 x P_1 x ... x P_{n-1}).
//
// Site k carries (x_k, z_k) bits with the convention
//   (0,0) = I, (1,0) = X, (0,1) = Z, (1,1) = Y,
// where (1,1) denotes the matrix Y itself, not the product XZ; all i-factors
// produced when X and Z components recombine live in the global phase. This
// makes stabilizer strings such as "-YXY" carry a single leading sign.
struct PauliWord {
    int n = 0;
    Bits x = 0;
    Bits z = 0;
    std::uint8_t phase = 0;  // exponent of i, mod 4

    static PauliWord identity(int n);
    static PauliWord from_string(std::string_view s);

    char letter(int k) const;  // 'I', 'X', 'Y' or 'Z'
    Bits support() const { return x | z; }
    int weight() const { return popcount(x | z); }
    std::string str() const;

    bool operator==(const PauliWord&) const = default;
};

// Exact operator product a*b with accumulated phase; bits combine by XOR.
PauliWord pauli_mul(const PauliWord& a, const PauliWord& b);

// 0 if a and b commute, 1 if they anticommute (symplectic inner product).
int commutation_exponent(const PauliWord& a, const PauliWord& b);

// Dense 2^n x 2^n matrix of the word in the computational basis where
// site 0 is the most significant index bit. Intended for small-n oracles.
DenseMatrix pauli_dense(const PauliWord& p, int dense_limit = 10);

inline const char* phase_prefix(std::uint8_t phase) {
    static const char* kPrefix[4] = {"", "i", "-", "-i"};
    return kPrefix[phase & 3];
}

}  // namespace gslocc
