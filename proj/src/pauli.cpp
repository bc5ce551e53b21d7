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

#include "gslocc/pauli.hpp"

#include "gslocc/error.hpp"

namespace gslocc {

PauliWord PauliWord::identity(int n) {
    if (n < 1 || n > kMaxSites)
        throw DimensionError("qubit count must be in 1..64, got " + std::to_string(n));
    return PauliWord{n, 0, 0, 0};
}

char PauliWord::letter(int k) const {
    if (k < 0 || k >= n)
        throw DimensionError("site index " + std::to_string(k) + " out of range for n=" +
                             std::to_string(n));
    static const char kLetters[4] = {'I', 'X', 'Z', 'Y'};
    return kLetters[(get_bit(x, k) ? 1 : 0) + (get_bit(z, k) ? 2 : 0)];
}

std::string PauliWord::str() const {
    std::string s = phase_prefix(phase);
    for (int k = 0; k < n; ++k) s.push_back(letter(k));
    return s;
}

PauliWord PauliWord::from_string(std::string_view s) {
    std::uint8_t phase = 0;
    if (s.starts_with("-i")) {
        phase = 3;
        s.remove_prefix(2);
    } else if (s.starts_with("i")) {
        phase = 1;
        s.remove_prefix(1);
    } else if (s.starts_with("-")) {
        phase = 2;
        s.remove_prefix(1);
    } else if (s.starts_with("+")) {
        s.remove_prefix(1);
    }
    if (s.empty() || s.size() > kMaxSites)
        throw ParseError("Pauli word must have 1..64 letters");
    PauliWord p{static_cast<int>(s.size()), 0, 0, phase};
    for (std::size_t k = 0; k < s.size(); ++k) {
        switch (s[k]) {
            case 'I': break;
            case 'X': p.x |= Bits{1} << k; break;
            case 'Z': p.z |= Bits{1} << k; break;
            case 'Y':
                p.x |= Bits{1} << k;
                p.z |= Bits{1} << k;
                break;
            default:
                throw ParseError(std::string("invalid Pauli letter '") + s[k] + "' at position " +
                                 std::to_string(k));
        }
    }
    return p;
}

PauliWord pauli_mul(const PauliWord& a, const PauliWord& b) {
    if (a.n != b.n)
        throw DimensionError("cannot multiply words of " + std::to_string(a.n) + " and " +
                             std::to_string(b.n) + " qubits");
    // Writing each site letter as i^{xz} X^x Z^z, the product picks up
    //   i^{xa za} i^{xb zb} (-1)^{za xb} i^{-xc zc}
    // per site, with (xc, zc) the XOR of the components.
    const Bits xc = a.x ^ b.x;
    const Bits zc = a.z ^ b.z;
    int ph = int(a.phase) + int(b.phase);
    ph += popcount(a.x & a.z) + popcount(b.x & b.z);
    ph += 2 * popcount(a.z & b.x);
    ph -= popcount(xc & zc);
    return PauliWord{a.n, xc, zc, static_cast<std::uint8_t>(((ph % 4) + 4) % 4)};
}

int commutation_exponent(const PauliWord& a, const PauliWord& b) {
    if (a.n != b.n) throw DimensionError("commutation of words with mismatched qubit counts");
    return (popcount(a.x & b.z) + popcount(a.z & b.x)) & 1;
}

DenseMatrix pauli_dense(const PauliWord& p, int dense_limit) {
    if (p.n > dense_limit)
        throw CapacityError("dense Pauli matrix requested for n=" + std::to_string(p.n) +
                            " beyond limit " + std::to_string(dense_limit));
    const std::size_t dim = std::size_t{1} << p.n;
    DenseMatrix m(dim);
    static const cd kI(0.0, 1.0);
    cd global = 1.0;
    switch (p.phase & 3) {
        case 1: global = kI; break;
        case 2: global = -1.0; break;
        case 3: global = -kI; break;
        default: break;
    }
    // Column c maps to row c ^ xmask with a per-site factor; site k occupies
    // index bit n-1-k.
    std::uint64_t xmask = 0;
    for (int k = 0; k < p.n; ++k)
        if (get_bit(p.x, k)) xmask |= std::uint64_t{1} << (p.n - 1 - k);
    for (std::size_t c = 0; c < dim; ++c) {
        cd f = global;
        for (int k = 0; k < p.n; ++k) {
            const bool ck = (c >> (p.n - 1 - k)) & 1u;
            const bool xv = get_bit(p.x, k);
            const bool zv = get_bit(p.z, k);
            if (xv && zv)
                f *= ck ? -kI : kI;  // Y maps e_v to i(-1)^v e_{1-v}
            else if (zv && ck)
                f = -f;
        }
        m.at(c ^ xmask, c) = f;
    }
    return m;
}

}  // namespace gslocc
