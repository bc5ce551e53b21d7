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

#include <doctest.h>

#include "gslocc/error.hpp"
#include "gslocc/pauli.hpp"
#include "gslocc/rand.hpp"
#include "test_helpers.hpp"

using namespace gslocc;

namespace {

PauliWord random_word(Rng& rng, int n) {
    PauliWord p{n, 0, 0, static_cast<std::uint8_t>(rng.u64() & 3)};
    p.x = rng.u64() & all_sites_mask(n);
    p.z = rng.u64() & all_sites_mask(n);
    return p;
}

// Independent Kronecker-product oracle built from the 2x2 letter matrices.
DenseMatrix kron_oracle(const PauliWord& p) {
    auto letter_matrix = [](char l) {
        DenseMatrix m(2);
        switch (l) {
            case 'I': m.at(0, 0) = 1; m.at(1, 1) = 1; break;
            case 'X': m.at(0, 1) = 1; m.at(1, 0) = 1; break;
            case 'Y': m.at(0, 1) = cd{0, -1}; m.at(1, 0) = cd{0, 1}; break;
            default: m.at(0, 0) = 1; m.at(1, 1) = -1; break;
        }
        return m;
    };
    DenseMatrix m = letter_matrix(p.letter(0));
    for (int k = 1; k < p.n; ++k) m = kron(m, letter_matrix(p.letter(k)));
    static const cd kPhases[4] = {cd{1, 0}, cd{0, 1}, cd{-1, 0}, cd{0, -1}};
    for (cd& v : m.a) v *= kPhases[p.phase & 3];
    return m;
}

}  // namespace

TEST_CASE("pauli product reproduces known stabilizer strings") {
    const PauliWord a = PauliWord::from_string("XZI");
    const PauliWord b = PauliWord::from_string("ZXZ");
    const PauliWord prod = pauli_mul(a, b);
    CHECK(prod.str() == "YYZ");
    CHECK(prod.phase == 0);
}

TEST_CASE("identity is neutral") {
    Rng rng(11);
    for (int it = 0; it < 50; ++it) {
        const int n = 1 + static_cast<int>(rng.u64() % 8);
        const PauliWord p = random_word(rng, n);
        const PauliWord id = PauliWord::identity(n);
        CHECK(pauli_mul(id, p) == p);
        CHECK(pauli_mul(p, id) == p);
    }
}

TEST_CASE("product of the five path generators") {
    // XZIII * ZXZII * IZXZI * IIZXZ * IIIZX = -YXXXY
    PauliWord acc = PauliWord::identity(5);
    const char* gens[5] = {"XZIII", "ZXZII", "IZXZI", "IIZXZ", "IIIZX"};
    for (const char* s : gens) acc = pauli_mul(acc, PauliWord::from_string(s));
    CHECK(acc.str() == "-YXXXY");
    CHECK(acc.phase == 2);
}

TEST_CASE("site labels") {
    const PauliWord p = PauliWord::from_string("-YXY");
    CHECK(p.letter(0) == 'Y');
    CHECK(p.letter(1) == 'X');
    CHECK(p.letter(2) == 'Y');
    CHECK(PauliWord::identity(4).letter(2) == 'I');
    CHECK(PauliWord::from_string("YXXYZ").letter(4) == 'Z');
    CHECK_THROWS_AS(p.letter(3), DimensionError);
    CHECK_THROWS_AS((void)pauli_mul(p, PauliWord::identity(4)), DimensionError);
}

TEST_CASE("support and weight") {
    CHECK(PauliWord::from_string("YXXYZ").support() == 0b11111u);
    CHECK(PauliWord::from_string("YXXYZ").weight() == 5);
    CHECK(PauliWord::identity(5).support() == 0u);
    CHECK(PauliWord::identity(5).weight() == 0);
    const PauliWord p = PauliWord::from_string("IIYII");
    CHECK(p.support() == 0b00100u);
    CHECK(p.weight() == 1);
}

TEST_CASE("string round trip") {
    Rng rng(12);
    for (int it = 0; it < 100; ++it) {
        const int n = 1 + static_cast<int>(rng.u64() % 10);
        const PauliWord p = random_word(rng, n);
        CHECK(PauliWord::from_string(p.str()) == p);
    }
    CHECK(PauliWord::from_string("-YXY").str() == "-YXY");
    CHECK(PauliWord::from_string("iZ").str() == "iZ");
    CHECK(PauliWord::from_string("-iXY").str() == "-iXY");
    CHECK_THROWS_AS(PauliWord::from_string("XQ"), ParseError);
    CHECK_THROWS_AS(PauliWord::from_string(""), ParseError);
}

TEST_CASE("dense single-qubit matrices") {
    const DenseMatrix x = pauli_dense(PauliWord::from_string("X"));
    CHECK(x.at(0, 0) == cd{0, 0});
    CHECK(x.at(0, 1) == cd{1, 0});
    CHECK(x.at(1, 0) == cd{1, 0});
    const DenseMatrix y = pauli_dense(PauliWord::from_string("Y"));
    CHECK(y.at(0, 1) == cd{0, -1});
    CHECK(y.at(1, 0) == cd{0, 1});
    CHECK_THROWS_AS(pauli_dense(PauliWord::identity(11)), CapacityError);
}

TEST_CASE("dense matches the Kronecker oracle") {
    Rng rng(13);
    const PauliWord yyz = PauliWord::from_string("YYZ");
    CHECK(max_abs_diff(pauli_dense(yyz), kron_oracle(yyz)) == 0.0);
    for (int it = 0; it < 40; ++it) {
        const int n = 1 + static_cast<int>(rng.u64() % 4);
        const PauliWord p = random_word(rng, n);
        CHECK(max_abs_diff(pauli_dense(p), kron_oracle(p)) == 0.0);
    }
}

TEST_CASE("group laws") {
    Rng rng(14);
    for (int it = 0; it < 60; ++it) {
        const int n = 1 + static_cast<int>(rng.u64() % 6);
        const PauliWord a = random_word(rng, n);
        const PauliWord b = random_word(rng, n);
        const PauliWord c = random_word(rng, n);
        CHECK(pauli_mul(pauli_mul(a, b), c) == pauli_mul(a, pauli_mul(b, c)));
        const PauliWord sq = pauli_mul(a, a);
        CHECK(sq.x == 0);
        CHECK(sq.z == 0);
        CHECK((sq.phase % 2) == 0);
    }
}

TEST_CASE("commutation sign rule") {
    Rng rng(15);
    for (int it = 0; it < 60; ++it) {
        const int n = 1 + static_cast<int>(rng.u64() % 6);
        PauliWord a = random_word(rng, n);
        PauliWord b = random_word(rng, n);
        const PauliWord ab = pauli_mul(a, b);
        const PauliWord ba = pauli_mul(b, a);
        const int s = commutation_exponent(a, b);
        CHECK(ab.x == ba.x);
        CHECK(ab.z == ba.z);
        CHECK(((ab.phase - ba.phase + 8) % 4) == (s ? 2 : 0));
    }
}

TEST_CASE("dense product faithfulness") {
    Rng rng(16);
    // exhaustive at n = 1 over all letters and phases
    for (int pa = 0; pa < 16; ++pa)
        for (int pb = 0; pb < 16; ++pb) {
            PauliWord a{1, Bits(pa & 1), Bits((pa >> 1) & 1), static_cast<std::uint8_t>(pa >> 2)};
            PauliWord b{1, Bits(pb & 1), Bits((pb >> 1) & 1), static_cast<std::uint8_t>(pb >> 2)};
            CHECK(max_abs_diff(pauli_dense(pauli_mul(a, b)),
                               pauli_dense(a) * pauli_dense(b)) == 0.0);
        }
    for (int it = 0; it < 40; ++it) {
        const int n = 2 + static_cast<int>(rng.u64() % 3);
        const PauliWord a = random_word(rng, n);
        const PauliWord b = random_word(rng, n);
        CHECK(max_abs_diff(pauli_dense(pauli_mul(a, b)), pauli_dense(a) * pauli_dense(b)) == 0.0);
    }
}

TEST_CASE("transpose flips sign per Y site") {
    Rng rng(17);
    for (int it = 0; it < 30; ++it) {
        const int n = 1 + static_cast<int>(rng.u64() % 4);
        const PauliWord p = random_word(rng, n);
        const DenseMatrix d = pauli_dense(p);
        int ycount = 0;
        for (int k = 0; k < n; ++k)
            if (p.letter(k) == 'Y') ++ycount;
        const double sign = (ycount % 2) ? -1.0 : 1.0;
        DenseMatrix t(d.dim);
        for (std::size_t r = 0; r < d.dim; ++r)
            for (std::size_t c = 0; c < d.dim; ++c) t.at(r, c) = d.at(c, r);
        for (cd& v : t.a) v *= sign;
        CHECK(max_abs_diff(t, d) == 0.0);
    }
}
