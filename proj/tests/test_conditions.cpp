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

#include <map>

#include "gslocc/conditions.hpp"
#include "gslocc/error.hpp"
#include "gslocc/moments.hpp"
#include "gslocc/rand.hpp"
#include "test_helpers.hpp"

using namespace gslocc;
using namespace gslocc::testing;

namespace {

const Condition* find_by_label(const ConditionGroup& g, const std::string& labels) {
    for (const Condition& c : g.conditions)
        if (c.labels == labels) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("derived conditions on the three-qubit path") {
    const Graph p3 = path_graph(3);

    // all-Y selector with the matching Z selector: no unknowns at all
    const Condition empty = derive_condition(p3, 0b111, 0b010);
    CHECK(empty.support == 0);
    CHECK(empty.labels.empty());
    CHECK(empty.rhs == Rhs::Zero);

    // support {2}, letter X, carrying the determinant with alpha = i
    const Condition x2 = derive_condition(p3, 0b011, 0b000);
    CHECK(x2.support == 0b100u);
    CHECK(x2.labels == "X");
    CHECK(x2.rhs == Rhs::DetS);
    CHECK(x2.alpha == 1);  // i * psi^T(Y Y Xt) psi = detS, i.e. rhs -i detS
}

TEST_CASE("derived condition on the five-qubit path") {
    const Graph p5 = path_graph(5);
    const Condition c = derive_condition(p5, 0b11111, bits_from_string("01111"));
    CHECK(c.support == (Bits{1} << 4));
    CHECK(c.labels == "Z");
    CHECK(c.rhs == Rhs::Zero);
}

TEST_CASE("single site group of the three-qubit path") {
    const Graph p3 = path_graph(3);
    const ConditionGroup g2 = enumerate_support(p3, Bits{1} << 2);
    CHECK(g2.conditions.size() == 3);
    std::string letters;
    int dets = 0;
    for (const Condition& c : g2.conditions) {
        letters += c.labels;
        if (c.rhs == Rhs::DetS) {
            ++dets;
            CHECK(c.labels == "X");
            CHECK(c.alpha == 1);
        }
    }
    CHECK(dets == 1);
    std::sort(letters.begin(), letters.end());
    CHECK(letters == "XYZ");
    CHECK(g2.category == Category::III);
}

TEST_CASE("five-qubit path group classes match the worked example") {
    const Graph p5 = path_graph(5);

    const ConditionGroup last = enumerate_support(p5, Bits{1} << 4);
    CHECK(last.conditions.size() == 3);
    CHECK(last.category == Category::II);
    for (const Condition& c : last.conditions) CHECK(c.rhs == Rhs::Zero);
    // the selectors printed in the worked example
    const Condition* cx = find_by_label(last, "X");
    REQUIRE(cx != nullptr);
    CHECK(cx->b == bits_from_string("11110"));
    CHECK(cx->j == bits_from_string("01100"));
    const Condition* cy = find_by_label(last, "Y");
    REQUIRE(cy != nullptr);
    CHECK(cy->j == bits_from_string("01101"));
    const Condition* cz = find_by_label(last, "Z");
    REQUIRE(cz != nullptr);
    CHECK(cz->b == bits_from_string("11111"));
    CHECK(cz->j == bits_from_string("01111"));

    const ConditionGroup mid = enumerate_support(p5, Bits{1} << 2);
    CHECK(mid.category == Category::III);
    const Condition* my = find_by_label(mid, "Y");
    REQUIRE(my != nullptr);
    CHECK(my->rhs == Rhs::DetS);
    CHECK(my->alpha == 0);  // psi^T(Y Y Yt Y Y) psi = detS with coefficient 1
    CHECK(my->b == bits_from_string("11011"));
    CHECK(my->j == bits_from_string("00000"));
    const Condition* mx = find_by_label(mid, "X");
    REQUIRE(mx != nullptr);
    CHECK(mx->rhs == Rhs::Zero);
    CHECK(mx->j == bits_from_string("00100"));
    const Condition* mz = find_by_label(mid, "Z");
    REQUIRE(mz != nullptr);
    CHECK(mz->rhs == Rhs::Zero);
    CHECK(mz->j == bits_from_string("01010"));
}

TEST_CASE("classification follows the parity and rhs rules") {
    const Graph p3 = path_graph(3);
    ConditionGroup two_site = enumerate_support(p3, 0b011);
    CHECK(two_site.category == Category::I);  // n - |J| = 1 odd

    CHECK(enumerate_support(path_graph(5), Bits{1} << 4).category == Category::II);
    CHECK(enumerate_support(path_graph(5), Bits{1} << 2).category == Category::III);
}

TEST_CASE("scan emits the parity-admissible groups in order") {
    const Graph p3 = path_graph(3);
    const auto groups = scan(p3, 1);
    REQUIRE(groups.size() == 3);
    int conditions = 0;
    for (std::size_t k = 0; k < groups.size(); ++k) {
        CHECK(groups[k].support == (Bits{1} << k));
        conditions += static_cast<int>(groups[k].conditions.size());
    }
    CHECK(conditions == 9);
    // determinant pattern: X on the end sites, Z in the middle, all alpha i
    for (const auto& g : groups)
        for (const Condition& c : g.conditions) {
            if (c.rhs != Rhs::DetS) continue;
            const int site = bits_to_sites(g.support)[0];
            CHECK(c.labels == (site == 1 ? "Z" : "X"));
            CHECK(c.alpha == 1);
        }

    const auto single = scan(Graph::empty(1), 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0].support == 1u);

    // even n: the support-empty group comes first
    const auto even = scan(path_graph(4), 2);
    REQUIRE(!even.empty());
    CHECK(even[0].support == 0);
    CHECK(even[0].conditions.size() == 1);

    CHECK_THROWS_AS(scan(path_graph(9), 9, 1000), CapacityError);
}

TEST_CASE("five-qubit scan contains sizes 1 and 3 only") {
    const auto groups = scan(path_graph(5), 3);
    std::map<int, int> sizes;
    for (const auto& g : groups) sizes[popcount(g.support)]++;
    CHECK(sizes.size() == 2);
    CHECK(sizes[1] == 5);
    CHECK(sizes[3] == 10);
}

TEST_CASE("enumeration matches brute force over all selector pairs") {
    Rng rng(41);
    std::vector<Graph> graphs = {path_graph(2), path_graph(3), complete_graph(3), path_graph(4),
                                 star_graph(4), cycle_graph(4), random_connected_graph(rng, 4)};
    for (const Graph& g : graphs) {
        // bucket every (b, j) pair by the support of its condition
        std::map<Bits, std::vector<Condition>> buckets;
        const Bits full = all_sites_mask(g.n);
        for (Bits b = 0; b <= full; ++b)
            for (Bits j = 0; j <= full; ++j) {
                Condition c = derive_condition(g, b, j);
                buckets[c.support].push_back(std::move(c));
            }
        std::size_t total = 0;
        for (auto& [support, conds] : buckets) {
            std::sort(conds.begin(), conds.end(), [](const Condition& a, const Condition& b) {
                return a.b != b.b ? a.b < b.b : a.j < b.j;
            });
            const ConditionGroup grp = enumerate_support(g, support);
            REQUIRE(grp.conditions.size() == conds.size());
            for (std::size_t i = 0; i < conds.size(); ++i) {
                CHECK(grp.conditions[i].b == conds[i].b);
                CHECK(grp.conditions[i].j == conds[i].j);
                CHECK(grp.conditions[i].labels == conds[i].labels);
                CHECK(grp.conditions[i].alpha == conds[i].alpha);
                CHECK(grp.conditions[i].rhs == conds[i].rhs);
            }
            total += conds.size();
        }
        CHECK(total == (std::size_t{1} << (2 * g.n)));
        // every group has exactly 3^|support| members
        for (const auto& [support, conds] : buckets) {
            std::size_t expect = 1;
            for (int i = 0; i < popcount(support); ++i) expect *= 3;
            CHECK(conds.size() == expect);
        }
    }
}

TEST_CASE("single-site groups have one member per letter, at most one detS") {
    Rng rng(42);
    for (int it = 0; it < 25; ++it) {
        const int n = 2 + static_cast<int>(rng.u64() % 7);
        const Graph g = random_connected_graph(rng, n);
        for (int k = 0; k < n; ++k) {
            const ConditionGroup grp = enumerate_support(g, Bits{1} << k);
            REQUIRE(grp.conditions.size() == 3);
            std::string letters;
            int dets = 0;
            for (const Condition& c : grp.conditions) {
                letters += c.labels;
                dets += (c.rhs == Rhs::DetS) ? 1 : 0;
            }
            std::sort(letters.begin(), letters.end());
            CHECK(letters == "XYZ");
            CHECK(dets <= 1);
        }
    }
}

// Forward direction: for an actual image the conditions hold with the
// operator's determinant on the right-hand side.
TEST_CASE("conditions hold on constructed images") {
    Rng rng(43);
    for (int it = 0; it < 12; ++it) {
        const int n = 2 + static_cast<int>(rng.u64() % 7);
        const Graph g = random_connected_graph(rng, n);
        const SloccOperator s = random_slocc_operator(rng, n);
        const SloccInverse inv = slocc_inverse(s);
        const StateVector psi = apply_slocc(s, build_graph_state(g, 12));

        const int max_support = std::min(n, (n % 2 == 0) ? 2 : 3);
        const auto groups = scan(g, max_support);
        const MomentTable mt = build_moments(psi, groups);

        double scale = norm(psi) * norm(psi);
        for (int k = 0; k < n; ++k) scale *= 2.0;

        std::vector<Mat2> bx(static_cast<std::size_t>(n)), by(static_cast<std::size_t>(n)),
            bz(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            const Mat2& sk = s.locals[static_cast<std::size_t>(k)];
            const Mat2& ik = inv.inverse.locals[static_cast<std::size_t>(k)];
            bx[static_cast<std::size_t>(k)] = sk * pauli_matrix('X') * ik;
            by[static_cast<std::size_t>(k)] = sk * pauli_matrix('Y') * ik;
            bz[static_cast<std::size_t>(k)] = sk * pauli_matrix('Z') * ik;
        }
        static const cd kPhases[4] = {cd{1, 0}, cd{0, 1}, cd{-1, 0}, cd{0, -1}};
        for (const GroupMoments& gm : mt.groups) {
            std::vector<Mat2> sx, sy, sz;
            for (int site : gm.sites) {
                sx.push_back(bx[static_cast<std::size_t>(site)]);
                sy.push_back(by[static_cast<std::size_t>(site)]);
                sz.push_back(bz[static_cast<std::size_t>(site)]);
            }
            for (const Condition& c : gm.group.conditions) {
                const cd value = kPhases[c.alpha] * condition_value(gm, c, sx, sy, sz);
                const cd rhs = (c.rhs == Rhs::DetS) ? inv.det : cd{0, 0};
                CHECK(std::abs(value - rhs) < 1e-9 * scale);
            }
        }
    }
}

// Conditions in all-zero-rhs groups vanish for arbitrary invertible
// substitutions, not only for conjugated letters.
TEST_CASE("all-zero groups hold with arbitrary letter substitutions") {
    Rng rng(44);
    int checked = 0;
    for (int it = 0; it < 20; ++it) {
        const int n = 2 + static_cast<int>(rng.u64() % 5);
        const Graph g = random_connected_graph(rng, n);
        const SloccOperator s = random_slocc_operator(rng, n);
        const StateVector psi = apply_slocc(s, build_graph_state(g, 12));

        const int max_support = std::min(n, (n % 2 == 0) ? 2 : 3);
        const auto groups = scan(g, max_support);
        const MomentTable mt = build_moments(psi, groups);
        double scale = norm(psi) * norm(psi) * 16.0;
        for (const GroupMoments& gm : mt.groups) {
            if (gm.category != Category::II) continue;
            std::vector<Mat2> sx, sy, sz;
            for (std::size_t i = 0; i < gm.sites.size(); ++i) {
                sx.push_back(random_traceless_invertible(rng));
                sy.push_back(random_traceless_invertible(rng));
                sz.push_back(random_traceless_invertible(rng));
            }
            for (const Condition& c : gm.group.conditions) {
                const cd value = condition_value(gm, c, sx, sy, sz);
                CHECK(std::abs(value) < 1e-9 * scale);
                ++checked;
            }
        }
    }
    CHECK(checked > 30);
}

TEST_CASE("moment table first order obeys transpose symmetry") {
    Rng rng(45);
    for (int it = 0; it < 10; ++it) {
        const int n = 2 + static_cast<int>(rng.u64() % 4);
        const StateVector psi = random_state(rng, n);
        for (int k = 0; k < n; ++k) {
            const ConditionGroup grp = enumerate_support(path_graph(n), Bits{1} << k);
            const GroupMoments gm = build_group_moments(psi, grp);
            // t[2u+v] with the replace convention: M[u][v] = (+-) M[v][u]
            const double sign = ((n - 1) % 2) ? -1.0 : 1.0;
            for (int u = 0; u < 2; ++u)
                for (int v = 0; v < 2; ++v) {
                    const cd muv = gm.t[static_cast<std::size_t>(2 * u + v)];
                    const cd mvu = gm.t[static_cast<std::size_t>(2 * v + u)];
                    CHECK(std::abs(muv - sign * mvu) < 1e-11 * (1.0 + std::abs(muv)) *
                                                           norm(psi) * norm(psi));
                }
        }
    }
}
