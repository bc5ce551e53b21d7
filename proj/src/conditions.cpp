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

#include "gslocc/conditions.hpp"

#include <algorithm>

#include "gslocc/error.hpp"

namespace gslocc {

Condition derive_condition(const Graph& g, Bits b, Bits j) {
    const Bits full = all_sites_mask(g.n);
    if ((b | full) != full || (j | full) != full)
        throw DimensionError("selector bits exceed vertex count");
    const PauliWord yv{g.n, full, full, 0};
    const PauliWord zj{g.n, 0, j, 0};
    Condition c;
    c.b = b;
    c.j = j;
    c.q = pauli_mul(pauli_mul(yv, stabilizer_element(g, b)), zj);
    c.support = c.q.support();
    for (int k = 0; k < g.n; ++k)
        if (get_bit(c.support, k)) c.labels.push_back(c.q.letter(k));
    c.alpha = c.q.phase;
    c.rhs = (j == 0) ? Rhs::DetS : Rhs::Zero;
    return c;
}

ConditionGroup enumerate_support(const Graph& g, Bits support, std::size_t cap) {
    const Bits full = all_sites_mask(g.n);
    if ((support | full) != full) throw DimensionError("support exceeds vertex count");
    const int m = popcount(support);
    if (m > 20 || (std::size_t{1} << (2 * m)) > cap)
        throw CapacityError("support of size " + std::to_string(m) +
                            " exceeds the enumeration cap");

    ConditionGroup group;
    group.n = g.n;
    group.support = support;

    const Bits off = full & ~support;
    // Subsets of the support, for both the free bits of b and of j.
    Bits sb = 0;
    while (true) {
        const Bits b = off | sb;
        const Bits zall = g.adj_mul(b);
        const Bits j_off = ~zall & off;
        Bits sj = 0;
        while (true) {
            const Bits j = j_off | sj;
            // Skip combinations where an on-support letter degenerates to
            // identity; they belong to a smaller support.
            if ((sb & (zall ^ j) & support) == 0) {
                Condition c = derive_condition(g, b, j);
                group.conditions.push_back(std::move(c));
            }
            if (sj == support) break;
            sj = (sj - support) & support;
        }
        if (sb == support) break;
        sb = (sb - support) & support;
    }
    std::sort(group.conditions.begin(), group.conditions.end(),
              [](const Condition& a, const Condition& b) {
                  return a.b != b.b ? a.b < b.b : a.j < b.j;
              });
    classify(group);
    return group;
}

Category classify(ConditionGroup& group) {
    if ((group.n - popcount(group.support)) & 1) {
        group.category = Category::I;
    } else {
        group.category = Category::II;
        for (const Condition& c : group.conditions)
            if (c.rhs == Rhs::DetS) {
                group.category = Category::III;
                break;
            }
    }
    return group.category;
}

ConditionGroup empty_support_group(const Graph& g) { return enumerate_support(g, 0); }

std::vector<ConditionGroup> scan(const Graph& g, int max_support, std::size_t cap) {
    if (max_support < 0 || max_support > g.n)
        throw DimensionError("max support must be in 0.." + std::to_string(g.n));
    std::vector<ConditionGroup> groups;
    std::size_t cost = 0;
    for (int sz = (g.n % 2 == 0) ? 0 : 1; sz <= max_support; sz += 2) {
        // binomial(n, sz) masks of 3^sz members each
        double count = 1.0;
        for (int i = 0; i < sz; ++i) count = count * (g.n - i) / (i + 1);
        double members = 1.0;
        for (int i = 0; i < sz; ++i) members *= 3.0;
        if (count * members > static_cast<double>(cap) - static_cast<double>(cost))
            throw CapacityError("condition scan at support size " + std::to_string(sz) +
                                " exceeds the cap");
        cost += static_cast<std::size_t>(count * members);

        if (sz == 0) {
            groups.push_back(enumerate_support(g, 0, cap));
            continue;
        }
        Bits mask = (Bits{1} << sz) - 1;
        do {
            groups.push_back(enumerate_support(g, mask, cap));
        } while (next_combination(mask, g.n));
    }
    return groups;
}

}  // namespace gslocc
