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

#include "gslocc/moments.hpp"

#include <array>
#include <cmath>

#include "gslocc/error.hpp"

namespace gslocc {

namespace {

Mat2 elementary(int u, int v) {
    Mat2 m;
    m.m[u][v] = 1.0;
    return m;
}

// i^(-k)
cd inv_phase(std::uint8_t k) {
    static const cd kVals[4] = {cd{1, 0}, cd{0, -1}, cd{-1, 0}, cd{0, 1}};
    return kVals[k & 3];
}

std::size_t pow_of(std::size_t base, int m) {
    std::size_t r = 1;
    for (int i = 0; i < m; ++i) r *= base;
    return r;
}

int letter_digit(char l) {
    switch (l) {
        case 'X': return 0;
        case 'Y': return 1;
        default: return 2;  // 'Z'
    }
}

}  // namespace

GroupMoments build_group_moments(const StateVector& psi, const ConditionGroup& group) {
    GroupMoments gm;
    gm.support = group.support;
    gm.category = group.category;
    gm.sites = bits_to_sites(group.support);
    gm.group = group;
    const int m = static_cast<int>(gm.sites.size());
    const Mat2 y = pauli_matrix('Y');

    // Base factor list: Y on every site off the support.
    std::vector<std::pair<int, Mat2>> factors;
    factors.reserve(static_cast<std::size_t>(psi.n));
    for (int k = 0; k < psi.n; ++k)
        if (!get_bit(group.support, k)) factors.emplace_back(k, y);
    const std::size_t base = factors.size();
    for (int s = 0; s < m; ++s) factors.emplace_back(gm.sites[static_cast<std::size_t>(s)], y);

    gm.t.assign(pow_of(4, m), cd{0, 0});
    for (std::size_t idx = 0; idx < gm.t.size(); ++idx) {
        std::size_t rest = idx;
        for (int s = 0; s < m; ++s) {
            const int digit = static_cast<int>(rest & 3);
            rest >>= 2;
            factors[base + static_cast<std::size_t>(s)].second =
                elementary(digit >> 1, digit & 1);
        }
        gm.t[idx] = bilinear_form(psi, factors);
    }

    // theta: contract with Y*P per slot.
    std::array<Mat2, 3> yp = {y * pauli_matrix('X'), y * pauli_matrix('Y'), y * pauli_matrix('Z')};
    gm.theta.assign(pow_of(3, m), cd{0, 0});
    for (std::size_t lidx = 0; lidx < gm.theta.size(); ++lidx) {
        std::vector<Mat2> blocks(static_cast<std::size_t>(m));
        std::size_t rest = lidx;
        for (int s = 0; s < m; ++s) {
            blocks[static_cast<std::size_t>(s)] = yp[rest % 3];
            rest /= 3;
        }
        gm.theta[lidx] = contract_blocks(gm, blocks);
    }

    gm.rho.assign(pow_of(3, m), cd{0, 0});
    for (const Condition& c : group.conditions) {
        if (c.rhs != Rhs::DetS) continue;
        std::size_t lidx = 0;
        std::size_t stride = 1;
        for (int s = 0; s < m; ++s) {
            lidx += stride * static_cast<std::size_t>(
                                 letter_digit(c.labels[static_cast<std::size_t>(s)]));
            stride *= 3;
        }
        gm.rho[lidx] = inv_phase(c.alpha);
    }
    return gm;
}

MomentTable build_moments(const StateVector& psi, const std::vector<ConditionGroup>& groups) {
    MomentTable mt;
    mt.n = psi.n;
    mt.groups.reserve(groups.size());
    for (const ConditionGroup& g : groups) mt.groups.push_back(build_group_moments(psi, g));
    return mt;
}

cd contract_blocks(const GroupMoments& gm, const std::vector<Mat2>& y_times_blocks) {
    const int m = static_cast<int>(gm.sites.size());
    cd acc{0, 0};
    for (std::size_t idx = 0; idx < gm.t.size(); ++idx) {
        if (gm.t[idx] == cd{0, 0}) continue;
        cd prod = gm.t[idx];
        std::size_t rest = idx;
        for (int s = 0; s < m; ++s) {
            const int digit = static_cast<int>(rest & 3);
            rest >>= 2;
            prod *= y_times_blocks[static_cast<std::size_t>(s)].m[digit >> 1][digit & 1];
        }
        acc += prod;
    }
    return acc;
}

cd condition_value(const GroupMoments& gm, const Condition& c, const std::vector<Mat2>& bx,
                   const std::vector<Mat2>& by, const std::vector<Mat2>& bz) {
    const Mat2 y = pauli_matrix('Y');
    std::vector<Mat2> blocks(gm.sites.size());
    for (std::size_t s = 0; s < gm.sites.size(); ++s) {
        switch (c.labels[s]) {
            case 'X': blocks[s] = y * bx[s]; break;
            case 'Y': blocks[s] = y * by[s]; break;
            default: blocks[s] = y * bz[s]; break;
        }
    }
    return contract_blocks(gm, blocks);
}

namespace {

// 3x3 complex helpers for the slot Gram matrices.
using M3 = std::array<std::array<cd, 3>, 3>;

cd det3(const M3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

cd trace_sq(const M3& m) {
    cd acc{0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) acc += m[i][j] * m[j][i];
    return acc;
}

// Gram of the slot matricization: G[a][b] = sum over the remaining indices
// of T[... a ...] T[... b ...].
M3 slot_gram(const std::vector<cd>& t, int slot) {
    M3 g{};
    const std::size_t stride = pow_of(3, slot);
    for (std::size_t idx = 0; idx < t.size(); ++idx) {
        const std::size_t a = (idx / stride) % 3;
        const std::size_t base = idx - a * stride;
        for (std::size_t b = 0; b < 3; ++b)
            g[a][b] += t[idx] * t[base + b * stride];
    }
    return g;
}

double tensor_scale(const std::vector<cd>& t) {
    double s = 0.0;
    for (const cd& v : t) s += std::norm(v);
    return s;
}

}  // namespace

std::vector<InvariantRelation> group_invariants(const GroupMoments& gm) {
    std::vector<InvariantRelation> rels;
    const int m = static_cast<int>(gm.sites.size());
    const double th_scale = tensor_scale(gm.theta);
    const double rho_scale = tensor_scale(gm.rho);

    // Category I groups hold for every pure state; they contribute nothing.
    if (gm.category == Category::I) return rels;

    if (m == 0) {
        // Direct condition, no unknowns: alpha^{-1}-scaled value equals d or 0.
        InvariantRelation r;
        r.support = gm.support;
        r.power = (rho_scale > 0.5) ? 1 : 0;
        r.h = (r.power == 1) ? gm.rho[0] : cd{0, 0};
        r.g = gm.theta.empty() ? gm.t[0] : gm.theta[0];
        r.scale = std::max(1.0, std::abs(r.g));
        r.kind = "direct";
        rels.push_back(r);
        return rels;
    }

    if (gm.category == Category::II) {
        // Every member is zero-rhs, so the whole theta tensor must vanish
        // for an image (the letter blocks are invertible recombinations).
        InvariantRelation r;
        r.support = gm.support;
        r.power = 0;
        r.h = cd{0, 0};
        r.g = std::sqrt(th_scale);
        r.scale = 1.0;
        r.kind = "zero-group-norm";
        rels.push_back(r);
        return rels;
    }

    const double scale = std::max(1.0, th_scale) + rho_scale;

    // Full bilinear square sum: invariant under the per-slot complex
    // orthogonal letter recombination.
    {
        InvariantRelation r;
        r.support = gm.support;
        r.power = 2;
        cd hg{0, 0}, gg{0, 0};
        for (const cd& v : gm.rho) hg += v * v;
        for (const cd& v : gm.theta) gg += v * v;
        r.h = hg;
        r.g = gg;
        r.scale = scale;
        r.kind = "square-sum";
        rels.push_back(r);
    }

    if (m >= 2) {
        // For m = 2 both slot Grams share their spectrum; one suffices.
        const int slots = (m == 2) ? 1 : m;
        for (int slot = 0; slot < slots; ++slot) {
            const M3 gt = slot_gram(gm.theta, slot);
            const M3 gr = slot_gram(gm.rho, slot);
            InvariantRelation r2;
            r2.support = gm.support;
            r2.slot = slot;
            r2.power = 4;
            r2.h = trace_sq(gr);
            r2.g = trace_sq(gt);
            r2.scale = scale * scale;
            r2.kind = "gram-trace-sq";
            rels.push_back(r2);
            InvariantRelation r3;
            r3.support = gm.support;
            r3.slot = slot;
            r3.power = 6;
            r3.h = det3(gr);
            r3.g = det3(gt);
            r3.scale = scale * scale * scale;
            r3.kind = "gram-det";
            rels.push_back(r3);
        }
        if (m == 2) {
            // det of the 3x3 letter matrix transforms with d^3; it pins the
            // sign of d.
            M3 mt{}, mr{};
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    mt[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                        gm.theta[static_cast<std::size_t>(a + 3 * b)];
                    mr[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                        gm.rho[static_cast<std::size_t>(a + 3 * b)];
                }
            InvariantRelation r;
            r.support = gm.support;
            r.power = 3;
            r.h = det3(mr);
            r.g = det3(mt);
            r.scale = std::pow(scale, 1.5);
            r.kind = "matrix-det";
            rels.push_back(r);
        }
    }
    return rels;
}

}  // namespace gslocc
