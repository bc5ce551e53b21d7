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

#include "gslocc/state.hpp"

#include <cmath>

#include "gslocc/error.hpp"

namespace gslocc {

Mat2 pauli_matrix(char letter) {
    switch (letter) {
        case 'I': return Mat2::of(1.0, 0.0, 0.0, 1.0);
        case 'X': return Mat2::of(0.0, 1.0, 1.0, 0.0);
        case 'Y': return Mat2::of(0.0, cd{0.0, -1.0}, cd{0.0, 1.0}, 0.0);
        case 'Z': return Mat2::of(1.0, 0.0, 0.0, -1.0);
        default: throw DimensionError(std::string("unknown Pauli letter '") + letter + "'");
    }
}

StateVector build_graph_state(const Graph& g, int dense_limit) {
    if (g.n > dense_limit)
        throw CapacityError("graph state for n=" + std::to_string(g.n) + " beyond dense limit " +
                            std::to_string(dense_limit));
    const std::size_t dim = std::size_t{1} << g.n;
    const double mag = std::pow(2.0, -0.5 * g.n);
    const auto edges = g.edge_list();
    StateVector psi;
    psi.n = g.n;
    psi.amp.reserve(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        bool neg = false;
        for (const auto& [a, b] : edges) {
            const std::size_t ma = std::size_t{1} << (g.n - 1 - a);
            const std::size_t mb = std::size_t{1} << (g.n - 1 - b);
            if ((idx & ma) && (idx & mb)) neg = !neg;
        }
        psi.amp.push_back(cd{neg ? -mag : mag, 0.0});
    }
    return psi;
}

void apply_local(StateVector& psi, int k, const Mat2& s) {
    if (k < 0 || k >= psi.n)
        throw DimensionError("site " + std::to_string(k) + " out of range for n=" +
                             std::to_string(psi.n));
    const std::size_t stride = std::size_t{1} << (psi.n - 1 - k);
    for (std::size_t base = 0; base < psi.dim(); base += 2 * stride)
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            const cd a0 = psi.amp[i0];
            const cd a1 = psi.amp[i1];
            psi.amp[i0] = s.m[0][0] * a0 + s.m[0][1] * a1;
            psi.amp[i1] = s.m[1][0] * a0 + s.m[1][1] * a1;
        }
}

StateVector apply_slocc(const SloccOperator& s, const StateVector& psi) {
    if (s.n() != psi.n)
        throw DimensionError("operator acts on " + std::to_string(s.n()) + " qubits, state has " +
                             std::to_string(psi.n));
    StateVector out = psi;
    for (int k = 0; k < psi.n; ++k) apply_local(out, k, s.locals[static_cast<std::size_t>(k)]);
    return out;
}

SloccInverse slocc_inverse(const SloccOperator& s) {
    SloccInverse r;
    r.det = 1.0;
    r.inverse.locals.reserve(s.locals.size());
    for (int k = 0; k < s.n(); ++k) {
        const Mat2& m = s.locals[static_cast<std::size_t>(k)];
        const cd d = m.det();
        const double row0 = std::sqrt(std::norm(m.m[0][0]) + std::norm(m.m[0][1]));
        const double row1 = std::sqrt(std::norm(m.m[1][0]) + std::norm(m.m[1][1]));
        if (std::abs(d) < 1e-12 * row0 * row1 || row0 == 0.0 || row1 == 0.0)
            throw SingularError("local operator at site " + std::to_string(k) +
                                " is not invertible");
        r.det *= d;
        r.inverse.locals.push_back((cd{1.0, 0.0} / d) * m.adjugate());
    }
    return r;
}

cd bilinear_form(const StateVector& psi, const std::vector<std::pair<int, Mat2>>& factors) {
    StateVector tmp = psi;
    for (const auto& [k, m] : factors) apply_local(tmp, k, m);
    return bilinear_dot(psi, tmp);
}

StateVector zbasis_vector(const Graph& g, Bits j, int dense_limit) {
    StateVector psi = build_graph_state(g, dense_limit);
    std::uint64_t idx_mask = 0;
    for (int k = 0; k < g.n; ++k)
        if (get_bit(j, k)) idx_mask |= std::uint64_t{1} << (g.n - 1 - k);
    for (std::size_t idx = 0; idx < psi.dim(); ++idx)
        if (std::popcount(idx & idx_mask) & 1) psi.amp[idx] = -psi.amp[idx];
    return psi;
}

StateVector apply_pauli(const StateVector& psi, const PauliWord& p) {
    if (p.n != psi.n) throw DimensionError("Pauli word and state have mismatched qubit counts");
    static const cd kI(0.0, 1.0);
    cd global = 1.0;
    switch (p.phase & 3) {
        case 1: global = kI; break;
        case 2: global = -1.0; break;
        case 3: global = -kI; break;
        default: break;
    }
    std::uint64_t xmask = 0;
    for (int k = 0; k < p.n; ++k)
        if (get_bit(p.x, k)) xmask |= std::uint64_t{1} << (p.n - 1 - k);
    StateVector out;
    out.n = psi.n;
    out.amp.assign(psi.dim(), cd{0.0, 0.0});
    for (std::size_t c = 0; c < psi.dim(); ++c) {
        cd f = global;
        for (int k = 0; k < p.n; ++k) {
            const bool ck = (c >> (p.n - 1 - k)) & 1u;
            const bool xv = get_bit(p.x, k);
            const bool zv = get_bit(p.z, k);
            if (xv && zv)
                f *= ck ? -kI : kI;
            else if (zv && ck)
                f = -f;
        }
        out.amp[c ^ xmask] += f * psi.amp[c];
    }
    return out;
}

SloccOperator pauli_word_locals(const PauliWord& p) {
    SloccOperator s;
    s.locals.reserve(static_cast<std::size_t>(p.n));
    for (int k = 0; k < p.n; ++k) s.locals.push_back(pauli_matrix(p.letter(k)));
    static const cd kPhases[4] = {cd{1, 0}, cd{0, 1}, cd{-1, 0}, cd{0, -1}};
    s.locals[0] = kPhases[p.phase & 3] * s.locals[0];
    return s;
}

cd hermitian_dot(const StateVector& a, const StateVector& b) {
    if (a.n != b.n) throw DimensionError("inner product of mismatched states");
    cd r = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) r += std::conj(a.amp[i]) * b.amp[i];
    return r;
}

cd bilinear_dot(const StateVector& a, const StateVector& b) {
    if (a.n != b.n) throw DimensionError("bilinear product of mismatched states");
    cd r = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) r += a.amp[i] * b.amp[i];
    return r;
}

double norm(const StateVector& a) {
    double s = 0.0;
    for (const cd& v : a.amp) s += std::norm(v);
    return std::sqrt(s);
}

DenseMatrix slocc_dense(const SloccOperator& s, int dense_limit) {
    if (s.n() > dense_limit) throw CapacityError("dense operator beyond limit");
    DenseMatrix m(2);
    const Mat2& f = s.locals[0];
    m.at(0, 0) = f.m[0][0];
    m.at(0, 1) = f.m[0][1];
    m.at(1, 0) = f.m[1][0];
    m.at(1, 1) = f.m[1][1];
    for (int k = 1; k < s.n(); ++k) {
        DenseMatrix loc(2);
        const Mat2& fk = s.locals[static_cast<std::size_t>(k)];
        loc.at(0, 0) = fk.m[0][0];
        loc.at(0, 1) = fk.m[0][1];
        loc.at(1, 0) = fk.m[1][0];
        loc.at(1, 1) = fk.m[1][1];
        m = kron(m, loc);
    }
    return m;
}

}  // namespace gslocc
