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

#include "gslocc/genstab.hpp"

#include <cmath>

#include "gslocc/error.hpp"

namespace gslocc {

namespace {

// Extracts the site-k 2x2 slice of a tensor-product matrix by fixing the
// other sites at the position of the dominant entry, then projects onto the
// Pauli basis to identify the local factor.
Mat2 extract_site_factor(const DenseMatrix& m, int n, int k, std::size_t ref_r,
                         std::size_t ref_c) {
    const std::size_t bit = std::size_t{1} << (n - 1 - k);
    Mat2 t;
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v) {
            const std::size_t r = (ref_r & ~bit) | (u ? bit : 0u);
            const std::size_t c = (ref_c & ~bit) | (v ? bit : 0u);
            t.m[u][v] = m.at(r, c);
        }
    return t;
}

}  // namespace

SeparableOperator projector_stabilizer_element(const Graph& g, Bits i, int dense_limit) {
    if (g.n > dense_limit)
        throw CapacityError("projector stabilizer for n=" + std::to_string(g.n) +
                            " beyond dense limit " + std::to_string(dense_limit));
    const Bits full = all_sites_mask(g.n);
    if ((i | full) != full) throw DimensionError("element index exceeds 2^n range");

    const std::size_t dim = std::size_t{1} << g.n;
    DenseMatrix m(dim);
    for (Bits j = 0;; ++j) {
        const StateVector v = zbasis_vector(g, j, dense_limit);
        const double sign = parity(i & j) ? -1.0 : 1.0;
        for (std::size_t r = 0; r < dim; ++r) {
            if (v.amp[r] == cd{0, 0}) continue;
            const cd vr = sign * v.amp[r];
            for (std::size_t c = 0; c < dim; ++c) m.at(r, c) += vr * std::conj(v.amp[c]);
        }
        if (j == full) break;
    }

    // Locate the dominant entry as the factorization anchor.
    std::size_t ref_r = 0, ref_c = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            if (std::abs(m.at(r, c)) > best) {
                best = std::abs(m.at(r, c));
                ref_r = r;
                ref_c = c;
            }
    if (best <= 0.0) throw Error("projector sum vanished; factorization impossible");

    SeparableOperator op;
    op.factors.reserve(static_cast<std::size_t>(g.n));
    static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    for (int k = 0; k < g.n; ++k) {
        const Mat2 slice = extract_site_factor(m, g.n, k, ref_r, ref_c);
        // Single-site projection onto the Pauli basis: coeff = tr(P slice)/2
        // (Paulis are Hermitian, so this is the Frobenius projection).
        char letter = 'I';
        double mag = -1.0;
        for (char l : kLetters) {
            const Mat2 p = pauli_matrix(l);
            cd c{0, 0};
            for (int u = 0; u < 2; ++u)
                for (int v = 0; v < 2; ++v) c += std::conj(p.m[u][v]) * slice.m[u][v];
            if (std::abs(c) > mag) {
                mag = std::abs(c);
                letter = l;
            }
        }
        op.factors.push_back(pauli_matrix(letter));
    }

    // Global scalar from the anchor entry; the factorization claim is then
    // checked entrywise.
    DenseMatrix prod = slocc_dense(
        [&] {
            SloccOperator s;
            s.locals = op.factors;
            return s;
        }(),
        dense_limit);
    const cd anchor = prod.at(ref_r, ref_c);
    if (std::abs(anchor) < 1e-12) throw Error("separable factorization anchor vanished");
    const cd gamma = m.at(ref_r, ref_c) / anchor;
    op.global_phase = gamma;
    op.factors[0] = gamma * op.factors[0];

    for (cd& v : prod.a) v *= gamma;
    op.residual = max_abs_diff(prod, m) / std::max(1.0, frobenius_norm(m));
    if (op.residual > 1e-8)
        throw Error("projector sum failed to factor into local Paulis (residual " +
                    std::to_string(op.residual) + ")");
    return op;
}

SeparableOperator general_stabilizer_element(const Graph& g, const SloccOperator& s, Bits i,
                                             int dense_limit) {
    if (s.n() != g.n) throw DimensionError("operator and graph qubit counts differ");
    const SloccInverse inv = slocc_inverse(s);
    SeparableOperator op = projector_stabilizer_element(g, i, dense_limit);
    for (int k = 0; k < g.n; ++k)
        op.factors[static_cast<std::size_t>(k)] =
            s.locals[static_cast<std::size_t>(k)] * op.factors[static_cast<std::size_t>(k)] *
            inv.inverse.locals[static_cast<std::size_t>(k)];
    return op;
}

double verify_stabilizes(const StateVector& psi, const SeparableOperator& op) {
    if (op.n() != psi.n) throw DimensionError("operator and state qubit counts differ");
    StateVector out = psi;
    for (int k = 0; k < psi.n; ++k) apply_local(out, k, op.factors[static_cast<std::size_t>(k)]);
    double num = 0.0;
    for (std::size_t idx = 0; idx < psi.dim(); ++idx) num += std::norm(out.amp[idx] - psi.amp[idx]);
    const double den = norm(psi);
    if (den <= 0.0) throw Error("zero-norm state");
    return std::sqrt(num) / den;
}

}  // namespace gslocc
