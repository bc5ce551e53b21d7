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

#include <complex>
#include <utility>
#include <vector>

#include "gslocc/dense.hpp"
#include "gslocc/graph.hpp"

namespace gslocc {

// 2x2 complex matrix. Doubles as the SLOCC local operator and as the
// transformed single-qubit Pauli unknowns.
struct Mat2 {
    cd m[2][2] = {{cd{0.0, 0.0}, cd{0.0, 0.0}}, {cd{0.0, 0.0}, cd{0.0, 0.0}}};

    static Mat2 of(cd a, cd b, cd c, cd d) { return Mat2{{{a, b}, {c, d}}}; }
    static Mat2 identity() { return of(1.0, 0.0, 0.0, 1.0); }

    cd det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    cd trace() const { return m[0][0] + m[1][1]; }
    Mat2 transpose() const { return of(m[0][0], m[1][0], m[0][1], m[1][1]); }
    Mat2 adjugate() const { return of(m[1][1], -m[0][1], -m[1][0], m[0][0]); }
    double frobenius() const {
        return std::sqrt(std::norm(m[0][0]) + std::norm(m[0][1]) + std::norm(m[1][0]) +
                         std::norm(m[1][1]));
    }
    double max_abs() const {
        return std::max(std::max(std::abs(m[0][0]), std::abs(m[0][1])),
                        std::max(std::abs(m[1][0]), std::abs(m[1][1])));
    }
};

inline Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.m[i][j] = x.m[i][0] * y.m[0][j] + x.m[i][1] * y.m[1][j];
    return r;
}

inline Mat2 operator*(cd s, const Mat2& x) {
    return Mat2::of(s * x.m[0][0], s * x.m[0][1], s * x.m[1][0], s * x.m[1][1]);
}

inline Mat2 operator+(const Mat2& x, const Mat2& y) {
    return Mat2::of(x.m[0][0] + y.m[0][0], x.m[0][1] + y.m[0][1], x.m[1][0] + y.m[1][0],
                    x.m[1][1] + y.m[1][1]);
}

inline Mat2 operator-(const Mat2& x, const Mat2& y) {
    return Mat2::of(x.m[0][0] - y.m[0][0], x.m[0][1] - y.m[0][1], x.m[1][0] - y.m[1][0],
                    x.m[1][1] - y.m[1][1]);
}

Mat2 pauli_matrix(char letter);  // 'I', 'X', 'Y', 'Z'

// Dense n-qubit state. Basis index bit n-1-k carries site k's computational
// value, i.e. qubit 0 is the most significant index bit. The norm does not
// have to be 1.
struct StateVector {
    int n = 0;
    std::vector<cd> amp;

    std::size_t dim() const { return amp.size(); }
};

struct SloccOperator {
    std::vector<Mat2> locals;

    int n() const { return static_cast<int>(locals.size()); }
    cd det() const {
        cd d = 1.0;
        for (const Mat2& s : locals) d *= s.det();
        return d;
    }
    static SloccOperator identity(int n) {
        SloccOperator s;
        s.locals.assign(static_cast<std::size_t>(n), Mat2::identity());
        return s;
    }
};

// Unique joint +1 eigenstate of the graph stabilizer generators. All
// amplitudes are +-2^{-n/2}.
StateVector build_graph_state(const Graph& g, int dense_limit = 12);

// In-place application of a 2x2 matrix to one site.
void apply_local(StateVector& psi, int k, const Mat2& s);

// (S_0 x ... x S_{n-1}) psi, input unmodified.
StateVector apply_slocc(const SloccOperator& s, const StateVector& psi);

struct SloccInverse {
    SloccOperator inverse;
    cd det;  // determinant of the original operator
};

// Per-site inverses via the adjugate; throws SingularError naming the site
// if |det S_k| falls below 1e-12 times the row-norm product.
SloccInverse slocc_inverse(const SloccOperator& s);

// psi^T (x factors) psi with NO complex conjugation; sites absent from the
// factor list act as identity. Fixed summation order.
cd bilinear_form(const StateVector& psi, const std::vector<std::pair<int, Mat2>>& factors);

// Z_{j(1)} |g>: sign flips of the graph state on the sites selected by j.
StateVector zbasis_vector(const Graph& g, Bits j, int dense_limit = 12);

// Exact application of a Pauli word (phase included).
StateVector apply_pauli(const StateVector& psi, const PauliWord& p);

// The word as per-site local matrices with the global phase folded into
// site 0 (useful for stabilizer gauge checks).
SloccOperator pauli_word_locals(const PauliWord& p);

// <a|b> with conjugation on a.
cd hermitian_dot(const StateVector& a, const StateVector& b);
// a^T b, no conjugation, fixed order.
cd bilinear_dot(const StateVector& a, const StateVector& b);
double norm(const StateVector& a);

DenseMatrix slocc_dense(const SloccOperator& s, int dense_limit = 10);

}  // namespace gslocc
