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
#include <cstddef>
#include <vector>

namespace gslocc {

using cd = std::complex<double>;

// Small dense complex matrix, row major. Only used for desk-scale
// verification (oracles, separable stabilizer construction).
struct DenseMatrix {
    std::size_t dim = 0;
    std::vector<cd> a;

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t d) : dim(d), a(d * d, cd{0.0, 0.0}) {}

    cd& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    const cd& at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

    static DenseMatrix identity(std::size_t d) {
        DenseMatrix m(d);
        for (std::size_t i = 0; i < d; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

inline DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    DenseMatrix r(x.dim);
    for (std::size_t i = 0; i < x.dim; ++i)
        for (std::size_t k = 0; k < x.dim; ++k) {
            cd v = x.at(i, k);
            if (v == cd{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < x.dim; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

inline DenseMatrix kron(const DenseMatrix& x, const DenseMatrix& y) {
    DenseMatrix r(x.dim * y.dim);
    for (std::size_t i = 0; i < x.dim; ++i)
        for (std::size_t j = 0; j < x.dim; ++j)
            for (std::size_t k = 0; k < y.dim; ++k)
                for (std::size_t l = 0; l < y.dim; ++l)
                    r.at(i * y.dim + k, j * y.dim + l) = x.at(i, j) * y.at(k, l);
    return r;
}

inline double max_abs_diff(const DenseMatrix& x, const DenseMatrix& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
    return m;
}

inline double frobenius_norm(const DenseMatrix& x) {
    double s = 0.0;
    for (const cd& v : x.a) s += std::norm(v);
    return std::sqrt(s);
}

}  // namespace gslocc
