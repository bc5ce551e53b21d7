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

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "gslocc/state.hpp"

namespace gslocc {

// Deterministic splitmix64 stream. Hand rolled so that seeded runs are
// bit-reproducible across standard libraries.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller.
    double gauss() {
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Standard complex normal (unit total variance).
    cd cgauss() { return cd{gauss(), gauss()} * std::sqrt(0.5); }

    Rng fork(std::uint64_t stream) const {
        Rng r(state ^ (0xa0761d6478bd642full * (stream + 1)));
        r.u64();
        return r;
    }
};

// Condition number of a 2x2 matrix (ratio of singular values).
inline double condition_number(const Mat2& m) {
    const double f2 = m.frobenius() * m.frobenius();
    const double d = std::abs(m.det());
    // singular values: s^2 = (f2 +- sqrt(f2^2 - 4 d^2)) / 2
    const double disc = std::sqrt(std::max(0.0, f2 * f2 - 4.0 * d * d));
    const double smax2 = 0.5 * (f2 + disc);
    const double smin2 = 0.5 * (f2 - disc);
    if (smin2 <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(smax2 / smin2);
}

// Random invertible local with standard complex Gaussian entries, resampled
// until the condition number is below cond_cap, then scaled to Frobenius
// norm sqrt(2) (the scale is SLOCC-irrelevant and keeps determinants tame).
inline Mat2 random_local(Rng& rng, double cond_cap = 20.0) {
    while (true) {
        Mat2 m = Mat2::of(rng.cgauss(), rng.cgauss(), rng.cgauss(), rng.cgauss());
        if (condition_number(m) > cond_cap) continue;
        const double f = m.frobenius();
        return (cd{std::sqrt(2.0) / f, 0.0}) * m;
    }
}

inline SloccOperator random_slocc_operator(Rng& rng, int n, double cond_cap = 20.0) {
    SloccOperator s;
    s.locals.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) s.locals.push_back(random_local(rng, cond_cap));
    return s;
}

}  // namespace gslocc
