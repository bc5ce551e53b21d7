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

#include "gslocc/state.hpp"

namespace gslocc {

// A tensor product of single-qubit operators, with the residual of the
// factorization against the dense operator it was extracted from.
struct SeparableOperator {
    std::vector<Mat2> factors;
    cd global_phase{1.0, 0.0};     // phase absorbed into factor 0
    double residual = 0.0;         // reconstruction residual vs dense reference

    int n() const { return static_cast<int>(factors.size()); }
};

// Builds the stabilizer element of index i from the projector sum
// sum_j (-1)^{i.j} |v_j><v_j| with v_j = Z_{j(1)} |g>, then factors the
// dense result into local +-Pauli matrices. Equals the symplectic
// stabilizer_element(g, i) up to the recorded global phase (asserted +-1).
SeparableOperator projector_stabilizer_element(const Graph& g, Bits i, int dense_limit = 10);

// Conjugates the projector element by S: factors T_k = S_k P_k S_k^{-1}.
// The result fixes psi = S|g>.
SeparableOperator general_stabilizer_element(const Graph& g, const SloccOperator& s, Bits i,
                                             int dense_limit = 10);

// ||(x T_k) psi - psi|| / ||psi||.
double verify_stabilizes(const StateVector& psi, const SeparableOperator& op);

}  // namespace gslocc
