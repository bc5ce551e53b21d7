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

#include <vector>

#include "gslocc/conditions.hpp"
#include "gslocc/state.hpp"

namespace gslocc {

// Linearization data for one condition group. With J the support sites in
// ascending order and m = |J|:
//
//   t[idx]     = psi^T [ Y everywhere, E_{u_s v_s} replacing Y at J_s ] psi,
//                idx in base 4 with digit s equal to 2*u_s + v_s,
//   theta[idx] = same with Y * P at the support sites, P in {X, Y, Z}
//                (base-3 digits; this is the value the condition takes when
//                the unknown letter equals the plain Pauli),
//   rho[idx]   = alpha^{-1} for the DetS member with that letter
//                combination, 0 otherwise.
//
// A condition with letters L and unknown blocks B_s evaluates to
//   value = sum_idx t[idx] * prod_s (Y * B_s)_{u_s v_s},
// and the group as a whole satisfies value[L] = rho[L] * det(S) for an
// equivalent state.
struct GroupMoments {
    Bits support = 0;
    Category category = Category::I;
    std::vector<int> sites;
    std::vector<cd> t;      // 4^m
    std::vector<cd> theta;  // 3^m
    std::vector<cd> rho;    // 3^m
    ConditionGroup group;
};

struct MomentTable {
    int n = 0;
    std::vector<GroupMoments> groups;
};

// psi should be normalized by the caller.
MomentTable build_moments(const StateVector& psi, const std::vector<ConditionGroup>& groups);

GroupMoments build_group_moments(const StateVector& psi, const ConditionGroup& group);

// Contracts the group tensor with arbitrary per-site 2x2 blocks (the letter
// unknowns); blocks[s] corresponds to sites[s] and is multiplied by Y
// internally. Returns the 3^m condition values when given the three Pauli
// letter blocks, or a single value via contract_letters.
cd contract_blocks(const GroupMoments& gm, const std::vector<Mat2>& y_times_blocks);

// Value of one condition of the group given per-site unknown blocks keyed
// by letter ('X','Y','Z' -> block).
cd condition_value(const GroupMoments& gm, const Condition& c, const std::vector<Mat2>& bx,
                   const std::vector<Mat2>& by, const std::vector<Mat2>& bz);

// One scalar consequence of the group conditions: h * d^power = g must hold
// for det(S) = d whenever the state is an image. h derives from the rho
// tensor alone (exact), g from measured moments. kind records which
// contraction produced it.
struct InvariantRelation {
    Bits support = 0;
    int slot = -1;
    int power = 0;  // power of d, or 0 for a relation with no d freedom
    cd h{};
    cd g{};
    double scale = 1.0;  // magnitude context for tolerances
    const char* kind = "";
};

// All implemented contraction invariants for one group (full square sum,
// per-slot Gram traces and determinants, matrix determinant for pairs,
// plus the direct norm check for all-zero-rhs groups).
std::vector<InvariantRelation> group_invariants(const GroupMoments& gm);

}  // namespace gslocc
