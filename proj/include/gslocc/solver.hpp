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

#include <optional>
#include <string>
#include <vector>

#include "gslocc/moments.hpp"

namespace gslocc {

struct SolveConfig {
    double tol = 1e-9;          // decision tolerance (relative)
    std::uint64_t seed = 0;
    int multistart = 32;
    int max_support = -1;       // -1: the two smallest parity-admissible sizes
    int dense_limit = 12;
    std::size_t cap = 1'000'000;
};

// Machine-checkable evidence for a NotEquivalent verdict. Every variant can
// be re-derived from (psi, g) alone; reevaluate_witness does exactly that.
struct Witness {
    // "zero-condition-violation": a support-empty condition with rhs 0
    //     measured nonzero (value = measured scalar).
    // "det-forced-zero": the recorded invariant relations admit only
    //     det(S) = 0, impossible for invertible S.
    // "invariant-mismatch": two relations give irreconcilable det(S) values.
    // "zero-group-violation": an all-zero-rhs group measured nonzero.
    std::string type;
    std::vector<InvariantRelation> relations;
    Bits b = 0, j = 0;      // for condition-level witnesses
    cd value{};             // measured scalar for condition-level witnesses
    double margin = 0.0;    // violation size relative to scale
    std::string detail;
};

enum class Outcome { Equivalent, NotEquivalent, Inconclusive };

inline const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Equivalent: return "Equivalent";
        case Outcome::NotEquivalent: return "NotEquivalent";
        default: return "Inconclusive";
    }
}

struct Verdict {
    Outcome outcome = Outcome::Inconclusive;
    std::string stage;  // pipeline stage that settled the verdict

    // Equivalent: the certificate. slocc maps |g> to psi exactly (scale
    // folded in); both residuals are recomputed from the emitted operator.
    std::optional<SloccOperator> slocc;
    cd det_s{};
    double verify_residual = -1.0;
    double max_condition_residual = -1.0;

    // NotEquivalent:
    std::optional<Witness> witness;

    // Inconclusive summary (also informative on the other outcomes).
    double best_system_residual = -1.0;
    int starts_tried = 0;
    int conditions_used = 0;
    int unknown_count = 0;
};

// Fast rejection: evaluates the support-empty condition and the
// rhs-consistency relations among the single-site groups. Returns a witness
// if the state is provably not an image of the graph state.
std::optional<Witness> reject_fast(const StateVector& psi, const Graph& g, double tol = 1e-9);

// The staged polynomial system in the per-site unknown blocks. Unknowns are
// the trace-zero entries of Ztilde_k and Xtilde_k per site (Ytilde is
// eliminated as i*Xtilde*Ztilde) plus the shared scalar d = det(S). Residuals
// are the condition equations followed by the per-site algebra constraints
// det Xtilde = -1, det Ztilde = -1, tr(Xtilde Ztilde) = 0.
struct PolySystem {
    int n = 0;
    MomentTable moments;
    std::vector<ConditionGroup> groups;
    int num_vars() const { return 6 * n + 1; }  // complex unknowns
    int num_conditions = 0;

    // x: complex variable vector (6n+1). Residuals and the holomorphic
    // Jacobian d r_i / d x_j.
    void residuals(const std::vector<cd>& x, std::vector<cd>& r) const;
    void jacobian(const std::vector<cd>& x, std::vector<cd>& jac) const;  // row major
};

PolySystem assemble_system(const StateVector& psi, const Graph& g,
                           const std::vector<ConditionGroup>& groups);

// S_k with S Z S^{-1} ∝ ztilde and S X S^{-1} ∝ xtilde, built from the +1
// eigenvector of the normalized ztilde. Throws ReconstructError if ztilde is
// too close to degenerate.
Mat2 reconstruct_local(const Mat2& ztilde, const Mat2& xtilde);

// r = min_c ||S^{-1} psi - c g|| / ||S^{-1} psi||; (r <= tol, r).
std::pair<bool, double> verify_candidate(const StateVector& psi, const Graph& g,
                                         const SloccOperator& s, double tol);

Verdict solve(const StateVector& psi, const Graph& g, const SolveConfig& cfg = {});

// Recomputes every scalar recorded in the witness from (psi, g) and returns
// the largest absolute deviation from the recorded values.
double reevaluate_witness(const StateVector& psi, const Graph& g, const Witness& w);

}  // namespace gslocc
