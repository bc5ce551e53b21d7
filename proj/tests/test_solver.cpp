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

#include <doctest.h>

#include "gslocc/error.hpp"
#include "gslocc/rand.hpp"
#include "gslocc/solver.hpp"
#include "test_helpers.hpp"

using namespace gslocc;
using namespace gslocc::testing;

TEST_CASE("reject_fast accepts the graph state itself") {
    const Graph p3 = path_graph(3);
    CHECK_FALSE(reject_fast(build_graph_state(p3), p3).has_value());

    Rng rng(71);
    for (int it = 0; it < 10; ++it) {
        const int n = 2 + static_cast<int>(rng.u64() % 6);
        const Graph g = random_connected_graph(rng, n);
        const SloccOperator s = random_slocc_operator(rng, n);
        const StateVector psi = apply_slocc(s, build_graph_state(g, 12));
        CHECK_FALSE(reject_fast(psi, g).has_value());
    }
}

TEST_CASE("reject_fast rejects the three-qubit product state") {
    const Graph p3 = path_graph(3);
    const auto w = reject_fast(basis_state(3, 0), p3);
    REQUIRE(w.has_value());
    CHECK(w->type == "det-forced-zero");
    CHECK(reevaluate_witness(basis_state(3, 0), p3, *w) < 1e-12);
}

TEST_CASE("generic perturbations violate the no-unknown condition at even n") {
    Rng rng(72);
    int rejected = 0;
    const Graph p4 = path_graph(4);
    for (int it = 0; it < 10; ++it) {
        const SloccOperator s = random_slocc_operator(rng, 4);
        StateVector psi = apply_slocc(s, build_graph_state(p4));
        const double scale = norm(psi);
        for (cd& a : psi.amp) a += 0.05 * scale * rng.cgauss() / 4.0;
        const auto w = reject_fast(psi, p4);
        if (w && w->type == "zero-condition-violation") {
            ++rejected;
            CHECK(reevaluate_witness(psi, p4, *w) < 1e-12);
        }
    }
    CHECK(rejected >= 8);
}

TEST_CASE("w state is not equivalent to the three-qubit path") {
    const Verdict v = solve(w_state(), path_graph(3), {});
    CHECK(v.outcome == Outcome::NotEquivalent);
    CHECK(v.stage == "reject_fast");
    REQUIRE(v.witness.has_value());
    // the witness re-derives bit-exactly from the inputs
    CHECK(reevaluate_witness(w_state(), path_graph(3), *v.witness) < 1e-12);
}

TEST_CASE("product states are not equivalent to connected graph states") {
    Rng rng(73);
    for (int n = 2; n <= 6; ++n) {
        const Graph g = random_connected_graph(rng, n);
        const Verdict v = solve(basis_state(n, 0), g, {});
        CHECK(v.outcome == Outcome::NotEquivalent);
        REQUIRE(v.witness.has_value());
        CHECK(reevaluate_witness(basis_state(n, 0), g, *v.witness) < 1e-12);
    }
}

TEST_CASE("solve certifies constructed images") {
    Rng rng(74);
    for (int it = 0; it < 10; ++it) {
        const int n = 3 + (it % 3);
        const Graph g = random_connected_graph(rng, n);
        const SloccOperator s0 = random_slocc_operator(rng, n);
        const StateVector psi = apply_slocc(s0, build_graph_state(g, 12));
        SolveConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(it);
        const Verdict v = solve(psi, g, cfg);
        REQUIRE(v.outcome == Outcome::Equivalent);
        CHECK(v.verify_residual < 1e-9);
        CHECK(v.max_condition_residual < 1e-8);
        // the certificate maps |g> to psi itself (scale folded in)
        const StateVector image = apply_slocc(*v.slocc, build_graph_state(g, 12));
        double diff = 0.0;
        for (std::size_t i = 0; i < psi.dim(); ++i) diff += std::norm(image.amp[i] - psi.amp[i]);
        CHECK(std::sqrt(diff) / norm(psi) < 1e-8);
        // detS of the certificate matches its operator
        CHECK(std::abs(v.slocc->det() - v.det_s) < 1e-12 * (1.0 + std::abs(v.det_s)));
    }
}

TEST_CASE("solve on the graph state itself returns the identity certificate") {
    const Graph p3 = path_graph(3);
    const Verdict v = solve(build_graph_state(p3), p3, {});
    REQUIRE(v.outcome == Outcome::Equivalent);
    CHECK(std::abs(v.det_s - cd{1, 0}) < 1e-12);
    CHECK(v.verify_residual < 1e-12);
}

TEST_CASE("solve is deterministic for a fixed seed") {
    Rng rng(75);
    const Graph g = random_connected_graph(rng, 5);
    const SloccOperator s0 = random_slocc_operator(rng, 5);
    const StateVector psi = apply_slocc(s0, build_graph_state(g, 12));
    SolveConfig cfg;
    cfg.seed = 9;
    const Verdict a = solve(psi, g, cfg);
    const Verdict b = solve(psi, g, cfg);
    REQUIRE(a.outcome == Outcome::Equivalent);
    REQUIRE(b.outcome == Outcome::Equivalent);
    CHECK(a.slocc->locals[0].m[0][0] == b.slocc->locals[0].m[0][0]);
    CHECK(a.det_s == b.det_s);
    CHECK(a.starts_tried == b.starts_tried);
}

TEST_CASE("reconstruct_local") {
    // (Z, X) -> identity up to column scaling
    const Mat2 s1 = reconstruct_local(pauli_matrix('Z'), pauli_matrix('X'));
    const SloccOperator op1{{s1}};
    const Mat2 i1 = slocc_inverse(op1).inverse.locals[0];
    CHECK((s1 * pauli_matrix('Z') * i1 - pauli_matrix('Z')).max_abs() < 1e-12);
    CHECK((s1 * pauli_matrix('X') * i1 - pauli_matrix('X')).max_abs() < 1e-12);

    // (X, Z): a Hadamard-like rotation, checked by conjugation round trip
    const Mat2 s2 = reconstruct_local(pauli_matrix('X'), pauli_matrix('Z'));
    const SloccOperator op2{{s2}};
    const Mat2 i2 = slocc_inverse(op2).inverse.locals[0];
    CHECK((s2 * pauli_matrix('Z') * i2 - pauli_matrix('X')).max_abs() < 1e-12);
    CHECK((s2 * pauli_matrix('X') * i2 - pauli_matrix('Z')).max_abs() < 1e-12);

    // random conjugations are recovered up to gauge
    Rng rng(76);
    for (int it = 0; it < 50; ++it) {
        const Mat2 t = random_invertible(rng);
        const Mat2 tinv = (cd{1, 0} / t.det()) * t.adjugate();
        const Mat2 zt = t * pauli_matrix('Z') * tinv;
        const Mat2 xt = t * pauli_matrix('X') * tinv;
        const Mat2 s = reconstruct_local(zt, xt);
        const SloccOperator op{{s}};
        const Mat2 si = slocc_inverse(op).inverse.locals[0];
        CHECK((s * pauli_matrix('Z') * si - zt).max_abs() < 1e-10);
        CHECK((s * pauli_matrix('X') * si - xt).max_abs() < 1e-10);
    }

    CHECK_THROWS_AS(reconstruct_local(Mat2::of(1, 0, 0, 1), pauli_matrix('X')),
                    ReconstructError);
}

TEST_CASE("verify_candidate") {
    Rng rng(77);
    const Graph p3 = path_graph(3);
    const SloccOperator s = random_slocc_operator(rng, 3);
    const StateVector psi = apply_slocc(s, build_graph_state(p3));

    const auto [ok, res] = verify_candidate(psi, p3, s, 1e-9);
    CHECK(ok);
    CHECK(res < 1e-12);

    // wrong graph: the candidate fails decisively
    const auto [bad, bres] = verify_candidate(psi, complete_graph(3), s, 1e-9);
    CHECK_FALSE(bad);
    CHECK(bres > 0.1);

    // stabilizer gauge: S * (element as locals) verifies as well
    for (Bits b = 0; b < 8; ++b) {
        const SloccOperator gauge = pauli_word_locals(stabilizer_element(p3, b));
        SloccOperator s2;
        for (int k = 0; k < 3; ++k)
            s2.locals.push_back(s.locals[static_cast<std::size_t>(k)] *
                                gauge.locals[static_cast<std::size_t>(k)]);
        const auto [gok, gres] = verify_candidate(psi, p3, s2, 1e-9);
        CHECK(gok);
        CHECK(gres < 1e-10);
    }
}

TEST_CASE("gauge copies verify on larger graphs") {
    Rng rng(78);
    for (int n = 4; n <= 6; ++n) {
        const Graph g = random_connected_graph(rng, n);
        const SloccOperator s = random_slocc_operator(rng, n);
        const StateVector psi = apply_slocc(s, build_graph_state(g, 12));
        for (int rep = 0; rep < 4; ++rep) {
            const Bits b = rng.u64() & all_sites_mask(n);
            const SloccOperator gauge = pauli_word_locals(stabilizer_element(g, b));
            SloccOperator s2;
            for (int k = 0; k < n; ++k)
                s2.locals.push_back(s.locals[static_cast<std::size_t>(k)] *
                                    gauge.locals[static_cast<std::size_t>(k)]);
            const auto [ok, res] = verify_candidate(psi, g, s2, 1e-9);
            CHECK(ok);
            CHECK(res < 1e-10);
        }
    }
}

TEST_CASE("assemble_system is satisfied by the known letters") {
    const Graph p3 = path_graph(3);
    const StateVector psi = build_graph_state(p3);
    const auto groups = scan(p3, 1);
    PolySystem sys = assemble_system(psi, p3, groups);
    CHECK(sys.num_conditions == 9);
    CHECK(sys.num_vars() == 19);

    std::vector<cd> x(static_cast<std::size_t>(sys.num_vars()), cd{0, 0});
    for (int k = 0; k < 3; ++k) {
        // Xt = X, Zt = Z
        x[6 * k + 1] = 1.0;
        x[6 * k + 2] = 1.0;
        x[6 * k + 3] = 1.0;
    }
    x[18] = 1.0;  // detS
    std::vector<cd> r;
    sys.residuals(x, r);
    for (const cd& v : r) CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("system jacobian matches finite differences") {
    Rng rng(79);
    const Graph p3 = path_graph(3);
    const SloccOperator s = random_slocc_operator(rng, 3);
    const StateVector psi0 = apply_slocc(s, build_graph_state(p3));
    StateVector psi = psi0;
    const double nn = norm(psi);
    for (cd& v : psi.amp) v /= nn;
    const auto groups = scan(p3, 3);
    PolySystem sys = assemble_system(psi, p3, groups);

    std::vector<cd> x(static_cast<std::size_t>(sys.num_vars()));
    for (cd& v : x) v = rng.cgauss();
    std::vector<cd> r0, jac;
    sys.residuals(x, r0);
    sys.jacobian(x, jac);
    const double h = 1e-7;
    for (int p = 0; p < sys.num_vars(); ++p) {
        std::vector<cd> xp = x;
        xp[static_cast<std::size_t>(p)] += h;
        std::vector<cd> rp;
        sys.residuals(xp, rp);
        for (std::size_t i = 0; i < r0.size(); ++i) {
            const cd fd = (rp[i] - r0[i]) / h;
            const cd an = jac[i * static_cast<std::size_t>(sys.num_vars()) +
                              static_cast<std::size_t>(p)];
            CHECK(std::abs(fd - an) < 1e-5 * (1.0 + std::abs(an)));
        }
    }
}

TEST_CASE("n = 1 and n = 2 solve") {
    Rng rng(80);
    for (int n = 1; n <= 2; ++n) {
        const Graph g = (n == 1) ? Graph::empty(1) : path_graph(2);
        const SloccOperator s = random_slocc_operator(rng, n);
        const StateVector psi = apply_slocc(s, build_graph_state(g));
        const Verdict v = solve(psi, g, {});
        REQUIRE(v.outcome == Outcome::Equivalent);
        CHECK(v.verify_residual < 1e-10);
    }
}

TEST_CASE("solve guards") {
    const Graph p3 = path_graph(3);
    StateVector bad = build_graph_state(p3);
    bad.amp[0] = cd{std::numeric_limits<double>::quiet_NaN(), 0};
    CHECK_THROWS_AS(solve(bad, p3, {}), Error);
    CHECK_THROWS_AS(solve(build_graph_state(p3), path_graph(4), {}), DimensionError);
}

TEST_CASE("four-qubit path system counts") {
    const Graph p4 = path_graph(4);
    const auto groups = scan(p4, 2);
    // one affine relation from the empty support plus bilinear pair groups
    REQUIRE(groups.size() == 7);
    CHECK(groups[0].support == 0);
    CHECK(groups[0].conditions.size() == 1);
    int pair_conditions = 0;
    for (std::size_t i = 1; i < groups.size(); ++i) {
        CHECK(popcount(groups[i].support) == 2);
        pair_conditions += static_cast<int>(groups[i].conditions.size());
    }
    CHECK(pair_conditions == 54);
    const PolySystem sys = assemble_system(build_graph_state(p4), p4, groups);
    CHECK(sys.num_conditions == 55);
}

TEST_CASE("perturbed images are rejected with reproducible witnesses") {
    Rng rng(82);
    int rejected = 0;
    for (int it = 0; it < 8; ++it) {
        const int n = 4 + (it % 2);  // both parities
        const Graph g = (n == 4) ? path_graph(4) : path_graph(5);
        const SloccOperator s = random_slocc_operator(rng, n);
        StateVector psi = apply_slocc(s, build_graph_state(g));
        const double scale = norm(psi);
        for (cd& a : psi.amp) a += 0.08 * scale * rng.cgauss() / static_cast<double>(1 << (n / 2));
        const Verdict v = solve(psi, g, {});
        if (v.outcome == Outcome::NotEquivalent) {
            ++rejected;
            REQUIRE(v.witness.has_value());
            CHECK(reevaluate_witness(psi, g, *v.witness) < 1e-12);
        }
    }
    CHECK(rejected >= 6);
}

TEST_CASE("single-qubit basis state is equivalent to the single-vertex state") {
    StateVector e0 = basis_state(1, 0);
    const Verdict v = solve(e0, Graph::empty(1), {});
    REQUIRE(v.outcome == Outcome::Equivalent);
    CHECK(v.verify_residual < 1e-10);
}

TEST_CASE("entanglement across an isolated vertex is rejected") {
    // Bell state against the edgeless two-vertex graph: the no-unknown
    // condition already catches it
    StateVector bell;
    bell.n = 2;
    bell.amp = {cd{std::sqrt(0.5), 0}, 0, 0, cd{std::sqrt(0.5), 0}};
    const Verdict v = solve(bell, Graph::empty(2), {});
    REQUIRE(v.outcome == Outcome::NotEquivalent);
    REQUIRE(v.witness.has_value());
    CHECK(reevaluate_witness(bell, Graph::empty(2), *v.witness) < 1e-12);

    // GHZ against an edge plus an isolated vertex: rank across the isolated
    // site certifies the mismatch
    StateVector ghz;
    ghz.n = 3;
    ghz.amp.assign(8, cd{0, 0});
    ghz.amp[0] = std::sqrt(0.5);
    ghz.amp[7] = std::sqrt(0.5);
    const Graph g = Graph::from_edges(3, {{0, 1}});
    const Verdict v2 = solve(ghz, g, {});
    REQUIRE(v2.outcome == Outcome::NotEquivalent);
    REQUIRE(v2.witness.has_value());
    CHECK(reevaluate_witness(ghz, g, *v2.witness) < 1e-12);
}

TEST_CASE("images of disconnected graphs are certified") {
    Rng rng(83);
    const Graph g = Graph::from_edges(5, {{0, 1}, {3, 4}});  // isolated vertex 2
    for (int it = 0; it < 6; ++it) {
        const SloccOperator s = random_slocc_operator(rng, 5);
        const StateVector psi = apply_slocc(s, build_graph_state(g));
        SolveConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(it);
        const Verdict v = solve(psi, g, cfg);
        REQUIRE(v.outcome == Outcome::Equivalent);
        CHECK(v.verify_residual < 1e-9);
    }
}
