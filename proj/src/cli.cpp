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

#include "gslocc/cli.hpp"

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "gslocc/error.hpp"
#include "gslocc/io.hpp"
#include "gslocc/rand.hpp"

namespace gslocc {

namespace {

int env_dense_limit(int fallback) {
    if (const char* v = std::getenv("GSLOCC_DENSE_LIMIT")) {
        const int k = std::atoi(v);
        if (k >= 1 && k <= 24) return k;
    }
    return fallback;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

struct CliState {
    std::string graph_path;
    std::string state_path;
    std::string slocc_path;
    std::string out_path;
    std::string out_state;
    std::string out_slocc;
    std::string category;
    std::string index;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int multistart = 32;
    int max_support = -1;
    int dense_limit = 0;  // resolved per command
    bool verify_only = false;
};

int cmd_graphstate(const CliState& st) {
    const Graph g = read_graph_file(st.graph_path);
    const StateVector psi = build_graph_state(g, st.dense_limit);
    emit(st.out_path, state_to_json(psi) + "\n");
    return 0;
}

int cmd_conditions(const CliState& st) {
    const Graph g = read_graph_file(st.graph_path);
    const int max_support = st.max_support < 0 ? ((g.n % 2 == 0) ? 2 : 3) : st.max_support;
    std::vector<ConditionGroup> groups;
    // The support-empty record is always shown, including the odd-n case
    // where it is Category I, since it is the one condition carrying no
    // unknowns at all.
    if (g.n % 2 == 1) groups.push_back(empty_support_group(g));
    auto scanned = scan(g, std::min(max_support, g.n));
    groups.insert(groups.end(), scanned.begin(), scanned.end());
    std::string out;
    for (const ConditionGroup& grp : groups) {
        if (!st.category.empty() && st.category != category_name(grp.category)) continue;
        out += group_to_json(grp).dump() + "\n";
    }
    emit(st.out_path, out);
    return 0;
}

int cmd_test(const CliState& st) {
    const Graph g = read_graph_file(st.graph_path);
    const StateVector psi = read_state_file(st.state_path);

    if (st.verify_only) {
        if (st.slocc_path.empty())
            throw Error("--verify-only requires --slocc with the candidate operator");
        const SloccOperator s = read_slocc_file(st.slocc_path);
        const auto [ok, res] = verify_candidate(psi, g, s, st.tol);
        ojson j;
        j["outcome"] = ok ? "Equivalent" : "NotEquivalent";
        j["stage"] = "verify-only";
        j["verifyResidual"] = res;
        emit(st.out_path, j.dump() + "\n");
        std::cerr << (ok ? "verified" : "verification failed") << " (residual " << res << ")\n";
        return ok ? 0 : 1;
    }

    SolveConfig cfg;
    cfg.tol = st.tol;
    cfg.seed = st.seed;
    cfg.multistart = st.multistart;
    cfg.max_support = st.max_support;
    cfg.dense_limit = st.dense_limit;
    const Verdict v = solve(psi, g, cfg);
    emit(st.out_path, verdict_to_json(v).dump() + "\n");
    std::cerr << outcome_name(v.outcome) << " (stage " << v.stage << ")\n";
    switch (v.outcome) {
        case Outcome::Equivalent: return 0;
        case Outcome::NotEquivalent: return 1;
        default: return 2;
    }
}

int cmd_random_slocc(const CliState& st) {
    const Graph g = read_graph_file(st.graph_path);
    Rng rng(st.seed * 0x2545f4914f6cdd1dull + 0x9e3779b97f4a7c15ull);
    const SloccOperator s = random_slocc_operator(rng, g.n);
    const StateVector psi = apply_slocc(s, build_graph_state(g, st.dense_limit));
    write_state_file(st.out_state, psi);
    write_slocc_file(st.out_slocc, s);
    return 0;
}

int cmd_genstab(const CliState& st) {
    const Graph g = read_graph_file(st.graph_path);
    const Bits idx = bits_from_string(st.index);
    if (static_cast<int>(st.index.size()) != g.n)
        throw DimensionError("--index must have exactly n bits");
    SeparableOperator op;
    double fix_residual;
    if (st.slocc_path.empty()) {
        op = projector_stabilizer_element(g, idx, st.dense_limit);
        fix_residual = verify_stabilizes(build_graph_state(g, st.dense_limit), op);
    } else {
        const SloccOperator s = read_slocc_file(st.slocc_path);
        op = general_stabilizer_element(g, s, idx, st.dense_limit);
        const StateVector psi = apply_slocc(s, build_graph_state(g, st.dense_limit));
        fix_residual = verify_stabilizes(psi, op);
    }
    ojson j = separable_to_json(op);
    j["index"] = st.index;
    j["fixpointResidual"] = fix_residual;
    emit(st.out_path, j.dump() + "\n");
    return 0;
}

int cmd_apply(const CliState& st) {
    const StateVector psi = read_state_file(st.state_path);
    const SloccOperator s = read_slocc_file(st.slocc_path);
    const StateVector out = apply_slocc(s, psi);
    emit(st.out_path, state_to_json(out) + "\n");
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"SLOCC equivalence between pure states and graph states, with certificates"};
    app.require_subcommand(1);
    CliState st;

    auto* graphstate = app.add_subcommand("graphstate", "build the dense graph state");
    graphstate->add_option("graph", st.graph_path, "graph file (JSON or graph6)")->required();
    graphstate->add_option("--out", st.out_path, "output path (default stdout)");
    graphstate->add_option("--dense-limit", st.dense_limit, "max qubits for dense states");

    auto* conditions = app.add_subcommand("conditions", "emit equivalence conditions as JSON lines");
    conditions->add_option("graph", st.graph_path)->required();
    conditions->add_option("--max-support", st.max_support, "largest unknown support to emit");
    conditions->add_option("--category", st.category, "filter by category (I, II, III)")
        ->check(CLI::IsMember({"I", "II", "III"}));
    conditions->add_option("--out", st.out_path);

    auto* test = app.add_subcommand("test", "decide SLOCC equivalence of a state and a graph state");
    test->add_option("state", st.state_path)->required();
    test->add_option("graph", st.graph_path)->required();
    test->add_option("--tol", st.tol, "relative decision tolerance");
    test->add_option("--seed", st.seed, "RNG seed");
    test->add_option("--multistart", st.multistart, "number of solver starts");
    test->add_option("--max-support", st.max_support, "largest condition support used");
    test->add_option("--dense-limit", st.dense_limit);
    test->add_option("--out", st.out_path);
    test->add_option("--slocc", st.slocc_path, "candidate operator for --verify-only");
    test->add_flag("--verify-only", st.verify_only, "only verify the given candidate");

    auto* random = app.add_subcommand("random-slocc", "sample a SLOCC image of the graph state");
    random->add_option("graph", st.graph_path)->required();
    random->add_option("--seed", st.seed)->required();
    random->add_option("--out-state", st.out_state, "state output path")
        ->default_val("state.json");
    random->add_option("--out-slocc", st.out_slocc, "operator output path")
        ->default_val("slocc.json");
    random->add_option("--dense-limit", st.dense_limit);

    auto* genstab = app.add_subcommand("genstab", "separable (generalized) stabilizer element");
    genstab->add_option("graph", st.graph_path)->required();
    genstab->add_option("--index", st.index, "element index as an n-bit string")->required();
    genstab->add_option("--slocc", st.slocc_path, "conjugating SLOCC operator file");
    genstab->add_option("--dense-limit", st.dense_limit);
    genstab->add_option("--out", st.out_path);

    auto* apply = app.add_subcommand("apply", "apply a SLOCC operator file to a state file");
    apply->add_option("state", st.state_path)->required();
    apply->add_option("slocc", st.slocc_path)->required();
    apply->add_option("--out", st.out_path);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : std::max(code, 3);
    }

    try {
        if (graphstate->parsed()) {
            if (st.dense_limit == 0) st.dense_limit = env_dense_limit(12);
            return cmd_graphstate(st);
        }
        if (conditions->parsed()) return cmd_conditions(st);
        if (test->parsed()) {
            if (st.dense_limit == 0) st.dense_limit = env_dense_limit(12);
            return cmd_test(st);
        }
        if (random->parsed()) {
            if (st.dense_limit == 0) st.dense_limit = env_dense_limit(12);
            return cmd_random_slocc(st);
        }
        if (genstab->parsed()) {
            if (st.dense_limit == 0) st.dense_limit = env_dense_limit(8);
            return cmd_genstab(st);
        }
        if (apply->parsed()) return cmd_apply(st);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace gslocc
