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

#include "gslocc/io.hpp"

#include <fstream>
#include <sstream>

#include "gslocc/error.hpp"

namespace gslocc {

namespace {

ojson complex_to_json(cd v) { return ojson::array({v.real(), v.imag()}); }

cd complex_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(where + ": expected [re, im]");
    return cd{j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

Graph read_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

StateVector state_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("state JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("amplitudes"))
        throw ParseError("state JSON must be an object with \"n\" and \"amplitudes\"");
    const long long n = j["n"].get<long long>();
    if (n < 1 || n > 30) throw ParseError("\"n\" must be in 1..30 for dense states");
    const std::size_t dim = std::size_t{1} << n;
    if (!j["amplitudes"].is_array() || j["amplitudes"].size() != dim)
        throw ParseError("\"amplitudes\" must have exactly 2^n entries");
    StateVector psi;
    psi.n = static_cast<int>(n);
    psi.amp.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i)
        psi.amp.push_back(
            complex_from_json(j["amplitudes"][i], "amplitudes[" + std::to_string(i) + "]"));
    return psi;
}

std::string state_to_json(const StateVector& psi) {
    ojson j;
    j["n"] = psi.n;
    j["amplitudes"] = ojson::array();
    for (const cd& v : psi.amp) j["amplitudes"].push_back(complex_to_json(v));
    return j.dump();
}

StateVector read_state_file(const std::string& path) {
    return state_from_json(read_text_file(path));
}

void write_state_file(const std::string& path, const StateVector& psi) {
    write_text_file(path, state_to_json(psi) + "\n");
}

SloccOperator slocc_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("slocc JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("locals") || !j["locals"].is_array() ||
        j["locals"].empty() || j["locals"].size() > kMaxSites)
        throw ParseError("slocc JSON must be an object with a \"locals\" array of 1..64 entries");
    SloccOperator s;
    for (std::size_t k = 0; k < j["locals"].size(); ++k) {
        const auto& l = j["locals"][k];
        const std::string where = "locals[" + std::to_string(k) + "]";
        if (!l.is_array() || l.size() != 2 || !l[0].is_array() || l[0].size() != 2 ||
            !l[1].is_array() || l[1].size() != 2)
            throw ParseError(where + ": expected a 2x2 matrix");
        s.locals.push_back(Mat2::of(complex_from_json(l[0][0], where),
                                    complex_from_json(l[0][1], where),
                                    complex_from_json(l[1][0], where),
                                    complex_from_json(l[1][1], where)));
    }
    return s;
}

std::string slocc_to_json(const SloccOperator& s) {
    ojson j;
    j["locals"] = ojson::array();
    for (const Mat2& m : s.locals) {
        ojson row0 = ojson::array({complex_to_json(m.m[0][0]), complex_to_json(m.m[0][1])});
        ojson row1 = ojson::array({complex_to_json(m.m[1][0]), complex_to_json(m.m[1][1])});
        j["locals"].push_back(ojson::array({row0, row1}));
    }
    return j.dump();
}

SloccOperator read_slocc_file(const std::string& path) {
    return slocc_from_json(read_text_file(path));
}

void write_slocc_file(const std::string& path, const SloccOperator& s) {
    write_text_file(path, slocc_to_json(s) + "\n");
}

ojson condition_to_json(const Condition& c, int n) {
    ojson j;
    j["b"] = bits_to_string(c.b, n);
    j["j"] = bits_to_string(c.j, n);
    j["labels"] = c.labels;
    static const char* kAlpha[4] = {"1", "i", "-1", "-i"};
    j["alpha"] = kAlpha[c.alpha & 3];
    j["rhs"] = c.rhs == Rhs::DetS ? "detS" : "0";
    return j;
}

ojson group_to_json(const ConditionGroup& g) {
    ojson j;
    j["support"] = ojson::array();
    for (int site : bits_to_sites(g.support)) j["support"].push_back(site);
    j["category"] = category_name(g.category);
    j["conditions"] = ojson::array();
    for (const Condition& c : g.conditions) j["conditions"].push_back(condition_to_json(c, g.n));
    return j;
}

namespace {

ojson relation_to_json(const InvariantRelation& r) {
    ojson j;
    j["support"] = ojson::array();
    for (int site : bits_to_sites(r.support)) j["support"].push_back(site);
    j["kind"] = r.kind;
    if (r.slot >= 0) j["slot"] = r.slot;
    j["power"] = r.power;
    j["coeff"] = complex_to_json(r.h);
    j["measured"] = complex_to_json(r.g);
    j["scale"] = r.scale;
    return j;
}

}  // namespace

ojson verdict_to_json(const Verdict& v) {
    ojson j;
    j["outcome"] = outcome_name(v.outcome);
    j["stage"] = v.stage;
    if (v.outcome == Outcome::Equivalent) {
        ojson cert;
        cert["detS"] = complex_to_json(v.det_s);
        cert["verifyResidual"] = v.verify_residual;
        cert["maxConditionResidual"] = v.max_condition_residual;
        ojson locs = ojson::array();
        for (const Mat2& m : v.slocc->locals) {
            ojson row0 = ojson::array({complex_to_json(m.m[0][0]), complex_to_json(m.m[0][1])});
            ojson row1 = ojson::array({complex_to_json(m.m[1][0]), complex_to_json(m.m[1][1])});
            locs.push_back(ojson::array({row0, row1}));
        }
        cert["slocc"] = ojson{{"locals", locs}};
        j["certificate"] = cert;
    } else if (v.outcome == Outcome::NotEquivalent && v.witness) {
        ojson w;
        w["type"] = v.witness->type;
        if (!v.witness->detail.empty()) w["detail"] = v.witness->detail;
        w["margin"] = v.witness->margin;
        if (v.witness->type == "zero-condition-violation")
            w["value"] = complex_to_json(v.witness->value);
        ojson rels = ojson::array();
        for (const InvariantRelation& r : v.witness->relations)
            rels.push_back(relation_to_json(r));
        w["relations"] = rels;
        j["witness"] = w;
    }
    ojson summary;
    summary["bestSystemResidual"] = v.best_system_residual;
    summary["startsTried"] = v.starts_tried;
    summary["conditionsUsed"] = v.conditions_used;
    summary["unknowns"] = v.unknown_count;
    j["summary"] = summary;
    return j;
}

ojson separable_to_json(const SeparableOperator& op) {
    ojson j;
    j["n"] = op.n();
    ojson fs = ojson::array();
    for (const Mat2& m : op.factors) {
        ojson row0 = ojson::array({complex_to_json(m.m[0][0]), complex_to_json(m.m[0][1])});
        ojson row1 = ojson::array({complex_to_json(m.m[1][0]), complex_to_json(m.m[1][1])});
        fs.push_back(ojson::array({row0, row1}));
    }
    j["factors"] = fs;
    j["globalPhase"] = complex_to_json(op.global_phase);
    j["separabilityResidual"] = op.residual;
    return j;
}

}  // namespace gslocc
