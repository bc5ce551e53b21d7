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

#include <string>

#include <json.hpp>

#include "gslocc/conditions.hpp"
#include "gslocc/genstab.hpp"
#include "gslocc/solver.hpp"
#include "gslocc/state.hpp"

namespace gslocc {

using ojson = nlohmann::ordered_json;

// File schemas. States: {"n":..., "amplitudes":[[re,im],...]} with basis
// index bit n-1-k carrying site k (site 0 is the most significant bit).
// SLOCC operators: {"locals":[[[ [re,im],[re,im] ],[ [re,im],[re,im] ]],...]}.

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

Graph read_graph_file(const std::string& path);

StateVector state_from_json(const std::string& text);
std::string state_to_json(const StateVector& psi);
StateVector read_state_file(const std::string& path);
void write_state_file(const std::string& path, const StateVector& psi);

SloccOperator slocc_from_json(const std::string& text);
std::string slocc_to_json(const SloccOperator& s);
SloccOperator read_slocc_file(const std::string& path);
void write_slocc_file(const std::string& path, const SloccOperator& s);

ojson condition_to_json(const Condition& c, int n);
ojson group_to_json(const ConditionGroup& g);
ojson verdict_to_json(const Verdict& v);
ojson separable_to_json(const SeparableOperator& op);

}  // namespace gslocc
