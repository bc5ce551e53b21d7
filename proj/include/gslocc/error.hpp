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

#include <stdexcept>
#include <string>

namespace gslocc {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (JSON graph files, graph6 strings, Pauli strings).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

// Operands of mismatched qubit count or index out of range.
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error("dimension error: " + msg) {}
};

// Request exceeds a configured dense/combinatorial limit.
struct CapacityError : Error {
    explicit CapacityError(const std::string& msg) : Error("capacity error: " + msg) {}
};

// A local operator that must be invertible is numerically singular.
struct SingularError : Error {
    explicit SingularError(const std::string& msg) : Error("singular operator: " + msg) {}
};

// Local operator reconstruction failed (degenerate eigenstructure).
struct ReconstructError : Error {
    explicit ReconstructError(const std::string& msg) : Error("reconstruction error: " + msg) {}
};

}  // namespace gslocc
