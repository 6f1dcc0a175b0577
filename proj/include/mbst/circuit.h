// Copyright 2026 The mbst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbst/statevec.h"

namespace mbst {

enum class GateKind { H, T, TDG, X, Y, Z, CNOT };

std::string_view gate_name(GateKind kind);
std::optional<GateKind> parse_gate_kind(std::string_view name);
std::size_t gate_arity(GateKind kind);
GateMatrix gate_matrix(GateKind kind);

struct Gate {
  GateKind kind;
  std::vector<Qubit> operands;

  bool operator==(const Gate&) const = default;
};

/// Gate circuit over num_logical qubits; operands in range, CNOT operands
/// distinct.
struct CircuitIR {
  std::size_t num_logical = 0;
  std::vector<Gate> gates;

  bool operator==(const CircuitIR&) const = default;
};

/// Parses the line-based `.qc` format:
///
///     # comment
///     qubits 2
///     H 0
///     CNOT 0 1
///
/// Throws ParseError carrying the 1-based line and column.
CircuitIR parse_circuit(std::string_view text);

/// Canonical `.qc` text (header plus one gate per line, no comments).
std::string to_text(const CircuitIR& circuit);

/// Validates operands; throws InvalidArgument.
void validate(const CircuitIR& circuit);

}  // namespace mbst
