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

#include "mbst/circuit.h"

#include <charconv>

#include "mbst/errors.h"

namespace mbst {
namespace {

constexpr GateKind kKinds[] = {GateKind::H, GateKind::T, GateKind::TDG, GateKind::X,
                               GateKind::Y, GateKind::Z, GateKind::CNOT};

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::optional<std::size_t> parse_index(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::T: return "T";
    case GateKind::TDG: return "TDG";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view name) {
  for (GateKind k : kKinds) {
    if (gate_name(k) == name) return k;
  }
  return std::nullopt;
}

std::size_t gate_arity(GateKind kind) { return kind == GateKind::CNOT ? 2 : 1; }

GateMatrix gate_matrix(GateKind kind) { return gates::from_label(gate_name(kind)); }

CircuitIR parse_circuit(std::string_view text) {
  CircuitIR ir;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tokens = split(line);
    if (tokens.empty()) continue;

    if (!have_header) {
      if (tokens[0].text != "qubits") {
        throw ParseError(line_no, tokens[0].column, "missing 'qubits N' header");
      }
      if (tokens.size() != 2) {
        throw ParseError(line_no, tokens[0].column, "'qubits' takes exactly one count");
      }
      const auto n = parse_index(tokens[1].text);
      if (!n || *n == 0) {
        throw ParseError(line_no, tokens[1].column, "qubit count must be a positive integer");
      }
      ir.num_logical = *n;
      have_header = true;
      continue;
    }

    const auto kind = parse_gate_kind(tokens[0].text);
    if (!kind) {
      throw ParseError(line_no, tokens[0].column,
                       "unknown gate '" + std::string(tokens[0].text) + "'");
    }
    const std::size_t arity = gate_arity(*kind);
    if (tokens.size() != arity + 1) {
      throw ParseError(line_no, tokens[0].column,
                       std::string(gate_name(*kind)) + " takes " + std::to_string(arity) +
                           " operand(s), got " + std::to_string(tokens.size() - 1));
    }
    Gate gate{*kind, {}};
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const auto q = parse_index(tokens[i].text);
      if (!q) {
        throw ParseError(line_no, tokens[i].column,
                         "bad qubit index '" + std::string(tokens[i].text) + "'");
      }
      if (*q >= ir.num_logical) {
        throw ParseError(line_no, tokens[i].column,
                         "qubit " + std::to_string(*q) + " out of range for " +
                             std::to_string(ir.num_logical) + " qubits");
      }
      gate.operands.push_back(static_cast<Qubit>(*q));
    }
    if (arity == 2 && gate.operands[0] == gate.operands[1]) {
      throw ParseError(line_no, tokens[2].column, "CNOT operands must differ");
    }
    ir.gates.push_back(std::move(gate));
  }
  if (!have_header) {
    throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'qubits N' header");
  }
  return ir;
}

std::string to_text(const CircuitIR& circuit) {
  std::string out = "qubits " + std::to_string(circuit.num_logical) + "\n";
  for (const auto& g : circuit.gates) {
    out += gate_name(g.kind);
    for (Qubit q : g.operands) out += " " + std::to_string(q);
    out += '\n';
  }
  return out;
}

void validate(const CircuitIR& circuit) {
  if (circuit.num_logical == 0) throw InvalidArgument("circuit needs at least one qubit");
  for (const auto& g : circuit.gates) {
    if (g.operands.size() != gate_arity(g.kind)) {
      throw InvalidArgument(std::string(gate_name(g.kind)) + " has the wrong operand count");
    }
    for (Qubit q : g.operands) {
      if (q >= circuit.num_logical) {
        throw InvalidArgument("operand " + std::to_string(q) + " out of range");
      }
    }
    if (g.operands.size() == 2 && g.operands[0] == g.operands[1]) {
      throw InvalidArgument("CNOT operands must differ");
    }
  }
}

}  // namespace mbst
