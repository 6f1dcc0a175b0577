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

#include <gtest/gtest.h>

#include "mbst/errors.h"

namespace mbst {
namespace {

struct ParseFailure {
  std::string text;
  std::size_t line;
  std::size_t column;
};

TEST(Circuit, ParsesGatesAndComments) {
  const CircuitIR ir = parse_circuit(
      "# bell pair\n"
      "qubits 2\n"
      "\n"
      "H 0   # first\n"
      "  CNOT 0 1\n"
      "TDG 1\n"
      "T 0\n"
      "X 1\nY 0\nZ 1");
  EXPECT_EQ(ir.num_logical, 2u);
  const std::vector<Gate> want = {{GateKind::H, {0}},   {GateKind::CNOT, {0, 1}}, {GateKind::TDG, {1}},
                                  {GateKind::T, {0}},   {GateKind::X, {1}},       {GateKind::Y, {0}},
                                  {GateKind::Z, {1}}};
  EXPECT_EQ(ir.gates, want);
}

TEST(Circuit, EmptyBodyIsValid) {
  const CircuitIR ir = parse_circuit("qubits 3\n");
  EXPECT_EQ(ir.num_logical, 3u);
  EXPECT_TRUE(ir.gates.empty());
}

TEST(Circuit, ErrorsCarryPosition) {
  const std::vector<ParseFailure> cases = {
      {"H 0\n", 1, 1},
      {"", 1, 1},
      {"# only a comment\n", 1, 1},
      {"qubits\n", 1, 1},
      {"qubits 0\n", 1, 8},
      {"qubits two\n", 1, 8},
      {"qubits 2\nFOO 1\n", 2, 1},
      {"qubits 2\nH\n", 2, 1},
      {"qubits 2\nH 0 1\n", 2, 1},
      {"qubits 2\nCNOT 0\n", 2, 1},
      {"qubits 2\nH 2\n", 2, 3},
      {"qubits 2\n  H -1\n", 2, 5},
      {"qubits 2\nCNOT 1 1\n", 2, 8},
      {"qubits 2\nh 0\n", 2, 1},
  };
  for (const auto& c : cases) {
    try {
      parse_circuit(c.text);
      ADD_FAILURE() << "accepted: " << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), c.line) << c.text;
      EXPECT_EQ(e.column(), c.column) << c.text;
    }
  }
}

TEST(Circuit, TextRoundTrip) {
  const CircuitIR ir = parse_circuit("qubits 3\nH 2\nCNOT 2 0\nTDG 1\n");
  const std::string text = to_text(ir);
  EXPECT_EQ(text, "qubits 3\nH 2\nCNOT 2 0\nTDG 1\n");
  EXPECT_EQ(parse_circuit(text), ir);
}

TEST(Circuit, Validate) {
  EXPECT_NO_THROW(validate(CircuitIR{2, {{GateKind::CNOT, {1, 0}}}}));
  EXPECT_THROW(validate(CircuitIR{0, {}}), InvalidArgument);
  EXPECT_THROW(validate(CircuitIR{2, {{GateKind::CNOT, {1, 1}}}}), InvalidArgument);
  EXPECT_THROW(validate(CircuitIR{2, {{GateKind::H, {2}}}}), InvalidArgument);
  EXPECT_THROW(validate(CircuitIR{2, {{GateKind::H, {0, 1}}}}), InvalidArgument);
}

TEST(Circuit, GateNames) {
  for (GateKind k : {GateKind::H, GateKind::T, GateKind::TDG, GateKind::X, GateKind::Y,
                     GateKind::Z, GateKind::CNOT}) {
    EXPECT_EQ(parse_gate_kind(gate_name(k)), k);
    EXPECT_EQ(std::size_t(gate_matrix(k).arity()), gate_arity(k));
  }
  EXPECT_FALSE(parse_gate_kind("S").has_value());
}

}  // namespace
}  // namespace mbst
