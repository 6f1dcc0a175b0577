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

#include "mbst/compiler.h"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "mbst/errors.h"
#include "mbst/harness.h"
#include "oracles.h"

namespace mbst {
namespace {

using oracle::Mat;
using oracle::Vec;

std::vector<std::string> tokens(const MeasurementPattern& p) {
  std::vector<std::string> out;
  for (const auto& m : p.measurements) out.push_back(m.str());
  return out;
}

Mat label_matrix(const std::string& label) {
  if (label == "I") return oracle::identity(2);
  if (label == "H") return oracle::hadamard();
  if (label == "T") return oracle::t_gate();
  if (label == "TDG") return oracle::adjoint(oracle::t_gate());
  if (label == "X") return oracle::pauli_x();
  if (label == "Y") return oracle::pauli_y();
  if (label == "Z") return oracle::pauli_z();
  ADD_FAILURE() << "unexpected label " << label;
  return oracle::identity(2);
}

// Product of what each step simulates, applied on logical qubits.
Vec simulate_steps(const MeasurementProgram& p, const Vec& input) {
  Vec state = input;
  for (const auto& s : p.steps) {
    if (s.pattern.rule == ByproductRule::kCnot) {
      state = oracle::act(oracle::two_qubit(oracle::cnot(), s.logical[0], s.logical[1], p.num_logical),
                          state);
    } else {
      const Mat m = oracle::mul(label_matrix(s.pattern.v_label), label_matrix(s.pattern.u_label));
      state = oracle::act(oracle::on_qubit(s.logical[0], m, p.num_logical), state);
    }
  }
  return state;
}

CircuitIR circuit(const std::string& text) { return parse_circuit(text); }

TEST(Family, NamesAndSlots) {
  EXPECT_EQ(family_name(Family::kO2), "O2");
  EXPECT_EQ(parse_family("O1"), Family::kO1);
  EXPECT_THROW(parse_family("O3"), InvalidArgument);
  EXPECT_EQ(family_slot("X+Y"), "X+-Y");
  EXPECT_EQ(family_slot("X-Y"), "X+-Y");
  EXPECT_EQ(family_slot("Z*X"), "Z*X");
  EXPECT_TRUE(family_kinds(Family::kO1).count("Z*Z"));
  EXPECT_FALSE(family_kinds(Family::kO2).count("Z*Z"));
  EXPECT_TRUE(family_kinds(Family::kO2).count("X-Y"));
}

TEST(Compile, HadamardPerFamily) {
  const MeasurementProgram o1 = compile(circuit("qubits 1\nH 0\n"), Family::kO1);
  ASSERT_EQ(o1.steps.size(), 1u);
  EXPECT_EQ(tokens(o1.steps[0].pattern), (std::vector<std::string>{"X@1", "X@0*Z@1", "Z@0"}));
  const MeasurementProgram o2 = compile(circuit("qubits 1\nH 0\n"), Family::kO2);
  ASSERT_EQ(o2.steps.size(), 1u);
  EXPECT_EQ(tokens(o2.steps[0].pattern), (std::vector<std::string>{"Z@1", "Z@0*X@1", "X@0"}));
  EXPECT_EQ(o2.num_physical, 2u);
  EXPECT_EQ(o2.final_map(), (std::vector<Qubit>{1}));
}

TEST(Compile, TUnderBothFamilies) {
  const MeasurementProgram o1 = compile(circuit("qubits 1\nT 0\n"), Family::kO1);
  ASSERT_EQ(o1.steps.size(), 1u);
  EXPECT_EQ(tokens(o1.steps[0].pattern), (std::vector<std::string>{"X@1", "Z@0*Z@1", "X-Y@0"}));
  const MeasurementProgram o2 = compile(circuit("qubits 1\nTDG 0\n"), Family::kO2);
  ASSERT_EQ(o2.steps.size(), 2u);
  EXPECT_EQ(o2.steps[0].gate, "HTDG");
  EXPECT_EQ(o2.steps[1].gate, "H");
  EXPECT_EQ(o2.steps[0].source_gate, 0u);
  EXPECT_EQ(o2.steps[1].source_gate, 0u);
  // The two steps bounce the qubit out and back.
  EXPECT_EQ(o2.final_map(), (std::vector<Qubit>{0}));
}

TEST(Compile, EmptyCircuit) {
  const MeasurementProgram p = compile(circuit("qubits 2\n"), Family::kO1);
  EXPECT_EQ(p.num_physical, 2u);
  EXPECT_TRUE(p.steps.empty());
  EXPECT_EQ(p.final_map(), (std::vector<Qubit>{0, 1}));
}

TEST(Compile, MetadataAndHash) {
  // FNV-1a 64 reference values.
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
  const CircuitIR ir = circuit("# c\nqubits 1\n H 0\n");
  const MeasurementProgram p = compile(ir, Family::kO1);
  EXPECT_EQ(p.metadata.source, "qubits 1\nH 0\n");
  EXPECT_EQ(p.metadata.source_hash, fnv1a_hex("qubits 1\nH 0\n"));
  EXPECT_EQ(p.metadata.dagger_resolution, kDaggerResolution);
  const MeasurementProgram q = compile(ir, Family::kO1, {.embed_source = false});
  EXPECT_TRUE(q.metadata.source.empty());
  EXPECT_EQ(q.metadata.source_hash, p.metadata.source_hash);
}

// Random circuits: step semantics, allocation and families.
TEST(Compile, RandomCircuitProperties) {
  Rng rng(2024);
  RandomCircuitOptions options;
  options.kinds = {GateKind::H, GateKind::T, GateKind::TDG, GateKind::X, GateKind::Y, GateKind::Z,
                   GateKind::CNOT};
  for (int i = 0; i < 60; ++i) {
    const CircuitIR ir = random_circuit(rng, options);
    for (Family f : {Family::kO1, Family::kO2}) {
      const MeasurementProgram p = compile(ir, f);
      EXPECT_EQ(p.num_physical, ir.gates.empty() ? ir.num_logical : ir.num_logical + 1);
      const Vec in = oracle::random_vec(ir.num_logical, i);
      EXPECT_LT(oracle::aligned_distance(simulate_steps(p, in), oracle::simulate(ir, in)), 1e-10);
      const ObservableCensus census = observables_report(p);
      EXPECT_TRUE(census.within_family);
      for (const auto& [kind, count] : census.kinds) {
        EXPECT_TRUE(family_kinds(f).count(kind)) << kind;
      }
      // Placement: each step acts where its logical operands currently are.
      std::vector<Qubit> where = p.initial_map;
      for (const auto& s : p.steps) {
        for (std::size_t k = 0; k < s.logical.size(); ++k) {
          EXPECT_EQ(s.pattern.inputs[k], where[s.logical[k]]);
          where[s.logical[k]] = s.pattern.outputs[k];
        }
        EXPECT_LT(s.pattern.max_qubit(), p.num_physical);
      }
      EXPECT_EQ(where, p.final_map());
    }
  }
}

TEST(Census, TwoQubitKinds) {
  const CircuitIR ir = circuit("qubits 2\nH 0\nT 1\nTDG 0\nCNOT 0 1\n");
  const ObservableCensus o1 = observables_report(compile(ir, Family::kO1));
  EXPECT_EQ(o1.two_qubit_kinds, 2u);
  const ObservableCensus o2 = observables_report(compile(ir, Family::kO2));
  EXPECT_EQ(o2.two_qubit_kinds, 1u);
  EXPECT_EQ(o2.slots.count("X+-Y"), 1u);
  EXPECT_EQ(o2.kinds.at("X-Y") + o2.kinds.at("X+Y"), o2.slots.at("X+-Y"));
  EXPECT_FALSE(o2.kinds.count("Z*Z"));
}

TEST(Resources, PatternsAndPrograms) {
  const PatternResources tr = pattern_resources(transfer_pattern(0, 1));
  EXPECT_EQ(tr.auxiliary_qubits, 1u);
  EXPECT_EQ(tr.measurements, 3u);
  EXPECT_EQ(tr.two_qubit_measurements, 1u);
  const PatternResources tp = pattern_resources(teleport_pattern(0, 1, 2));
  EXPECT_EQ(tp.auxiliary_qubits, 2u);
  EXPECT_EQ(tp.measurements, 4u);
  EXPECT_EQ(tp.two_qubit_measurements, 4u);

  const ResourceReport r = resource_report(compile(circuit("qubits 2\nH 0\nCNOT 0 1\n"), Family::kO1));
  EXPECT_EQ(r.steps, 2u);
  EXPECT_EQ(r.auxiliary_qubits, 1u);
  EXPECT_EQ(r.total_measurements, 7u);
  EXPECT_EQ(r.two_qubit_measurements, 3u);
  EXPECT_EQ(r.baseline.aux_per_one_qubit_step, 2u);
  EXPECT_EQ(r.baseline.aux_per_two_qubit_step, 4u);
  EXPECT_EQ(r.baseline.leung_family.size(), 4u);
}

TEST(ProgramJson, RoundTripIsByteIdentical) {
  const CircuitIR ir = circuit("qubits 3\nH 0\nT 2\nCNOT 2 1\nY 1\nTDG 0\nCNOT 0 2\n");
  for (Family f : {Family::kO1, Family::kO2}) {
    const MeasurementProgram p = compile(ir, f);
    const std::string text = to_json(p);
    const MeasurementProgram back = program_from_json(text);
    EXPECT_EQ(to_json(back), text);
    EXPECT_EQ(back.final_map(), p.final_map());
    EXPECT_EQ(back.steps.size(), p.steps.size());
    // Deterministic: compiling twice gives the same bytes.
    EXPECT_EQ(to_json(compile(ir, f)), text);
  }
}

TEST(ProgramJson, RejectsTampering) {
  const std::string text = to_json(compile(circuit("qubits 2\nT 0\nCNOT 0 1\n"), Family::kO2));
  auto mutate = [&](const std::function<void(nlohmann::json&)>& f) {
    nlohmann::json j = nlohmann::json::parse(text);
    f(j);
    return j.dump();
  };
  EXPECT_THROW(program_from_json("{"), FormatError);
  EXPECT_THROW(program_from_json("[]"), FormatError);
  EXPECT_THROW(program_from_json(mutate([](auto& j) { j["version"] = 2; })), FormatError);
  EXPECT_THROW(program_from_json(mutate([](auto& j) { j["family"] = "O9"; })), FormatError);
  EXPECT_THROW(program_from_json(mutate([](auto& j) { j["steps"][0]["measurements"][0] = "X@2"; })),
               FormatError);
  EXPECT_THROW(program_from_json(mutate([](auto& j) { j["steps"][0]["signs"][1] = -1; })),
               FormatError);
  EXPECT_THROW(program_from_json(mutate([](auto& j) { j["steps"][0]["u"] = "Q"; })), FormatError);
  EXPECT_THROW(program_from_json(mutate([](auto& j) { j["steps"][2].erase("inputs"); })),
               FormatError);
  EXPECT_THROW(program_from_json(mutate([](auto& j) { j["steps"][2]["output_map"][0][1] = 2; })),
               FormatError);
  EXPECT_NO_THROW(program_from_json(mutate([](auto&) {})));
}

}  // namespace
}  // namespace mbst
