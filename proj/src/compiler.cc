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

#include <algorithm>
#include <cstdio>

#include "mbst/errors.h"

namespace mbst {

std::string_view family_name(Family family) { return family == Family::kO1 ? "O1" : "O2"; }

Family parse_family(std::string_view name) {
  if (name == "O1") return Family::kO1;
  if (name == "O2") return Family::kO2;
  throw InvalidArgument("unknown observable family '" + std::string(name) + "'");
}

const std::set<std::string>& family_kinds(Family family) {
  static const std::set<std::string> o1 = {"Z", "X", "X+Y", "X-Y", "Z*Z", "Z*X"};
  static const std::set<std::string> o2 = {"Z", "X", "X+Y", "X-Y", "Z*X"};
  return family == Family::kO1 ? o1 : o2;
}

std::string family_slot(std::string_view kind) {
  if (kind == "X+Y" || kind == "X-Y") return "X+-Y";
  return std::string(kind);
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Qubit> MeasurementProgram::final_map() const {
  std::vector<Qubit> map = initial_map;
  for (const auto& step : steps) {
    const auto& p = step.pattern;
    for (auto& phys : map) {
      auto it = std::find(p.inputs.begin(), p.inputs.end(), phys);
      if (it != p.inputs.end()) phys = p.outputs[it - p.inputs.begin()];
    }
  }
  return map;
}

namespace {

class Lowering {
 public:
  Lowering(std::size_t n, MeasurementProgram& program) : program_(program) {
    for (Qubit q = 0; q < n; ++q) phys_.push_back(q);
    aux_ = static_cast<Qubit>(n);
  }

  // One generalized transfer from the logical qubit's position to the
  // auxiliary; the source becomes the next auxiliary.
  void one_qubit(std::string_view u, std::string_view v, Qubit logical, std::size_t source) {
    push(u == "I" && v == "I" ? transfer_pattern(phys_[logical], aux_)
                              : generalized_transfer_pattern(u, v, phys_[logical], aux_),
         {logical}, source);
    std::swap(phys_[logical], aux_);
  }

  void cnot(Qubit control, Qubit target, std::size_t source) {
    push(cnot_pattern(phys_[control], phys_[target], aux_), {control, target}, source);
  }

 private:
  void push(MeasurementPattern p, std::vector<Qubit> logical, std::size_t source) {
    std::string label = p.gate_label;
    program_.steps.push_back({std::move(label), std::move(logical), source, std::move(p)});
  }

  MeasurementProgram& program_;
  std::vector<Qubit> phys_;
  Qubit aux_;
};

}  // namespace

MeasurementProgram compile(const CircuitIR& ir, Family family, const CompileOptions& options) {
  validate(ir);
  MeasurementProgram program;
  program.family = family;
  program.num_logical = ir.num_logical;
  program.num_physical = ir.gates.empty() ? ir.num_logical : ir.num_logical + 1;
  for (Qubit q = 0; q < ir.num_logical; ++q) program.initial_map.push_back(q);

  const std::string text = to_text(ir);
  program.metadata.source_hash = fnv1a_hex(text);
  if (options.embed_source) program.metadata.source = text;
  program.metadata.dagger_resolution = std::string(kDaggerResolution);
  program.metadata.options = options;

  Lowering lower(ir.num_logical, program);
  for (std::size_t g = 0; g < ir.gates.size(); ++g) {
    const Gate& gate = ir.gates[g];
    if (gate.kind == GateKind::CNOT) {
      lower.cnot(gate.operands[0], gate.operands[1], g);
      continue;
    }
    const Qubit q = gate.operands[0];
    const std::string_view name = gate_name(gate.kind);
    if (family == Family::kO1) {
      lower.one_qubit(name, "I", q, g);
    } else if (gate.kind == GateKind::H) {
      lower.one_qubit("I", "H", q, g);
    } else {
      // G = H * (H G): a step of HG, then a step of H. For Pauli G the first
      // step's observables are those of an H step with relabeled outcomes.
      lower.one_qubit(name, "H", q, g);
      lower.one_qubit("I", "H", q, g);
    }
  }

  for (const auto& step : program.steps) {
    for (const auto& m : step.pattern.measurements) {
      if (!family_kinds(family).count(m.observable.kind())) {
        throw InvalidArgument("family " + std::string(family_name(family)) + " cannot express " +
                              step.gate + " (observable " + m.observable.token() + ")");
      }
    }
  }
  return program;
}

ObservableCensus observables_report(const MeasurementProgram& program) {
  ObservableCensus census;
  for (const auto& step : program.steps) {
    for (const auto& m : step.pattern.measurements) {
      const std::string kind = m.observable.kind();
      ++census.kinds[kind];
      ++census.slots[family_slot(kind)];
      if (!family_kinds(program.family).count(kind)) census.within_family = false;
    }
  }
  for (const auto& [kind, count] : census.kinds) {
    if (kind.find('*') != std::string::npos) ++census.two_qubit_kinds;
  }
  return census;
}

PatternResources pattern_resources(const MeasurementPattern& pattern) {
  PatternResources r{pattern.aux.size(), pattern.measurements.size(), 0};
  for (const auto& m : pattern.measurements) {
    if (m.observable.arity() == 2) ++r.two_qubit_measurements;
  }
  return r;
}

ResourceReport resource_report(const MeasurementProgram& program) {
  ResourceReport r;
  r.auxiliary_qubits = program.num_physical - program.num_logical;
  r.steps = program.steps.size();
  bool any_two_qubit_step = false;
  for (const auto& step : program.steps) {
    const PatternResources pr = pattern_resources(step.pattern);
    r.total_measurements += pr.measurements;
    r.two_qubit_measurements += pr.two_qubit_measurements;
    any_two_qubit_step |= step.pattern.inputs.size() == 2;
  }
  if (!program.steps.empty()) {
    r.baseline_auxiliary_qubits = any_two_qubit_step ? r.baseline.aux_per_two_qubit_step
                                                     : r.baseline.aux_per_one_qubit_step;
  }
  return r;
}

}  // namespace mbst
