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

// Program file format (JSON). Every pattern records the parameters it was
// built from; loading rebuilds it and checks the stored measurement list.

#include <json.hpp>

#include "mbst/compiler.h"
#include "mbst/errors.h"

namespace mbst {
namespace {

using nlohmann::json;

json pattern_to_json(const ProgramStep& step) {
  const MeasurementPattern& p = step.pattern;
  json j;
  j["gate"] = step.gate;
  j["logical"] = step.logical;
  j["source_gate"] = step.source_gate;
  j["byproduct_rule"] = std::string(rule_name(p.rule));
  if (p.rule == ByproductRule::kGeneralizedTransfer) {
    j["u"] = p.u_label;
    j["v"] = p.v_label;
  }
  j["inputs"] = p.inputs;
  j["aux"] = p.aux;
  json out_map = json::array();
  for (std::size_t i = 0; i < p.inputs.size(); ++i) {
    out_map.push_back({p.inputs[i], p.outputs[i]});
  }
  j["output_map"] = out_map;
  json tokens = json::array();
  json signs = json::array();
  for (const auto& m : p.measurements) {
    tokens.push_back(m.observable.token());
    signs.push_back(m.sign);
  }
  j["measurements"] = tokens;
  j["signs"] = signs;
  json detach = json::array();
  for (const auto& d : p.detach) {
    detach.push_back({{"qubits", d.qubits}, {"measurements", d.measurements}});
  }
  j["detach"] = detach;
  return j;
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

MeasurementPattern rebuild(const json& j) {
  const auto rule = parse_rule(field<std::string>(j, "byproduct_rule"));
  if (!rule) throw FormatError("unknown byproduct_rule");
  const auto inputs = field<std::vector<Qubit>>(j, "inputs");
  const auto aux = field<std::vector<Qubit>>(j, "aux");
  switch (*rule) {
    case ByproductRule::kTransfer:
      if (inputs.size() != 1 || aux.size() != 1) break;
      return transfer_pattern(inputs[0], aux[0]);
    case ByproductRule::kGeneralizedTransfer:
      if (inputs.size() != 1 || aux.size() != 1) break;
      return generalized_transfer_pattern(field<std::string>(j, "u"), field<std::string>(j, "v"),
                                          inputs[0], aux[0]);
    case ByproductRule::kCnot:
      if (inputs.size() != 2 || aux.size() != 1) break;
      return cnot_pattern(inputs[0], inputs[1], aux[0]);
    case ByproductRule::kTeleport:
      if (inputs.size() != 1 || aux.size() != 2) break;
      return teleport_pattern(inputs[0], aux[0], aux[1]);
  }
  throw FormatError("wrong number of inputs or auxiliaries for rule " +
                    field<std::string>(j, "byproduct_rule"));
}

ProgramStep step_from_json(const json& j, std::size_t index) {
  const std::string where = "step " + std::to_string(index) + ": ";
  MeasurementPattern p = [&] {
    try {
      return rebuild(j);
    } catch (const FormatError&) {
      throw;
    } catch (const Error& e) {
      throw FormatError(where + e.what());
    }
  }();
  ProgramStep step{field<std::string>(j, "gate"), field<std::vector<Qubit>>(j, "logical"),
                   field<std::size_t>(j, "source_gate"), std::move(p)};
  // The stored description must be exactly what the parameters rebuild.
  json expected = pattern_to_json(step);
  for (const char* key : {"output_map", "measurements", "signs", "detach"}) {
    if (!j.contains(key) || j.at(key) != expected.at(key)) {
      throw FormatError(where + "field '" + key + "' does not match its pattern");
    }
  }
  if (step.gate != step.pattern.gate_label) {
    throw FormatError(where + "gate label does not match its pattern");
  }
  return step;
}

}  // namespace

std::string to_json(const MeasurementProgram& program) {
  json j;
  j["version"] = program.version;
  j["family"] = std::string(family_name(program.family));
  j["num_logical"] = program.num_logical;
  j["num_physical"] = program.num_physical;
  j["initial_map"] = program.initial_map;
  json steps = json::array();
  for (const auto& s : program.steps) steps.push_back(pattern_to_json(s));
  j["steps"] = steps;
  j["metadata"] = {
      {"source_hash", program.metadata.source_hash},
      {"source", program.metadata.source},
      {"dagger_resolution", program.metadata.dagger_resolution},
      {"options", {{"embed_source", program.metadata.options.embed_source}}},
  };
  return j.dump(2) + "\n";
}

MeasurementProgram program_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("program is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("program must be a JSON object");
  MeasurementProgram program;
  program.version = field<int>(j, "version");
  if (program.version != 1) {
    throw FormatError("unsupported program version " + std::to_string(program.version));
  }
  try {
    program.family = parse_family(field<std::string>(j, "family"));
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
  program.num_logical = field<std::size_t>(j, "num_logical");
  program.num_physical = field<std::size_t>(j, "num_physical");
  program.initial_map = field<std::vector<Qubit>>(j, "initial_map");
  if (program.initial_map.size() != program.num_logical) {
    throw FormatError("initial_map length does not match num_logical");
  }
  const json& steps = j.at("steps");
  if (!steps.is_array()) throw FormatError("'steps' must be an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    program.steps.push_back(step_from_json(steps[i], i));
    if (program.steps.back().pattern.max_qubit() >= program.num_physical) {
      throw FormatError("step " + std::to_string(i) + " uses a qubit beyond num_physical");
    }
  }
  const json& meta = j.at("metadata");
  program.metadata.source_hash = field<std::string>(meta, "source_hash");
  program.metadata.source = field<std::string>(meta, "source");
  program.metadata.dagger_resolution = field<std::string>(meta, "dagger_resolution");
  if (meta.contains("options")) {
    program.metadata.options.embed_source = field<bool>(meta.at("options"), "embed_source");
  }
  return program;
}

}  // namespace mbst
