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
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mbst/circuit.h"
#include "mbst/patterns.h"

namespace mbst {

/// Universal observable families. O1 = {Z, X, X+-Y, Z*Z, Z*X} lowers
/// {H, T, CNot} directly; O2 = {Z, X, X+-Y, Z*X} lowers {H, HT, CNot} and has a
/// single two-qubit observable. X+Y and X-Y share one family slot.
enum class Family { kO1, kO2 };

std::string_view family_name(Family family);
Family parse_family(std::string_view name);

/// Observable kinds (see Observable::kind) allowed in the family.
const std::set<std::string>& family_kinds(Family family);

/// Family slot of an observable kind: "X+Y" and "X-Y" map to "X+-Y", every
/// other kind to itself.
std::string family_slot(std::string_view kind);

struct CompileOptions {
  /// Store the canonical circuit text in the program metadata so `run` can
  /// compare against the direct simulation.
  bool embed_source = true;
};

struct ProgramStep {
  /// Label of the unitary this step simulates.
  std::string gate;
  /// Logical operands.
  std::vector<Qubit> logical;
  /// Index of the circuit gate this step belongs to.
  std::size_t source_gate;
  /// Pattern bound to physical qubits.
  MeasurementPattern pattern;
};

struct ProgramMetadata {
  /// FNV-1a 64 of the canonical circuit text, 16 hex digits.
  std::string source_hash;
  /// Canonical circuit text; empty when not embedded.
  std::string source;
  /// Which of X+Y and X-Y each T-type step measures.
  std::string dagger_resolution;
  CompileOptions options;
};

/// Circuit lowered to measurement patterns on num_logical + 1 physical
/// qubits (num_logical when there are no gates).
struct MeasurementProgram {
  int version = 1;
  Family family = Family::kO1;
  std::size_t num_logical = 0;
  std::size_t num_physical = 0;
  /// initial_map[logical] = physical.
  std::vector<Qubit> initial_map;
  std::vector<ProgramStep> steps;
  ProgramMetadata metadata;

  /// Logical placement after every step, following the output maps.
  std::vector<Qubit> final_map() const;
};

inline constexpr std::string_view kDaggerResolution = "T:X-Y TDG:X+Y";

std::string fnv1a_hex(std::string_view text);

/// Lowers the circuit under the family. Qubit reuse is unconditional: each
/// 1-qubit step leaves its source measured out and that qubit becomes the
/// next auxiliary; a CNot step reclaims its auxiliary.
MeasurementProgram compile(const CircuitIR& ir, Family family, const CompileOptions& options = {});

/// Census of observable kinds with use counts.
struct ObservableCensus {
  std::map<std::string, std::size_t> kinds;
  /// Same counts grouped by family slot (X+Y and X-Y merged).
  std::map<std::string, std::size_t> slots;
  std::size_t two_qubit_kinds = 0;
  bool within_family = true;
};

ObservableCensus observables_report(const MeasurementProgram& program);

/// Reference constants of the teleportation-based scheme.
struct TeleportationBaseline {
  std::size_t aux_per_one_qubit_step = 2;
  std::size_t aux_per_two_qubit_step = 4;
  std::vector<std::string> leung_family = {"X*X", "Z*Z", "X*Z", "X+Y*X"};
};

struct ResourceReport {
  std::size_t auxiliary_qubits = 0;
  std::size_t total_measurements = 0;
  std::size_t two_qubit_measurements = 0;
  std::size_t steps = 0;
  /// Auxiliary qubits the teleportation scheme would need for the same steps.
  std::size_t baseline_auxiliary_qubits = 0;
  TeleportationBaseline baseline;
};

ResourceReport resource_report(const MeasurementProgram& program);

/// Auxiliary and measurement counts of a single pattern.
struct PatternResources {
  std::size_t auxiliary_qubits;
  std::size_t measurements;
  std::size_t two_qubit_measurements;
};

PatternResources pattern_resources(const MeasurementPattern& pattern);

/// Program file (JSON). Keys are emitted in sorted order so that identical
/// programs serialize byte-identically.
std::string to_json(const MeasurementProgram& program);
/// Throws FormatError on malformed content, including patterns that do not
/// match what their recorded parameters rebuild.
MeasurementProgram program_from_json(std::string_view text);

}  // namespace mbst
