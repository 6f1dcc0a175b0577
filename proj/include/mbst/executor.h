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
#include <string>
#include <vector>

#include "mbst/automaton.h"
#include "mbst/compiler.h"

namespace mbst {

struct ExecuteOptions {
  Mode mode = Mode::kFaithful;
  std::size_t max_rounds = kDefaultMaxRounds;
};

/// Correction style used for a family: transfers under O1, Hadamard pairs
/// under O2 (which has no Z*Z).
CorrectionStyle correction_style(Family family);

/// What happened during one program step.
struct StepTrace {
  std::size_t step;
  std::string gate;
  /// Signed measurement tokens of every pattern execution, step first.
  std::vector<std::vector<std::string>> observables;
  std::vector<OutcomeVector> outcomes;
  /// Byproduct of the step's own pattern (physical qubits).
  PauliOp byproduct;
  std::size_t rounds;
  /// Logical frame after the step (identity in faithful mode).
  PauliFrame frame;
};

struct ProgramRun {
  /// Logical register after the program (frame applied in tracked mode),
  /// logical qubit i at qubit i.
  StateVector logical_output;
  std::vector<StepTrace> steps;
  std::size_t total_rounds = 0;
  /// Physical position of each logical qubit at the end.
  std::vector<Qubit> final_map;
  /// Frame left by tracked execution, before it was applied.
  PauliFrame frame;
  /// Product of the Born probabilities of every outcome.
  double probability = 1;
};

/// Executes the program on `logical_input` (num_logical qubits). Faithful
/// runs correct every step in place; corrections may move logical qubits,
/// which later steps follow through a runtime relabeling. Tracked runs
/// conjugate each step by the current frame and apply the frame at the end.
/// Measured-out qubits are detached against the eigenstates their last
/// pattern left them in, so a pattern that leaves garbage entangled with the
/// logical register raises EntangledQubit or MarginalMismatch.
ProgramRun execute_program(const MeasurementProgram& program, const StateVector& logical_input,
                           const ExecuteOptions& options, OutcomeSource& source);

/// One outcome branch of a tracked program run.
struct ProgramBranch {
  OutcomeVector outcomes;
  double probability;
  StateVector logical_output;
};

/// Every tracked-mode branch with nonzero probability, depth first. Throws
/// InvalidArgument when there are more than max_branches.
std::vector<ProgramBranch> enumerate_program(const MeasurementProgram& program,
                                             const StateVector& logical_input,
                                             std::size_t max_branches = 1u << 16);

}  // namespace mbst
