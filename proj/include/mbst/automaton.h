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
#include <string_view>
#include <vector>

#include "mbst/patterns.h"

namespace mbst {

/// faithful: repeat correction steps until the byproduct is the identity.
/// tracked: run each step once and carry the byproduct in a classical frame.
enum class Mode { kFaithful, kTracked };

std::string_view mode_name(Mode mode);
Mode parse_mode(std::string_view name);

/// How a residual single-qubit Pauli sigma is stepped away.
enum class CorrectionStyle {
  /// One transfer with U = sigma (observables X, Z*Z, X).
  kTransfer,
  /// A step of H*sigma followed by a step of H (observables Z, Z*X, X), so
  /// corrections stay inside a family without Z*Z.
  kHadamardPair,
};

inline constexpr std::size_t kDefaultMaxRounds = 1000;

/// Step of simulation of sigma (restricted to qubit a) from a to b: a
/// generalized transfer with U = sigma, V = I. Conjugating Z and X by a Pauli
/// only flips signs, so the tokens are those of plain transfer and the signs
/// relabel outcomes.
MeasurementPattern correction_pattern(const PauliOp& sigma, Qubit a, Qubit b);

/// Gate label of a single-qubit Pauli factor: "I", "X", "Z" or "ZX".
std::string pauli_label(const PauliOp& sigma, Qubit q);

struct PatternExecution {
  MeasurementPattern pattern;
  OutcomeVector outcomes;
  PauliOp byproduct;
  double probability;
};

struct StepResult {
  StateVector final_state;
  /// Pattern executions, the step itself included.
  std::size_t rounds = 0;
  std::vector<PatternExecution> executions;
  /// Identity after a successful faithful step; the step's byproduct when
  /// tracked.
  PauliOp residual;
  /// Physical position of each output after corrections moved it.
  std::vector<Qubit> outputs;
  /// Qubits left measured out by the step, free for reuse.
  std::vector<Qubit> free_qubits;

  std::vector<OutcomeVector> outcome_log() const;
};

struct StepOptions {
  Mode mode = Mode::kFaithful;
  CorrectionStyle style = CorrectionStyle::kTransfer;
  std::size_t max_rounds = kDefaultMaxRounds;
  /// Correction order over the outputs (lower first); empty means output
  /// order.
  std::vector<std::size_t> correction_priority;
};

/// Runs `step` on `state`; in faithful mode loops corrections qubit by qubit
/// until the residual is the identity, throwing MaxRoundsExceeded when
/// options.max_rounds executions do not suffice.
StepResult full_step(const StateVector& state, const MeasurementPattern& step,
                     const StepOptions& options, OutcomeSource& source);

/// Classical Pauli frame over logical qubits.
using PauliFrame = PauliOp;

/// frame * byproduct, with byproduct factors moved from physical qubits to
/// logical ones through logical_of (physical -> logical). Throws when the
/// byproduct acts on an unmapped qubit.
PauliFrame frame_update(const PauliFrame& frame, const PauliOp& byproduct,
                        const std::map<Qubit, Qubit>& logical_of);

/// Conjugates every measurement by the frame (given on physical qubits). A
/// Pauli maps each axis to plus or minus itself or its X+Y/X-Y partner; the
/// sign is folded into the measurement so the byproduct rule reads the
/// outcomes unchanged.
MeasurementPattern conjugate_for_frame(const MeasurementPattern& pattern, const PauliOp& frame);

}  // namespace mbst
