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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mbst/circuit.h"
#include "mbst/compiler.h"
#include "mbst/executor.h"

namespace mbst {

inline constexpr double kPatternTolerance = 1e-9;
inline constexpr double kEndToEndTolerance = 1e-7;

/// Oracle: the circuit's gates applied directly, in order.
StateVector direct_simulate(const CircuitIR& ir, const StateVector& input);

/// Haar-random pure state: normalized complex Gaussian amplitudes.
StateVector random_state(std::size_t num_qubits, Rng& rng);

struct RandomCircuitOptions {
  std::size_t max_qubits = 4;
  std::size_t max_gates = 15;
  std::vector<GateKind> kinds = {GateKind::H, GateKind::T, GateKind::TDG, GateKind::CNOT};
};

/// Circuit with 1..max_qubits qubits (at least 2 when CNOT is allowed) and
/// 1..max_gates gates drawn uniformly from `kinds`.
CircuitIR random_circuit(Rng& rng, const RandomCircuitOptions& options = {});

/// One outcome branch of a pattern.
struct BranchRecord {
  OutcomeVector outcomes;
  double probability;
  /// Full register after the measurements, measured-out qubits included.
  StateVector post_state;
  /// Output qubits after detaching, output i at qubit i.
  StateVector output_state;
  PauliOp predicted_byproduct;
  /// Fidelity of output_state with byproduct * gate * input.
  double fidelity_vs_prediction;
};

/// Runs the pattern on `input` (input i at pattern.inputs[i], auxiliaries
/// in their preparation states) and forces every nonzero-probability outcome
/// sequence, depth first. The prediction uses pattern.gate unless `gate` is
/// given.
std::vector<BranchRecord> enumerate_branches(const MeasurementPattern& pattern,
                                             const StateVector& input,
                                             const std::optional<GateMatrix>& gate = std::nullopt);

struct BranchFailure {
  std::size_t state_index;
  OutcomeVector outcomes;
  double fidelity;
};

struct PatternReport {
  bool pass = true;
  std::size_t branches = 0;
  double min_fidelity = 1;
  double total_probability_error = 0;
  std::vector<BranchFailure> failures;
};

/// Passes iff every branch of every state reaches fidelity 1 - tol against
/// byproduct * gate * state and each state's branch probabilities sum to 1.
PatternReport verify_pattern(const MeasurementPattern& pattern, const GateMatrix& gate,
                             const std::vector<StateVector>& states,
                             double tol = kPatternTolerance);

struct VerifyOptions {
  Mode mode = Mode::kFaithful;
  /// Enumerate every tracked branch instead of sampling shots.
  bool enumerate = false;
  std::uint64_t seed = 0;
  std::size_t shots = 1;
  std::size_t max_rounds = kDefaultMaxRounds;
  double tol = kEndToEndTolerance;
};

struct ProgramCase {
  std::size_t input_index;
  /// Shot number, or branch number when enumerating.
  std::size_t run_index;
  double fidelity;
  std::size_t rounds;
  /// Error message when the run raised instead of finishing.
  std::string error;
  OutcomeVector outcomes;
};

struct ProgramReport {
  bool pass = true;
  std::size_t runs = 0;
  double min_fidelity = 1;
  std::vector<ProgramCase> failures;
};

/// Executes the program on each input and compares the logical output with
/// direct_simulate. Shot k of input i uses seed mix_seed(seed, i * shots + k).
/// Execution errors, MaxRoundsExceeded included, are reported failures.
ProgramReport verify_program(const MeasurementProgram& program, const CircuitIR& ir,
                             const std::vector<StateVector>& inputs,
                             const VerifyOptions& options = {});

struct RunStats {
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  /// Per step: counts of the step pattern's outcome strings ("+-+").
  std::vector<std::map<std::string, std::size_t>> outcome_frequencies;
  /// Pattern executions per step -> number of (shot, step) pairs.
  std::map<std::size_t, std::size_t> round_histogram;
  double mean_rounds = 0;
  /// Per shot, when an oracle was given.
  std::vector<double> fidelities;
  bool operator==(const RunStats&) const = default;
};

/// Runs `shots` executions, shot k seeded with mix_seed(seed, k). mean_rounds
/// averages pattern executions per step. Fidelities are filled when `oracle`
/// (the expected logical output) is given.
RunStats run_shots(const MeasurementProgram& program, const StateVector& input,
                   std::size_t shots, std::uint64_t seed, const ExecuteOptions& options = {},
                   const std::optional<StateVector>& oracle = std::nullopt);

}  // namespace mbst
