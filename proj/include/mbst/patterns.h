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

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbst/observables.h"
#include "mbst/pauli.h"
#include "mbst/rng.h"
#include "mbst/statevec.h"

namespace mbst {

using OutcomeVector = std::vector<Outcome>;

/// "+-+" style rendering of an outcome vector.
std::string outcome_string(const OutcomeVector& outcomes);

/// Closed-form map from a pattern's outcomes to its Pauli byproduct.
enum class ByproductRule { kTransfer, kGeneralizedTransfer, kCnot, kTeleport };

std::string_view rule_name(ByproductRule rule);
std::optional<ByproductRule> parse_rule(std::string_view name);

/// One measurement of a pattern: the operator sign * observable. Recorded
/// outcomes are eigenvalues of the signed operator, so a sign of -1 relabels
/// the outcome of the physically measured token.
struct Measurement {
  Observable observable;
  int sign = 1;

  /// Token with a leading '-' when the sign is negative.
  std::string str() const;
  bool operator==(const Measurement&) const = default;
};

/// Qubits measured out by a pattern. They end in the joint eigenstate of the
/// listed measurements (with the recorded outcomes), unentangled from the rest.
struct DetachSpec {
  std::vector<Qubit> qubits;
  std::vector<std::size_t> measurements;

  bool operator==(const DetachSpec&) const = default;
};

/// Fresh state of an auxiliary qubit that makes the auxiliary-preparing
/// measurements of the pattern unbiased; used for branch enumeration.
struct AuxPreparation {
  Qubit qubit;
  std::array<Amplitude, 2> amplitudes;
};

/// A step of simulation: a fixed sequence of 1- and 2-qubit measurements that
/// applies `gate` to the inputs up to an outcome-dependent Pauli byproduct.
/// inputs[i] ends on outputs[i].
struct MeasurementPattern {
  ByproductRule rule;
  std::string gate_label;
  GateMatrix gate;
  std::vector<Qubit> inputs;
  std::vector<Qubit> aux;
  std::vector<Qubit> outputs;
  std::vector<Measurement> measurements;
  std::vector<DetachSpec> detach;
  std::vector<AuxPreparation> aux_prep;

  // Generalized transfer only: the pre-applied U and post-applied V, and the
  // images of X and Z under V used to commute the byproduct outward.
  std::string u_label = "I";
  std::string v_label = "I";
  CliffordImages v_images{PauliOp::x(0), PauliOp::z(0)};

  /// Every qubit the pattern touches, ascending.
  std::vector<Qubit> qubits() const;
  Qubit max_qubit() const;
  /// Same pattern with every qubit q replaced by physical_of[q].
  MeasurementPattern relabeled(const std::vector<Qubit>& physical_of) const;
};

/// Moves the state of a to b with measurements [X@b, Z@a*Z@b, X@a];
/// byproduct Z^((1-j*l)/2) X^((1-k)/2) on b.
MeasurementPattern transfer_pattern(Qubit a, Qubit b);

/// Transfer conjugated by a pre-applied U on a and a post-applied V on b:
/// measurements [(V X V^+)@b, (U^+ Z U)@a * (V Z V^+)@b, (U^+ X U)@a]. Every
/// branch leaves V sigma U |phi> on b, reported as sigma' (V U)|phi> with
/// sigma' = V sigma V^+. V must be Clifford. Labels name the gates in
/// serialized programs and must satisfy gates::from_label(label) == gate
/// when the pattern is to be serialized.
MeasurementPattern generalized_transfer_pattern(const GateMatrix& u, const GateMatrix& v, Qubit a,
                                                Qubit b, std::string u_label = "U",
                                                std::string v_label = "V");
MeasurementPattern generalized_transfer_pattern(std::string_view u_label,
                                                std::string_view v_label, Qubit a, Qubit b);

/// CNot (control a, target b) with one auxiliary c:
/// [Z@c, Z@a*X@c, Z@c*X@b, X@c]; byproduct Z^((1-j*l)/2) on a, X^((1-k*m)/2)
/// on b.
MeasurementPattern cnot_pattern(Qubit a, Qubit b, Qubit c);

/// Teleportation from a to c with two auxiliaries b, c: a Bell measurement on
/// (b, c) then on (a, b), each as the commuting pair X*X, Z*Z.
MeasurementPattern teleport_pattern(Qubit a, Qubit b, Qubit c);

/// Pauli byproduct on the output qubits for the recorded outcomes.
PauliOp byproduct(const MeasurementPattern& pattern, const OutcomeVector& outcomes);

/// Where measurement outcomes come from: a seeded generator (one draw per
/// measurement), a forced list consumed in order, or exploration (a forced
/// prefix, then the first possible outcome, logging the alternatives).
class OutcomeSource {
 public:
  explicit OutcomeSource(Rng& rng) : rng_(&rng) {}
  explicit OutcomeSource(std::vector<Outcome> forced) : forced_(std::move(forced)) {}
  static OutcomeSource explore(std::vector<Outcome> prefix);

  bool is_random() const { return rng_ != nullptr; }
  std::size_t consumed() const { return next_; }
  std::size_t remaining_forced() const { return forced_.size() - std::min(next_, forced_.size()); }

  struct Choice {
    Outcome outcome;
    bool alternative_possible;
  };
  /// Exploration log: one entry per measurement past the prefix.
  const std::vector<Choice>& choices() const { return choices_; }

  /// Measures sign * obs and returns the outcome of the signed operator.
  MeasureResult measure(const StateVector& state, const Observable& obs, int sign);

 private:
  Rng* rng_ = nullptr;
  std::vector<Outcome> forced_;
  bool exploring_ = false;
  std::size_t next_ = 0;
  std::vector<Choice> choices_;
};

/// Depth-first exploration of every outcome sequence with nonzero
/// probability. `run` is called once per branch with an exploring source and
/// must perform the same measurements for the same outcomes. Throws
/// InvalidArgument after max_branches branches.
void for_each_branch(const std::function<void(OutcomeSource&)>& run, std::size_t max_branches);

struct PatternRun {
  StateVector state;
  OutcomeVector outcomes;
  PauliOp byproduct;
  double probability;
};

/// Applies the measurements in order. Measured-out qubits stay in the state.
PatternRun run_pattern(const StateVector& state, const MeasurementPattern& pattern,
                       OutcomeSource& source);
PatternRun run_pattern(const StateVector& state, const MeasurementPattern& pattern,
                       const OutcomeVector& forced);

/// The expected states of the measured-out blocks after a run.
std::vector<Factor> measured_out_factors(const MeasurementPattern& pattern,
                                         const OutcomeVector& outcomes);

/// Full register for a pattern: `input` on the inputs (input qubit i at
/// pattern.inputs[i]), auxiliaries in their preparation states and any other
/// qubit up to max_qubit() in |0>.
StateVector prepare_input(const MeasurementPattern& pattern, const StateVector& input);

/// Detaches the measured-out blocks (and idle |0> qubits) and returns the
/// output register with qubit i = pattern.outputs[i].
StateVector extract_output(const MeasurementPattern& pattern, const StateVector& state,
                           const OutcomeVector& outcomes);

}  // namespace mbst
