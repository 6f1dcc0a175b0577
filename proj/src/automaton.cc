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

#include "mbst/automaton.h"

#include <algorithm>
#include <set>

#include "mbst/errors.h"

namespace mbst {
namespace {

PatternExecution execute(StateVector& state, MeasurementPattern pattern, OutcomeSource& source) {
  PatternRun run = run_pattern(state, pattern, source);
  state = std::move(run.state);
  return {std::move(pattern), std::move(run.outcomes), std::move(run.byproduct), run.probability};
}

void check_rounds(std::size_t rounds, std::size_t needed, std::size_t max_rounds) {
  if (rounds + needed > max_rounds) {
    throw MaxRoundsExceeded("full simulation did not reach the identity within " +
                            std::to_string(max_rounds) + " pattern executions");
  }
}

}  // namespace

std::string_view mode_name(Mode mode) { return mode == Mode::kFaithful ? "faithful" : "tracked"; }

Mode parse_mode(std::string_view name) {
  if (name == "faithful") return Mode::kFaithful;
  if (name == "tracked") return Mode::kTracked;
  throw InvalidArgument("unknown mode '" + std::string(name) + "'");
}

std::string pauli_label(const PauliOp& sigma, Qubit q) {
  const bool x = sigma.x_bit(q);
  const bool z = sigma.z_bit(q);
  if (x && z) return "ZX";
  if (x) return "X";
  if (z) return "Z";
  return "I";
}

MeasurementPattern correction_pattern(const PauliOp& sigma, Qubit a, Qubit b) {
  for (Qubit q : sigma.support()) {
    if (q != a) {
      throw InvalidArgument("correction_pattern: sigma " + sigma.str() +
                            " acts beyond qubit " + std::to_string(a) +
                            "; split it per qubit");
    }
  }
  const std::string label = pauli_label(sigma, a);
  if (label == "I") return transfer_pattern(a, b);
  return generalized_transfer_pattern(label, "I", a, b);
}

std::vector<OutcomeVector> StepResult::outcome_log() const {
  std::vector<OutcomeVector> out;
  for (const auto& e : executions) out.push_back(e.outcomes);
  return out;
}

StepResult full_step(const StateVector& state, const MeasurementPattern& step,
                     const StepOptions& options, OutcomeSource& source) {
  if (options.max_rounds < 1) {
    throw InvalidArgument("max_rounds must be at least 1");
  }
  StepResult result{state, 0, {}, PauliOp(), {}, {}};
  result.executions.push_back(execute(result.final_state, step, source));
  result.rounds = 1;
  result.residual = result.executions.back().byproduct;
  result.outputs = step.outputs;
  {
    std::set<Qubit> dead(step.inputs.begin(), step.inputs.end());
    dead.insert(step.aux.begin(), step.aux.end());
    for (Qubit q : step.outputs) dead.erase(q);
    result.free_qubits.assign(dead.begin(), dead.end());
  }
  if (options.mode == Mode::kTracked) {
    return result;
  }

  std::vector<std::size_t> order(result.outputs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (!options.correction_priority.empty()) {
    if (options.correction_priority.size() != order.size()) {
      throw InvalidArgument("correction priority length does not match the outputs");
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return options.correction_priority[x] < options.correction_priority[y];
    });
  }

  while (!result.residual.is_identity()) {
    if (result.free_qubits.empty()) {
      throw InvalidArgument("step leaves no auxiliary qubit for corrections");
    }
    const std::size_t slot = *std::find_if(order.begin(), order.end(), [&](std::size_t i) {
      const Qubit q = result.outputs[i];
      return result.residual.x_bit(q) || result.residual.z_bit(q);
    });
    const Qubit p = result.outputs[slot];
    const Qubit aux = result.free_qubits.front();
    const PauliOp sigma = result.residual.restricted(p);
    PauliOp rest = result.residual;
    rest.set(p, false, false);

    if (options.style == CorrectionStyle::kTransfer) {
      check_rounds(result.rounds, 1, options.max_rounds);
      result.executions.push_back(
          execute(result.final_state, correction_pattern(sigma, p, aux), source));
      result.rounds += 1;
      // The state of p now sits on aux and p is measured out.
      result.residual = rest * result.executions.back().byproduct;
      result.outputs[slot] = aux;
      result.free_qubits.front() = p;
    } else {
      check_rounds(result.rounds, 2, options.max_rounds);
      const std::string label = pauli_label(sigma, p);
      result.executions.push_back(execute(
          result.final_state, generalized_transfer_pattern(label, "H", p, aux), source));
      const PauliOp first = result.executions.back().byproduct.moved(aux, p);
      result.executions.push_back(
          execute(result.final_state, generalized_transfer_pattern("I", "H", aux, p), source));
      result.rounds += 2;
      // sigma_B H sigma_A H = sigma_B (H sigma_A H): swap the x and z bits.
      const PauliOp swapped = PauliOp::single(p, first.z_bit(p), first.x_bit(p));
      result.residual = rest * result.executions.back().byproduct * swapped;
    }
  }
  return result;
}

PauliFrame frame_update(const PauliFrame& frame, const PauliOp& byproduct,
                        const std::map<Qubit, Qubit>& logical_of) {
  PauliFrame out = frame;
  for (Qubit q : byproduct.support()) {
    auto it = logical_of.find(q);
    if (it == logical_of.end()) {
      throw InvalidArgument("frame_update: byproduct acts on unmapped qubit " + std::to_string(q));
    }
    out *= byproduct.moved(q, it->second);
  }
  return out;
}

MeasurementPattern conjugate_for_frame(const MeasurementPattern& pattern, const PauliOp& frame) {
  MeasurementPattern out = pattern;
  for (auto& m : out.measurements) {
    std::vector<ObservableTerm> terms = m.observable.terms();
    for (auto& t : terms) {
      if (!frame.x_bit(t.qubit) && !frame.z_bit(t.qubit)) continue;
      const GateMatrix p = gates::from_label(pauli_label(frame, t.qubit));
      const auto image = conjugate_axis(t.axis, p);
      if (!image) {
        throw UnsupportedObservable("Pauli conjugation left the axis set");
      }
      t.axis = image->axis;
      m.sign *= image->sign;
    }
    m.observable = Observable(std::move(terms));
  }
  return out;
}

}  // namespace mbst
