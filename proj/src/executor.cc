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

#include "mbst/executor.h"

#include <algorithm>
#include <map>
#include <set>

#include "mbst/errors.h"

namespace mbst {
namespace {

// Expected states of measured-out qubits, keyed by the blocks their last
// pattern detached.
class DeadQubits {
 public:
  void forget(const std::vector<Qubit>& touched) {
    std::erase_if(factors_, [&](const Factor& f) {
      return std::any_of(f.qubits.begin(), f.qubits.end(), [&](Qubit q) {
        return std::find(touched.begin(), touched.end(), q) != touched.end();
      });
    });
  }

  void record(const PatternExecution& e) {
    forget(e.pattern.qubits());
    for (auto& f : measured_out_factors(e.pattern, e.outcomes)) factors_.push_back(std::move(f));
  }

  void add(Factor f) { factors_.push_back(std::move(f)); }

  const std::vector<Factor>& factors() const { return factors_; }

 private:
  std::vector<Factor> factors_;
};

StateVector initial_register(const MeasurementProgram& program, const StateVector& input) {
  const std::size_t extra = program.num_physical - program.num_logical;
  StateVector full = input;
  if (extra > 0) full = tensor(input, make_basis_state(extra, std::string(extra, '0')));
  // Register qubit p holds full-state qubit order[p].
  std::vector<Qubit> order(program.num_physical);
  std::vector<bool> used(program.num_physical, false);
  for (Qubit l = 0; l < program.num_logical; ++l) {
    order[program.initial_map[l]] = l;
    used[program.initial_map[l]] = true;
  }
  Qubit next = static_cast<Qubit>(program.num_logical);
  for (Qubit p = 0; p < program.num_physical; ++p) {
    if (!used[p]) order[p] = next++;
  }
  return reorder_qubits(full, order);
}

void check_program(const MeasurementProgram& program, const StateVector& input) {
  if (input.num_qubits() != program.num_logical) {
    throw InvalidArgument("program has " + std::to_string(program.num_logical) +
                          " logical qubits, input state has " +
                          std::to_string(input.num_qubits()));
  }
  if (program.initial_map.size() != program.num_logical ||
      program.num_physical < program.num_logical) {
    throw FormatError("initial map does not cover the logical qubits");
  }
  std::set<Qubit> seen;
  for (Qubit p : program.initial_map) {
    if (p >= program.num_physical || !seen.insert(p).second) {
      throw FormatError("initial map is not injective into the physical qubits");
    }
  }
}

}  // namespace

CorrectionStyle correction_style(Family family) {
  return family == Family::kO1 ? CorrectionStyle::kTransfer : CorrectionStyle::kHadamardPair;
}

ProgramRun execute_program(const MeasurementProgram& program, const StateVector& logical_input,
                           const ExecuteOptions& options, OutcomeSource& source) {
  check_program(program, logical_input);
  StateVector state = initial_register(program, logical_input);
  std::vector<Qubit> logical_at = program.initial_map;
  // actual[q]: where the program's nominal qubit q currently lives.
  std::vector<Qubit> actual(program.num_physical);
  for (Qubit q = 0; q < program.num_physical; ++q) actual[q] = q;
  DeadQubits dead;
  for (Qubit q = 0; q < program.num_physical; ++q) {
    if (std::find(logical_at.begin(), logical_at.end(), q) == logical_at.end()) {
      dead.add({{q}, make_basis_state(1, "0")});
    }
  }

  ProgramRun run{logical_input, {}, 0, {}, PauliFrame(), 1};
  for (std::size_t s = 0; s < program.steps.size(); ++s) {
    const ProgramStep& step = program.steps[s];
    if (step.pattern.max_qubit() >= program.num_physical) {
      throw FormatError("step " + std::to_string(s) + " uses a qubit beyond num_physical");
    }
    MeasurementPattern pattern = step.pattern.relabeled(actual);
    if (step.logical.size() != pattern.inputs.size()) {
      throw FormatError("step " + std::to_string(s) + " has mismatched logical operands");
    }
    for (std::size_t i = 0; i < step.logical.size(); ++i) {
      if (step.logical[i] >= program.num_logical ||
          pattern.inputs[i] != logical_at[step.logical[i]]) {
        throw FormatError("step " + std::to_string(s) +
                          " does not act where its logical operands are");
      }
    }
    if (options.mode == Mode::kTracked) {
      PauliOp on_inputs;
      for (std::size_t i = 0; i < step.logical.size(); ++i) {
        on_inputs *= run.frame.moved(step.logical[i], pattern.inputs[i]);
      }
      pattern = conjugate_for_frame(pattern, on_inputs);
    }

    StepOptions step_options{options.mode, correction_style(program.family), options.max_rounds,
                             std::vector<std::size_t>(step.logical.begin(), step.logical.end())};
    StepResult result = full_step(state, pattern, step_options, source);
    state = std::move(result.final_state);

    StepTrace trace{s, step.gate, {}, {}, result.executions.front().byproduct, result.rounds, {}};
    for (const auto& e : result.executions) {
      dead.record(e);
      std::vector<std::string> tokens;
      for (const auto& m : e.pattern.measurements) tokens.push_back(m.str());
      trace.observables.push_back(std::move(tokens));
      trace.outcomes.push_back(e.outcomes);
      run.probability *= e.probability;
    }

    // Follow the outputs; the remaining touched qubits are free in both views.
    std::vector<Qubit> nominal = step.pattern.qubits();
    std::vector<Qubit> physical = pattern.qubits();
    for (std::size_t i = 0; i < step.pattern.outputs.size(); ++i) {
      actual[step.pattern.outputs[i]] = result.outputs[i];
      std::erase(nominal, step.pattern.outputs[i]);
      std::erase(physical, result.outputs[i]);
      logical_at[step.logical[i]] = result.outputs[i];
    }
    for (std::size_t i = 0; i < nominal.size(); ++i) actual[nominal[i]] = physical[i];

    if (options.mode == Mode::kTracked) {
      std::map<Qubit, Qubit> logical_of;
      for (std::size_t i = 0; i < step.logical.size(); ++i) {
        // A moved qubit leaves its old frame on the measured-out source.
        if (pattern.outputs[i] != pattern.inputs[i]) {
          run.frame.set(step.logical[i], false, false);
        }
        logical_of[pattern.outputs[i]] = step.logical[i];
      }
      run.frame = frame_update(run.frame, result.residual, logical_of);
    }
    trace.frame = run.frame;
    run.total_rounds += result.rounds;
    run.steps.push_back(std::move(trace));
  }

  PauliOp correction;
  for (Qubit l = 0; l < program.num_logical; ++l) {
    correction *= run.frame.moved(l, logical_at[l]);
  }
  state = apply_pauli(state, correction);

  for (Qubit q = 0; q < program.num_physical; ++q) {
    const bool logical = std::find(logical_at.begin(), logical_at.end(), q) != logical_at.end();
    const bool known = std::any_of(dead.factors().begin(), dead.factors().end(), [q](const Factor& f) {
      return std::find(f.qubits.begin(), f.qubits.end(), q) != f.qubits.end();
    });
    if (!logical && !known) {
      throw InvalidArgument("physical qubit " + std::to_string(q) + " has no recorded state");
    }
  }
  Remainder rest = remove_factors(state, dead.factors());
  std::vector<Qubit> order;
  for (Qubit p : logical_at) {
    auto it = std::find(rest.labels.begin(), rest.labels.end(), p);
    order.push_back(static_cast<Qubit>(it - rest.labels.begin()));
  }
  run.logical_output = reorder_qubits(rest.state, order);
  run.final_map = std::move(logical_at);
  return run;
}

std::vector<ProgramBranch> enumerate_program(const MeasurementProgram& program,
                                             const StateVector& logical_input,
                                             std::size_t max_branches) {
  std::vector<ProgramBranch> branches;
  for_each_branch(
      [&](OutcomeSource& source) {
        ProgramRun run = execute_program(program, logical_input, {Mode::kTracked}, source);
        OutcomeVector all;
        for (const auto& t : run.steps) {
          for (const auto& o : t.outcomes) all.insert(all.end(), o.begin(), o.end());
        }
        branches.push_back({std::move(all), run.probability, std::move(run.logical_output)});
      },
      max_branches);
  return branches;
}

}  // namespace mbst
