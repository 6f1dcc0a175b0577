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

#include "mbst/harness.h"

#include <algorithm>
#include <cmath>

#include "mbst/errors.h"

namespace mbst {

StateVector direct_simulate(const CircuitIR& ir, const StateVector& input) {
  validate(ir);
  if (input.num_qubits() != ir.num_logical) {
    throw InvalidArgument("circuit has " + std::to_string(ir.num_logical) +
                          " qubits, input state has " + std::to_string(input.num_qubits()));
  }
  StateVector state = input;
  for (const auto& g : ir.gates) state = apply_gate(state, gate_matrix(g.kind), g.operands);
  return state;
}

StateVector random_state(std::size_t num_qubits, Rng& rng) {
  std::vector<Amplitude> amps(std::size_t{1} << num_qubits);
  double norm2 = 0;
  for (auto& a : amps) {
    a = {rng.normal(), rng.normal()};
    norm2 += std::norm(a);
  }
  const double scale = 1 / std::sqrt(norm2);
  for (auto& a : amps) a *= scale;
  return StateVector(std::move(amps));
}

CircuitIR random_circuit(Rng& rng, const RandomCircuitOptions& options) {
  if (options.kinds.empty() || options.max_qubits < 1 || options.max_gates < 1) {
    throw InvalidArgument("random_circuit needs gate kinds, qubits and gates");
  }
  const bool two_qubit =
      std::find(options.kinds.begin(), options.kinds.end(), GateKind::CNOT) != options.kinds.end();
  if (two_qubit && options.max_qubits < 2) {
    throw InvalidArgument("CNOT needs at least 2 qubits");
  }
  auto below = [&rng](std::size_t n) {
    return static_cast<std::size_t>(rng.draw() * static_cast<double>(n));
  };
  CircuitIR ir;
  const std::size_t min_qubits = two_qubit ? 2 : 1;
  ir.num_logical = min_qubits + below(options.max_qubits - min_qubits + 1);
  const std::size_t count = 1 + below(options.max_gates);
  for (std::size_t i = 0; i < count; ++i) {
    const GateKind kind = options.kinds[below(options.kinds.size())];
    Gate g{kind, {static_cast<Qubit>(below(ir.num_logical))}};
    if (kind == GateKind::CNOT) {
      Qubit t = static_cast<Qubit>(below(ir.num_logical - 1));
      if (t >= g.operands[0]) ++t;
      g.operands.push_back(t);
    }
    ir.gates.push_back(std::move(g));
  }
  return ir;
}

std::vector<BranchRecord> enumerate_branches(const MeasurementPattern& pattern,
                                             const StateVector& input,
                                             const std::optional<GateMatrix>& gate) {
  const StateVector start = prepare_input(pattern, input);
  std::vector<Qubit> local(pattern.inputs.size());
  for (Qubit i = 0; i < local.size(); ++i) local[i] = i;
  const StateVector ideal = apply_gate(input, gate ? *gate : pattern.gate, local);

  std::vector<BranchRecord> records;
  for_each_branch(
      [&](OutcomeSource& source) {
        PatternRun run = run_pattern(start, pattern, source);
        StateVector output = extract_output(pattern, run.state, run.outcomes);
        PauliOp local_sigma;
        for (std::size_t i = 0; i < pattern.outputs.size(); ++i) {
          local_sigma *= run.byproduct.moved(pattern.outputs[i], static_cast<Qubit>(i));
        }
        const double fidelity = fidelity_mod_phase(output, apply_pauli(ideal, local_sigma));
        records.push_back({std::move(run.outcomes), run.probability, std::move(run.state),
                           std::move(output), std::move(run.byproduct), fidelity});
      },
      std::size_t{1} << pattern.measurements.size());
  return records;
}

PatternReport verify_pattern(const MeasurementPattern& pattern, const GateMatrix& gate,
                             const std::vector<StateVector>& states, double tol) {
  if (static_cast<std::size_t>(gate.arity()) != pattern.inputs.size()) {
    throw InvalidArgument("gate arity does not match the pattern inputs");
  }
  PatternReport report;
  for (std::size_t s = 0; s < states.size(); ++s) {
    double total = 0;
    for (auto& r : enumerate_branches(pattern, states[s], gate)) {
      ++report.branches;
      total += r.probability;
      report.min_fidelity = std::min(report.min_fidelity, r.fidelity_vs_prediction);
      if (r.fidelity_vs_prediction < 1 - tol) {
        report.pass = false;
        report.failures.push_back({s, std::move(r.outcomes), r.fidelity_vs_prediction});
      }
    }
    report.total_probability_error = std::max(report.total_probability_error, std::abs(total - 1));
  }
  if (report.total_probability_error > tol) report.pass = false;
  return report;
}

ProgramReport verify_program(const MeasurementProgram& program, const CircuitIR& ir,
                             const std::vector<StateVector>& inputs,
                             const VerifyOptions& options) {
  if (ir.num_logical != program.num_logical) {
    throw InvalidArgument("circuit and program disagree on the number of logical qubits");
  }
  ProgramReport report;
  auto check = [&](ProgramCase c) {
    ++report.runs;
    report.min_fidelity = std::min(report.min_fidelity, c.fidelity);
    if (!c.error.empty() || c.fidelity < 1 - options.tol) {
      report.pass = false;
      report.failures.push_back(std::move(c));
    }
  };
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const StateVector expected = direct_simulate(ir, inputs[i]);
    if (options.enumerate) {
      std::vector<ProgramBranch> branches;
      try {
        branches = enumerate_program(program, inputs[i]);
      } catch (const Error& e) {
        check({i, 0, 0, 0, e.what(), {}});
        continue;
      }
      for (std::size_t b = 0; b < branches.size(); ++b) {
        check({i, b, fidelity_mod_phase(branches[b].logical_output, expected),
               program.steps.size(), "", branches[b].outcomes});
      }
      continue;
    }
    for (std::size_t k = 0; k < options.shots; ++k) {
      Rng rng(mix_seed(options.seed, i * options.shots + k));
      OutcomeSource source(rng);
      try {
        ProgramRun run =
            execute_program(program, inputs[i], {options.mode, options.max_rounds}, source);
        check({i, k, fidelity_mod_phase(run.logical_output, expected), run.total_rounds, "", {}});
      } catch (const Error& e) {
        check({i, k, 0, 0, e.what(), {}});
      }
    }
  }
  return report;
}

RunStats run_shots(const MeasurementProgram& program, const StateVector& input,
                   std::size_t shots, std::uint64_t seed, const ExecuteOptions& options,
                   const std::optional<StateVector>& oracle) {
  if (shots < 1) throw InvalidArgument("shots must be at least 1");
  RunStats stats;
  stats.shots = shots;
  stats.seed = seed;
  stats.outcome_frequencies.resize(program.steps.size());
  std::size_t step_count = 0;
  std::size_t round_sum = 0;
  for (std::size_t k = 0; k < shots; ++k) {
    Rng rng(mix_seed(seed, k));
    OutcomeSource source(rng);
    ProgramRun run = execute_program(program, input, options, source);
    for (std::size_t s = 0; s < run.steps.size(); ++s) {
      ++stats.outcome_frequencies[s][outcome_string(run.steps[s].outcomes.front())];
      ++stats.round_histogram[run.steps[s].rounds];
      round_sum += run.steps[s].rounds;
      ++step_count;
    }
    if (oracle) stats.fidelities.push_back(fidelity_mod_phase(run.logical_output, *oracle));
  }
  if (step_count > 0) stats.mean_rounds = static_cast<double>(round_sum) / step_count;
  return stats;
}

}  // namespace mbst
