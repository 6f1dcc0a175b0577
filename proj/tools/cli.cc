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

#include "cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <optional>
#include <sstream>

#include "mbst/circuit.h"
#include "mbst/compiler.h"
#include "mbst/errors.h"
#include "mbst/executor.h"
#include "mbst/harness.h"

namespace mbst {
namespace {

using nlohmann::json;

// Raised for bad command-line values that CLI11 cannot check itself.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

StateVector read_amplitudes(const std::string& path, std::size_t num_qubits) {
  std::istringstream in(read_file(path));
  std::vector<Amplitude> amps;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    double re = 0;
    double im = 0;
    std::string rest;
    if (!(fields >> re >> im) || (fields >> rest)) {
      throw FormatError(path + ":" + std::to_string(number) + ": expected 're im'");
    }
    amps.emplace_back(re, im);
  }
  if (amps.size() != (std::size_t{1} << num_qubits)) {
    throw FormatError(path + ": expected " + std::to_string(std::size_t{1} << num_qubits) +
                      " amplitudes, found " + std::to_string(amps.size()));
  }
  return make_state(std::move(amps));
}

/// `--input` value: a bit string (bit q is qubit q), `random` (Haar state
/// from the seed) or an amplitude file.
StateVector parse_input(const std::string& spec, std::size_t num_qubits, std::uint64_t seed) {
  if (spec == "random") {
    Rng rng(mix_seed(seed, std::numeric_limits<std::uint64_t>::max()));
    return random_state(num_qubits, rng);
  }
  if (!spec.empty() && spec.find_first_not_of("01") == std::string::npos) {
    if (spec.size() != num_qubits) {
      throw UsageError("input '" + spec + "' has " + std::to_string(spec.size()) +
                       " bits, expected " + std::to_string(num_qubits));
    }
    return make_basis_state(num_qubits, spec);
  }
  return read_amplitudes(spec, num_qubits);
}

json amplitudes_json(const StateVector& state) {
  json out = json::array();
  for (const auto& a : state.amplitudes()) out.push_back({a.real(), a.imag()});
  return out;
}

std::optional<CircuitIR> embedded_circuit(const MeasurementProgram& program) {
  if (program.metadata.source.empty()) return std::nullopt;
  return parse_circuit(program.metadata.source);
}

json step_json(const StepTrace& t, Mode mode) {
  json outcomes = json::array();
  for (const auto& o : t.outcomes) outcomes.push_back(outcome_string(o));
  json record = {{"step", t.step},
                 {"gate", t.gate},
                 {"observables", t.observables},
                 {"outcomes", outcomes},
                 {"byproduct", t.byproduct.str()},
                 {"rounds", t.rounds},
                 {"mode", std::string(mode_name(mode))}};
  if (mode == Mode::kTracked) record["frame"] = t.frame.str();
  return record;
}

struct RunArgs {
  std::string program;
  std::string input;
  std::uint64_t seed = 0;
  std::string mode = "faithful";
  std::size_t shots = 1;
  std::size_t max_rounds = kDefaultMaxRounds;
};

int cmd_run(const RunArgs& a, std::ostream& out) {
  const MeasurementProgram program = program_from_json(read_file(a.program));
  const Mode mode = parse_mode(a.mode);
  const StateVector input = parse_input(a.input, program.num_logical, a.seed);
  std::optional<StateVector> oracle;
  if (auto ir = embedded_circuit(program)) oracle = direct_simulate(*ir, input);
  const ExecuteOptions options{mode, a.max_rounds};

  if (a.shots > 1) {
    const RunStats stats = run_shots(program, input, a.shots, a.seed, options, oracle);
    json hist = json::object();
    for (const auto& [rounds, count] : stats.round_histogram) hist[std::to_string(rounds)] = count;
    json summary = {{"shots", stats.shots},
                    {"seed", stats.seed},
                    {"mode", std::string(mode_name(mode))},
                    {"mean_rounds", stats.mean_rounds},
                    {"round_histogram", hist},
                    {"outcome_frequencies", stats.outcome_frequencies}};
    bool pass = true;
    if (oracle) {
      const double worst = *std::min_element(stats.fidelities.begin(), stats.fidelities.end());
      summary["min_fidelity"] = worst;
      pass = worst >= 1 - kEndToEndTolerance;
    }
    summary["pass"] = pass;
    out << summary.dump() << "\n";
    return pass ? kExitPass : kExitVerificationFailure;
  }

  Rng rng(mix_seed(a.seed, 0));
  OutcomeSource source(rng);
  const ProgramRun run = execute_program(program, input, options, source);
  for (const auto& t : run.steps) out << step_json(t, mode).dump() << "\n";
  json final_record = {{"final", true},
                       {"mode", std::string(mode_name(mode))},
                       {"seed", a.seed},
                       {"logical_map", run.final_map},
                       {"total_rounds", run.total_rounds},
                       {"probability", run.probability},
                       {"output", amplitudes_json(run.logical_output)}};
  bool pass = true;
  if (mode == Mode::kTracked) final_record["frame"] = run.frame.str();
  if (oracle) {
    const double fidelity = fidelity_mod_phase(run.logical_output, *oracle);
    final_record["fidelity"] = fidelity;
    pass = fidelity >= 1 - kEndToEndTolerance;
    final_record["pass"] = pass;
  }
  out << final_record.dump() << "\n";
  return pass ? kExitPass : kExitVerificationFailure;
}

/// Builtin patterns: transfer, cnot, teleport and gst:U,V on qubits 0, 1, 2.
std::optional<MeasurementPattern> builtin_pattern(const std::string& name) {
  if (name == "transfer") return transfer_pattern(0, 1);
  if (name == "cnot") return cnot_pattern(0, 1, 2);
  if (name == "teleport") return teleport_pattern(0, 1, 2);
  if (name.rfind("gst:", 0) == 0) {
    const std::string args = name.substr(4);
    const auto comma = args.find(',');
    if (comma == std::string::npos) throw UsageError("expected gst:U,V");
    try {
      return generalized_transfer_pattern(args.substr(0, comma), args.substr(comma + 1), 0, 1);
    } catch (const UnsupportedObservable& e) {
      throw UsageError(e.what());
    }
  }
  return std::nullopt;
}

struct EnumerateArgs {
  std::string target;
  std::string input;
  std::uint64_t seed = 0;
};

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out) {
  double total = 0;
  double worst = 1;
  std::size_t count = 0;
  bool have_oracle = true;
  if (auto pattern = builtin_pattern(a.target)) {
    const StateVector input = parse_input(a.input, pattern->inputs.size(), a.seed);
    for (const auto& r : enumerate_branches(*pattern, input)) {
      out << json{{"branch", count++},
                  {"outcomes", outcome_string(r.outcomes)},
                  {"probability", r.probability},
                  {"byproduct", r.predicted_byproduct.str()},
                  {"fidelity", r.fidelity_vs_prediction}}
                 .dump()
          << "\n";
      total += r.probability;
      worst = std::min(worst, r.fidelity_vs_prediction);
    }
  } else {
    const MeasurementProgram program = program_from_json(read_file(a.target));
    const StateVector input = parse_input(a.input, program.num_logical, a.seed);
    std::optional<StateVector> oracle;
    if (auto ir = embedded_circuit(program)) oracle = direct_simulate(*ir, input);
    have_oracle = oracle.has_value();
    for (const auto& b : enumerate_program(program, input)) {
      json record = {{"branch", count++},
                     {"outcomes", outcome_string(b.outcomes)},
                     {"probability", b.probability}};
      if (oracle) {
        const double f = fidelity_mod_phase(b.logical_output, *oracle);
        record["fidelity"] = f;
        worst = std::min(worst, f);
      }
      out << record.dump() << "\n";
      total += b.probability;
    }
  }
  const bool pass = std::abs(total - 1) <= kPatternTolerance &&
                    (!have_oracle || worst >= 1 - kEndToEndTolerance);
  json summary = {{"summary", true}, {"branches", count}, {"total_probability", total},
                  {"pass", pass}};
  if (have_oracle) summary["min_fidelity"] = worst;
  out << summary.dump() << "\n";
  return pass ? kExitPass : kExitVerificationFailure;
}

struct VerifyArgs {
  std::string program;
  std::string circuit;
  bool enumerate = false;
  std::size_t shots = 1;
  std::uint64_t seed = 0;
  std::string mode = "faithful";
  std::vector<std::string> inputs;
  std::size_t random_inputs = 4;
  std::size_t max_rounds = kDefaultMaxRounds;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const MeasurementProgram program = program_from_json(read_file(a.program));
  const CircuitIR ir = parse_circuit(read_file(a.circuit));
  const bool hash_match = program.metadata.source_hash == fnv1a_hex(to_text(ir));
  std::vector<StateVector> inputs;
  for (const auto& spec : a.inputs) inputs.push_back(parse_input(spec, ir.num_logical, a.seed));
  if (a.inputs.empty()) {
    Rng rng(mix_seed(a.seed, std::numeric_limits<std::uint64_t>::max()));
    for (std::size_t i = 0; i < a.random_inputs; ++i) {
      inputs.push_back(random_state(ir.num_logical, rng));
    }
  }
  VerifyOptions options;
  options.mode = a.enumerate ? Mode::kTracked : parse_mode(a.mode);
  options.enumerate = a.enumerate;
  options.seed = a.seed;
  options.shots = a.shots;
  options.max_rounds = a.max_rounds;
  const ProgramReport report = verify_program(program, ir, inputs, options);

  json failures = json::array();
  for (const auto& f : report.failures) {
    json record = {{"input", f.input_index}, {"run", f.run_index}, {"fidelity", f.fidelity}};
    if (!f.error.empty()) record["error"] = f.error;
    if (!f.outcomes.empty()) record["outcomes"] = outcome_string(f.outcomes);
    failures.push_back(record);
  }
  const bool pass = report.pass && hash_match;
  json summary = {{"pass", pass},
                  {"source_hash_match", hash_match},
                  {"method", a.enumerate ? "enumerate" : "shots"},
                  {"mode", std::string(mode_name(options.mode))},
                  {"seed", a.seed},
                  {"inputs", inputs.size()},
                  {"runs", report.runs},
                  {"min_fidelity", report.min_fidelity},
                  {"tolerance", options.tol},
                  {"failures", failures}};
  if (!a.enumerate) summary["shots"] = a.shots;
  out << summary.dump(2) << "\n";
  return pass ? kExitPass : kExitVerificationFailure;
}

int cmd_report(const std::string& path, std::ostream& out) {
  const MeasurementProgram program = program_from_json(read_file(path));
  const ObservableCensus census = observables_report(program);
  const ResourceReport r = resource_report(program);
  json report = {
      {"family", std::string(family_name(program.family))},
      {"observables",
       {{"kinds", census.kinds},
        {"slots", census.slots},
        {"distinct_kinds", census.kinds.size()},
        {"distinct_slots", census.slots.size()},
        {"two_qubit_kinds", census.two_qubit_kinds},
        {"within_family", census.within_family},
        {"dagger_resolution", program.metadata.dagger_resolution}}},
      {"resources",
       {{"logical_qubits", program.num_logical},
        {"physical_qubits", program.num_physical},
        {"auxiliary_qubits", r.auxiliary_qubits},
        {"steps", r.steps},
        {"total_measurements", r.total_measurements},
        {"two_qubit_measurements", r.two_qubit_measurements}}},
      {"teleportation_baseline",
       {{"auxiliary_qubits", r.baseline_auxiliary_qubits},
        {"aux_per_one_qubit_step", r.baseline.aux_per_one_qubit_step},
        {"aux_per_two_qubit_step", r.baseline.aux_per_two_qubit_step},
        {"leung_family", r.baseline.leung_family},
        {"leung_family_size", r.baseline.leung_family.size()}}},
  };
  out << report.dump(2) << "\n";
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement-only quantum computation: compile, run and verify programs", "mbst"};
  app.require_subcommand(1);

  std::string compile_circuit;
  std::string compile_family = "O1";
  std::string compile_output;
  bool no_source = false;
  auto* compile_cmd = app.add_subcommand("compile", "Lower a .qc circuit to a measurement program");
  compile_cmd->add_option("circuit", compile_circuit, "Circuit file")->required();
  compile_cmd->add_option("--family", compile_family, "Observable family")
      ->check(CLI::IsMember({"O1", "O2"}));
  compile_cmd->add_option("-o,--output", compile_output, "Program file (default: stdout)");
  compile_cmd->add_flag("--no-embed-source", no_source, "Do not store the circuit text");

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Execute a program and print a JSON-lines trace");
  run_cmd->add_option("program", run_args.program, "Program file")->required();
  run_cmd->add_option("--input", run_args.input, "Bit string, 'random' or amplitude file")
      ->required();
  run_cmd->add_option("--seed", run_args.seed, "Base seed");
  run_cmd->add_option("--mode", run_args.mode, "faithful or tracked")
      ->check(CLI::IsMember({"faithful", "tracked"}));
  run_cmd->add_option("--shots", run_args.shots, "Print statistics over this many shots")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--max-rounds", run_args.max_rounds, "Pattern executions allowed per step")
      ->check(CLI::PositiveNumber);

  EnumerateArgs enum_args;
  auto* enumerate_cmd = app.add_subcommand(
      "enumerate", "List every outcome branch of a program or builtin pattern");
  enumerate_cmd
      ->add_option("target", enum_args.target,
                   "Program file or builtin pattern: transfer, cnot, teleport, gst:U,V")
      ->required();
  enumerate_cmd->add_option("--input", enum_args.input, "Bit string, 'random' or amplitude file")
      ->required();
  enumerate_cmd->add_option("--seed", enum_args.seed, "Seed for a random input");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Compare a program against its circuit");
  verify_cmd->add_option("program", verify_args.program, "Program file")->required();
  verify_cmd->add_option("--circuit", verify_args.circuit, "Circuit file")->required();
  auto* enum_flag = verify_cmd->add_flag("--enumerate", verify_args.enumerate,
                                     "Check every tracked branch instead of sampling");
  verify_cmd->add_option("--shots", verify_args.shots, "Shots per input")
      ->check(CLI::PositiveNumber)
      ->excludes(enum_flag);
  verify_cmd->add_option("--seed", verify_args.seed, "Base seed");
  verify_cmd->add_option("--mode", verify_args.mode, "faithful or tracked")
      ->check(CLI::IsMember({"faithful", "tracked"}));
  verify_cmd->add_option("--input", verify_args.inputs, "Input state (repeatable)");
  verify_cmd->add_option("--random-inputs", verify_args.random_inputs,
                     "Haar-random inputs when no --input is given");
  verify_cmd->add_option("--max-rounds", verify_args.max_rounds, "Pattern executions allowed per step")
      ->check(CLI::PositiveNumber);

  std::string report_program;
  auto* report_cmd = app.add_subcommand("report", "Observable census and resource counts");
  report_cmd->add_option("program", report_program, "Program file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*compile_cmd) {
      const CircuitIR ir = parse_circuit(read_file(compile_circuit));
      CompileOptions options;
      options.embed_source = !no_source;
      const std::string text = to_json(compile(ir, parse_family(compile_family), options));
      if (compile_output.empty()) {
        out << text;
      } else {
        write_file(compile_output, text);
      }
      return kExitPass;
    }
    if (*run_cmd) return cmd_run(run_args, out);
    if (*enumerate_cmd) return cmd_enumerate(enum_args, out);
    if (*verify_cmd) return cmd_verify(verify_args, out);
    if (*report_cmd) return cmd_report(report_program, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "verification failure: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitUsage;
}

}  // namespace mbst
