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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "mbst/harness.h"
#include "oracles.h"

namespace {

using namespace mbst;
using oracle::Vec;

constexpr double kBranchTol = 1e-9;

struct Verdict {
  bool pass = true;
  std::string detail;
};

class Criteria {
 public:
  void run(int number, const std::string& name, double time_limit_s,
           const std::function<Verdict()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit_s > 0 && seconds >= time_limit_s) v.pass = false;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s", seconds);
    std::string limit;
    if (time_limit_s > 0) limit = " (limit " + format(time_limit_s) + " s)";
    std::printf("criterion %d %s: %s; %s; %s%s\n", number, v.pass ? "PASS" : "FAIL", name.c_str(),
                v.detail.c_str(), timing, limit.c_str());
    std::fflush(stdout);
    all_pass_ = all_pass_ && v.pass;
  }
  bool all_pass() const { return all_pass_; }

  static std::string format(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
  }

 private:
  bool all_pass_ = true;
};

double distance(const Vec& a, const Vec& b) {
  return oracle::aligned_distance(oracle::normalized(a), oracle::normalized(b));
}

// Library states after forcing the first n outcomes.
std::vector<Vec> library_prefix_states(const MeasurementPattern& p, const StateVector& start,
                                       const OutcomeVector& outcomes) {
  std::vector<Vec> out;
  StateVector s = start;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Measurement& m = p.measurements[i];
    s = force_outcome(s, m.observable, outcomes[i] * m.sign).state;
    out.push_back(oracle::to_vec(s));
  }
  return out;
}

Verdict transfer_suite() {
  const MeasurementPattern p = transfer_pattern(0, 1);
  double worst_p = 0, worst_f = 0;
  bool ok = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const StateVector phi = oracle::random_state(1, 10'000 + seed);
    const auto branches = enumerate_branches(p, phi);
    ok = ok && branches.size() == 8;
    for (const auto& b : branches) {
      worst_p = std::max(worst_p, std::abs(b.probability - 0.125));
      const auto [x, z] = oracle::transfer_exponents(value(b.outcomes[0]), value(b.outcomes[1]),
                                                     value(b.outcomes[2]));
      const Vec want = oracle::act(oracle::pauli(x, z), oracle::to_vec(phi));
      const double f = oracle::overlap(oracle::to_vec(b.output_state), want);
      worst_f = std::max(worst_f, 1 - f);
    }
  }
  ok = ok && worst_p <= kBranchTol && worst_f <= kBranchTol;
  return {ok, "20 states x 8 branches, max |p - 1/8| " + Criteria::format(worst_p) +
                  ", max 1 - fidelity " + Criteria::format(worst_f)};
}

Verdict cnot_suite() {
  const MeasurementPattern p = cnot_pattern(0, 1, 2);
  double worst_p = 0, worst_psi = 0;
  bool ok = true;
  std::size_t byproduct_errors = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Vec abcd = oracle::random_vec(2, 20'000 + seed);
    const StateVector phi(oracle::ab_state(abcd));
    const auto branches = enumerate_branches(p, phi);
    ok = ok && branches.size() == 16;
    const StateVector start = prepare_input(p, phi);
    for (const auto& b : branches) {
      worst_p = std::max(worst_p, std::abs(b.probability - 1.0 / 16));
      const int j = value(b.outcomes[0]), k = value(b.outcomes[1]), l = value(b.outcomes[2]),
                m = value(b.outcomes[3]);
      PauliOp expected;
      expected.set(0, false, j * l < 0);
      expected.set(1, k * m < 0, false);
      if (b.predicted_byproduct != expected || b.fidelity_vs_prediction < 1 - kBranchTol) {
        ++byproduct_errors;
      }
      const auto psi = oracle::cnot_intermediate(abcd, j, k, l, m);
      const auto got = library_prefix_states(p, start, b.outcomes);
      for (std::size_t n = 0; n < 4; ++n) worst_psi = std::max(worst_psi, distance(got[n], psi[n]));
    }
  }
  ok = ok && worst_p <= kBranchTol && worst_psi <= kBranchTol && byproduct_errors == 0;
  return {ok, "20 states x 16 branches, max |p - 1/16| " + Criteria::format(worst_p) +
                  ", byproduct mismatches " + std::to_string(byproduct_errors) +
                  ", max psi1..psi4 entry error " + Criteria::format(worst_psi)};
}

Verdict step_library() {
  struct Case {
    std::string name, u, v, gate;
  };
  const std::vector<Case> cases = {
      {"H (U=H)", "H", "I", "H"}, {"H (V=H)", "I", "H", "H"},  {"T", "T", "I", "T"},
      {"TDG", "TDG", "I", "TDG"}, {"HT", "T", "H", "HT"},      {"HTDG", "TDG", "H", "HTDG"},
      {"X", "X", "I", "X"},       {"Y", "Y", "I", "Y"},        {"Z", "Z", "I", "Z"},
      {"I", "I", "I", "I"}};
  std::vector<StateVector> states;
  for (std::uint64_t i = 0; i < 20; ++i) states.push_back(oracle::random_state(1, 30'000 + i));
  bool ok = true;
  double worst = 0;
  std::string failed;
  for (const auto& c : cases) {
    const MeasurementPattern p = generalized_transfer_pattern(c.u, c.v, 0, 1);
    const PatternReport r = verify_pattern(p, gates::from_label(c.gate), states, kBranchTol);
    worst = std::max(worst, 1 - r.min_fidelity);
    if (!r.pass) {
      ok = false;
      failed += " " + c.name;
    }
  }
  // Dagger convention: the T step measures X-Y; the X+Y step is T-dagger.
  const MeasurementPattern t = generalized_transfer_pattern("T", "I", 0, 1);
  const bool t_token = t.measurements[2].str() == "X-Y@0";
  const bool swapped_fails = !verify_pattern(t, gates::Tdg(), states, kBranchTol).pass;
  ok = ok && t_token && swapped_fails;
  std::string detail = std::to_string(cases.size()) + " steps x 20 states, max 1 - fidelity " +
                       Criteria::format(worst) + ", T measures " + t.measurements[2].str() +
                       (swapped_fails ? " (T-dagger rejected)" : " (T-dagger NOT rejected)");
  if (!failed.empty()) detail += ", failed:" + failed;
  return {ok, detail};
}

struct SuiteResult {
  bool ok = true;
  double worst = 0;
  std::size_t runs = 0;
  std::size_t wrong_width = 0;
  std::string first_failure;
};

SuiteResult random_circuit_suite(Mode mode) {
  SuiteResult out;
  Rng circuits(4242);
  for (std::size_t i = 0; i < 100; ++i) {
    const CircuitIR ir = random_circuit(circuits);
    Rng input_rng(mix_seed(7, i));
    const StateVector in = random_state(ir.num_logical, input_rng);
    for (Family f : {Family::kO1, Family::kO2}) {
      const MeasurementProgram p = compile(ir, f);
      if (p.num_physical != ir.num_logical + 1) ++out.wrong_width;
      VerifyOptions options;
      options.mode = mode;
      options.seed = mix_seed(11, i);
      const ProgramReport r = verify_program(p, ir, {in}, options);
      ++out.runs;
      out.worst = std::max(out.worst, 1 - r.min_fidelity);
      if (!r.pass) {
        out.ok = false;
        if (out.first_failure.empty()) {
          out.first_failure = std::string(family_name(f)) + " circuit " + std::to_string(i) +
                              (r.failures.empty() ? "" : ": " + r.failures.front().error);
        }
      }
    }
  }
  out.ok = out.ok && out.wrong_width == 0;
  return out;
}

Verdict end_to_end(Mode mode) {
  const SuiteResult r = random_circuit_suite(mode);
  std::string detail = "100 circuits x {O1, O2}, " + std::to_string(r.runs) +
                       " runs, max 1 - fidelity " + Criteria::format(r.worst) +
                       ", programs not using n+1 qubits " + std::to_string(r.wrong_width);
  if (!r.first_failure.empty()) detail += ", first failure " + r.first_failure;
  return {r.ok, detail};
}

Verdict census() {
  Rng circuits(4242);
  std::size_t o2_bad = 0, o1_bad = 0;
  std::size_t max_o2_slots = 0;
  const std::set<std::string> o1_allowed = {"Z", "X", "X+Y", "X-Y", "Z*Z", "Z*X"};
  for (std::size_t i = 0; i < 100; ++i) {
    const CircuitIR ir = random_circuit(circuits);
    const ObservableCensus o2 = observables_report(compile(ir, Family::kO2));
    std::size_t two_qubit = 0;
    bool has_zx = false;
    for (const auto& [slot, count] : o2.slots) {
      if (slot.find('*') != std::string::npos) ++two_qubit;
      has_zx = has_zx || slot == "Z*X";
    }
    max_o2_slots = std::max(max_o2_slots, o2.slots.size());
    if (o2.slots.size() > 4 || two_qubit != 1 || !has_zx) ++o2_bad;
    for (const auto& [kind, count] : observables_report(compile(ir, Family::kO1)).kinds) {
      if (!o1_allowed.count(kind)) {
        ++o1_bad;
        break;
      }
    }
  }
  return {o2_bad == 0 && o1_bad == 0,
          "100 circuits, O2 programs violating (<= 4 tokens, one two-qubit Z*X) " +
              std::to_string(o2_bad) + " (max distinct tokens " + std::to_string(max_o2_slots) +
              "), O1 programs outside {Z, X, X+-Y, Z*Z, Z*X} " + std::to_string(o1_bad)};
}

Verdict correction_statistics() {
  // Byproduct distribution over the branches of a 1-qubit step.
  std::map<std::string, int> counts;
  for (const auto& b : enumerate_branches(transfer_pattern(0, 1), oracle::random_state(1, 5))) {
    ++counts[b.predicted_byproduct.str()];
  }
  bool uniform = counts.size() == 4;
  for (const auto& [k, v] : counts) uniform = uniform && v == 2;

  // 10^4 faithful shots of a single H step.
  const CircuitIR ir = parse_circuit("qubits 1\nH 0\n");
  const MeasurementProgram p = compile(ir, Family::kO1);
  const std::size_t shots = 10'000;
  const RunStats stats = run_shots(p, make_basis_state(1, "0"), shots, 2025);
  const bool mean_ok = std::abs(stats.mean_rounds - 4.0) <= 0.15;

  // Chi-square against geometric(p = 1/4) on {1, 2, ...}, merging the tail so
  // every bin expects at least 5 counts.
  const double q = 0.25;
  std::vector<double> observed, expected;
  double tail_expected = shots;
  std::size_t tail_observed = shots;
  for (std::size_t r = 1;; ++r) {
    const double e = shots * q * std::pow(1 - q, double(r - 1));
    if (tail_expected - e < 5) break;
    const auto it = stats.round_histogram.find(r);
    const std::size_t o = it == stats.round_histogram.end() ? 0 : it->second;
    observed.push_back(double(o));
    expected.push_back(e);
    tail_expected -= e;
    tail_observed -= o;
  }
  observed.push_back(double(tail_observed));
  expected.push_back(tail_expected);
  double chi2 = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    chi2 += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  }
  const double dof = double(observed.size() - 1);
  const boost::math::chi_squared dist(dof);
  const double critical = boost::math::quantile(boost::math::complement(dist, 0.01));
  const double p_value = boost::math::cdf(boost::math::complement(dist, chi2));
  const bool chi_ok = chi2 < critical;

  std::string byproducts;
  for (const auto& [k, v] : counts) byproducts += " " + k + "=" + std::to_string(v);
  return {uniform && mean_ok && chi_ok,
          "byproducts" + byproducts + ", mean executions " + Criteria::format(stats.mean_rounds) +
              " over 10^4 shots (target 4.0 +- 0.15), chi2 " + Criteria::format(chi2) + " on " +
              Criteria::format(dof) + " dof, critical " + Criteria::format(critical) + ", p " +
              Criteria::format(p_value)};
}

Verdict teleportation() {
  const MeasurementPattern p = teleport_pattern(0, 1, 2);
  std::size_t rule_mismatches = 0;
  bool ok = true;
  double worst_p = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const StateVector phi = oracle::random_state(1, 40'000 + seed);
    const auto branches = enumerate_branches(p, phi);
    ok = ok && branches.size() == 16;
    for (const auto& b : branches) {
      worst_p = std::max(worst_p, std::abs(b.probability - 1.0 / 16));
      // Derive the correction by trying every Pauli on the output.
      std::size_t matches = 0;
      PauliOp found;
      for (int x = 0; x < 2; ++x) {
        for (int z = 0; z < 2; ++z) {
          const Vec candidate = oracle::act(oracle::pauli(x, z), oracle::to_vec(phi));
          if (oracle::overlap(oracle::to_vec(b.output_state), candidate) > 1 - kBranchTol) {
            ++matches;
            found.set(2, x, z);
          }
        }
      }
      if (matches != 1 || found != b.predicted_byproduct) ++rule_mismatches;
    }
  }
  const PatternResources tel = pattern_resources(p);
  const PatternResources tr = pattern_resources(transfer_pattern(0, 1));
  const ResourceReport report =
      resource_report(compile(parse_circuit("qubits 2\nH 0\nCNOT 0 1\n"), Family::kO1));
  const TeleportationBaseline& base = report.baseline;
  ok = ok && worst_p <= kBranchTol && rule_mismatches == 0 && tel.auxiliary_qubits == 2 &&
       tr.auxiliary_qubits == 1 && base.aux_per_one_qubit_step == 2 &&
       base.aux_per_two_qubit_step == 4 && base.leung_family.size() == 4 &&
       report.baseline_auxiliary_qubits == 4 && report.auxiliary_qubits == 1;
  return {ok, "20 states x 16 branches, max |p - 1/16| " + Criteria::format(worst_p) +
                  ", rule mismatches " + std::to_string(rule_mismatches) + ", auxiliary qubits " +
                  std::to_string(tel.auxiliary_qubits) + " (teleport) vs " +
                  std::to_string(tr.auxiliary_qubits) + " (transfer), baseline " +
                  std::to_string(base.aux_per_one_qubit_step) + "/" +
                  std::to_string(base.aux_per_two_qubit_step) + ", Leung family size " +
                  std::to_string(base.leung_family.size())};
}

std::string cli_output(const std::vector<std::string>& args, int* code) {
  std::ostringstream out, err;
  *code = run_cli(args, out, err);
  return out.str() + "\n--stderr--\n" + err.str();
}

Verdict determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mbst_acceptance";
  fs::create_directories(dir);
  const std::string qc = (dir / "c.qc").string();
  std::ofstream(qc) << "qubits 3\nH 0\nT 0\nCNOT 0 1\nTDG 1\nCNOT 1 2\nH 2\n";
  std::size_t identical = 0, total = 0;
  bool codes_ok = true;
  for (const std::string family : {"O1", "O2"}) {
    const std::string prog = (dir / ("c_" + family + ".json")).string();
    int code = 0;
    cli_output({"compile", qc, "--family", family, "-o", prog}, &code);
    codes_ok = codes_ok && code == 0;
    const std::vector<std::vector<std::string>> commands = {
        {"run", prog, "--input", "101", "--seed", "17"},
        {"run", prog, "--input", "random", "--seed", "17", "--mode", "tracked"},
        {"run", prog, "--input", "000", "--seed", "17", "--shots", "200"},
        {"verify", prog, "--circuit", qc, "--seed", "17", "--shots", "5"},
        {"verify", prog, "--circuit", qc, "--seed", "17", "--mode", "tracked", "--shots", "5"},
    };
    for (const auto& cmd : commands) {
      int c1 = 0, c2 = 0;
      const std::string a = cli_output(cmd, &c1);
      const std::string b = cli_output(cmd, &c2);
      ++total;
      if (a == b && c1 == c2) ++identical;
      codes_ok = codes_ok && c1 == 0;
    }
  }
  fs::remove_all(dir);
  return {identical == total && codes_ok, std::to_string(identical) + "/" + std::to_string(total) +
                                              " run/verify invocations byte-identical on repeat" +
                                              (codes_ok ? "" : ", some command failed")};
}

}  // namespace

int main() {
  Criteria c;
  c.run(1, "transfer branch suite", 1.0, transfer_suite);
  c.run(2, "CNOT branch suite", 2.0, cnot_suite);
  c.run(3, "step library", 0, step_library);
  c.run(4, "end-to-end compilation, faithful", 60.0, [] { return end_to_end(Mode::kFaithful); });
  c.run(5, "observable census", 0, census);
  c.run(6, "correction statistics", 0, correction_statistics);
  c.run(7, "mode equivalence, tracked", 60.0, [] { return end_to_end(Mode::kTracked); });
  c.run(8, "teleportation baseline", 0, teleportation);
  c.run(9, "determinism", 0, determinism);
  std::printf("acceptance: %s\n", c.all_pass() ? "PASS" : "FAIL");
  return c.all_pass() ? 0 : 1;
}
