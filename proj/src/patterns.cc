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

#include "mbst/patterns.h"

#include <algorithm>
#include <set>

#include "mbst/errors.h"

namespace mbst {
namespace {

Measurement signed_measurement(std::vector<ObservableTerm> terms, int sign) {
  return Measurement{Observable(std::move(terms)), sign};
}

void require_distinct(std::initializer_list<Qubit> qubits) {
  const std::set<Qubit> unique(qubits.begin(), qubits.end());
  if (unique.size() != qubits.size()) {
    throw InvalidArgument("pattern qubits must be distinct");
  }
}

SignedAxis conjugated_or_throw(Axis axis, const GateMatrix& w, const char* side) {
  const auto image = conjugate_axis(axis, w);
  if (!image) {
    throw UnsupportedObservable(std::string("conjugated ") + std::string(axis_token(axis)) +
                                " on the " + side + " qubit leaves the supported axis set");
  }
  return *image;
}

std::array<Amplitude, 2> first_column(const GateMatrix& v) { return {v(0, 0), v(1, 0)}; }

std::string compose_label(const std::string& v_label, const std::string& u_label) {
  if (v_label == "I") return u_label;
  if (u_label == "I") return v_label;
  return v_label + u_label;
}

void check_length(const MeasurementPattern& pattern, const OutcomeVector& outcomes) {
  if (outcomes.size() != pattern.measurements.size()) {
    throw InvalidArgument("pattern has " + std::to_string(pattern.measurements.size()) +
                          " measurements but " + std::to_string(outcomes.size()) +
                          " outcomes were given");
  }
}

}  // namespace

std::string outcome_string(const OutcomeVector& outcomes) {
  std::string out;
  for (Outcome o : outcomes) out += outcome_char(o);
  return out;
}

std::string_view rule_name(ByproductRule rule) {
  switch (rule) {
    case ByproductRule::kTransfer: return "transfer";
    case ByproductRule::kGeneralizedTransfer: return "gst";
    case ByproductRule::kCnot: return "cnot";
    case ByproductRule::kTeleport: return "teleport";
  }
  return "?";
}

std::optional<ByproductRule> parse_rule(std::string_view name) {
  for (auto r : {ByproductRule::kTransfer, ByproductRule::kGeneralizedTransfer,
                 ByproductRule::kCnot, ByproductRule::kTeleport}) {
    if (rule_name(r) == name) return r;
  }
  return std::nullopt;
}

std::string Measurement::str() const { return (sign < 0 ? "-" : "") + observable.token(); }

std::vector<Qubit> MeasurementPattern::qubits() const {
  std::set<Qubit> all(inputs.begin(), inputs.end());
  all.insert(aux.begin(), aux.end());
  all.insert(outputs.begin(), outputs.end());
  for (const auto& m : measurements) {
    for (const auto& t : m.observable.terms()) all.insert(t.qubit);
  }
  return {all.begin(), all.end()};
}

Qubit MeasurementPattern::max_qubit() const { return qubits().back(); }

MeasurementPattern MeasurementPattern::relabeled(const std::vector<Qubit>& physical_of) const {
  auto map = [&](Qubit q) {
    if (q >= physical_of.size()) {
      throw InvalidArgument("relabel: qubit " + std::to_string(q) + " has no image");
    }
    return physical_of[q];
  };
  MeasurementPattern out = *this;
  for (auto& q : out.inputs) q = map(q);
  for (auto& q : out.aux) q = map(q);
  for (auto& q : out.outputs) q = map(q);
  for (auto& m : out.measurements) m.observable = m.observable.relabeled(physical_of);
  for (auto& d : out.detach) {
    for (auto& q : d.qubits) q = map(q);
  }
  for (auto& p : out.aux_prep) p.qubit = map(p.qubit);
  return out;
}

MeasurementPattern transfer_pattern(Qubit a, Qubit b) {
  MeasurementPattern p = generalized_transfer_pattern(gates::I(), gates::I(), a, b, "I", "I");
  p.rule = ByproductRule::kTransfer;
  return p;
}

MeasurementPattern generalized_transfer_pattern(const GateMatrix& u, const GateMatrix& v, Qubit a,
                                                Qubit b, std::string u_label,
                                                std::string v_label) {
  require_distinct({a, b});
  if (u.arity() != 1 || v.arity() != 1) {
    throw InvalidArgument("generalized transfer takes single-qubit U and V");
  }
  CliffordImages images = clifford_images(v);
  const GateMatrix u_dag = u.adjoint();

  const SignedAxis b_first = conjugated_or_throw(Axis::X, v, "auxiliary");
  const SignedAxis a_mid = conjugated_or_throw(Axis::Z, u_dag, "source");
  const SignedAxis b_mid = conjugated_or_throw(Axis::Z, v, "auxiliary");
  const SignedAxis a_last = conjugated_or_throw(Axis::X, u_dag, "source");

  MeasurementPattern p{
      .rule = ByproductRule::kGeneralizedTransfer,
      .gate_label = compose_label(v_label, u_label),
      .gate = v * u,
      .inputs = {a},
      .aux = {b},
      .outputs = {b},
      .measurements = {signed_measurement({{b, b_first.axis}}, b_first.sign),
                       signed_measurement({{a, a_mid.axis}, {b, b_mid.axis}},
                                          a_mid.sign * b_mid.sign),
                       signed_measurement({{a, a_last.axis}}, a_last.sign)},
      .detach = {DetachSpec{{a}, {2}}},
      .aux_prep = {AuxPreparation{b, first_column(v)}},
      .u_label = std::move(u_label),
      .v_label = std::move(v_label),
      .v_images = std::move(images),
  };
  return p;
}

MeasurementPattern generalized_transfer_pattern(std::string_view u_label,
                                                std::string_view v_label, Qubit a, Qubit b) {
  return generalized_transfer_pattern(gates::from_label(u_label), gates::from_label(v_label), a, b,
                                      std::string(u_label), std::string(v_label));
}

MeasurementPattern cnot_pattern(Qubit a, Qubit b, Qubit c) {
  require_distinct({a, b, c});
  return MeasurementPattern{
      .rule = ByproductRule::kCnot,
      .gate_label = "CNOT",
      .gate = gates::CNot(),
      .inputs = {a, b},
      .aux = {c},
      .outputs = {a, b},
      .measurements = {signed_measurement({{c, Axis::Z}}, 1),
                       signed_measurement({{a, Axis::Z}, {c, Axis::X}}, 1),
                       signed_measurement({{c, Axis::Z}, {b, Axis::X}}, 1),
                       signed_measurement({{c, Axis::X}}, 1)},
      .detach = {DetachSpec{{c}, {3}}},
      .aux_prep = {AuxPreparation{c, first_column(gates::H())}},
  };
}

MeasurementPattern teleport_pattern(Qubit a, Qubit b, Qubit c) {
  require_distinct({a, b, c});
  return MeasurementPattern{
      .rule = ByproductRule::kTeleport,
      .gate_label = "I",
      .gate = gates::I(),
      .inputs = {a},
      .aux = {b, c},
      .outputs = {c},
      .measurements = {signed_measurement({{b, Axis::X}, {c, Axis::X}}, 1),
                       signed_measurement({{b, Axis::Z}, {c, Axis::Z}}, 1),
                       signed_measurement({{a, Axis::X}, {b, Axis::X}}, 1),
                       signed_measurement({{a, Axis::Z}, {b, Axis::Z}}, 1)},
      .detach = {DetachSpec{{a, b}, {2, 3}}},
      // |0> on b and |+> on c leave both X*X and then Z*Z unbiased.
      .aux_prep = {AuxPreparation{b, {1, 0}}, AuxPreparation{c, first_column(gates::H())}},
  };
}

PauliOp byproduct(const MeasurementPattern& pattern, const OutcomeVector& outcomes) {
  check_length(pattern, outcomes);
  const auto v = [&](std::size_t i) { return value(outcomes[i]); };
  const auto e = [](int product) { return product < 0 ? 1 : 0; };
  switch (pattern.rule) {
    case ByproductRule::kTransfer:
    case ByproductRule::kGeneralizedTransfer: {
      const Qubit b = pattern.outputs[0];
      const PauliOp sigma = PauliOp::from_exponents(b, e(v(1)), e(v(0) * v(2)));
      return conjugate_pauli(sigma, b, pattern.v_images);
    }
    case ByproductRule::kCnot:
      return PauliOp::from_exponents(pattern.inputs[0], 0, e(v(0) * v(2))) *
             PauliOp::from_exponents(pattern.inputs[1], e(v(1) * v(3)), 0);
    case ByproductRule::kTeleport:
      return PauliOp::from_exponents(pattern.outputs[0], e(v(1) * v(3)), e(v(0) * v(2)));
  }
  throw InvalidArgument("unknown byproduct rule");
}

OutcomeSource OutcomeSource::explore(std::vector<Outcome> prefix) {
  OutcomeSource s(std::move(prefix));
  s.exploring_ = true;
  return s;
}

MeasureResult OutcomeSource::measure(const StateVector& state, const Observable& obs, int sign) {
  const std::size_t index = next_++;
  if (rng_) {
    MeasureResult raw = mbst::measure(state, obs, *rng_);
    raw.outcome = raw.outcome * sign;
    return raw;
  }
  Outcome want;
  if (index < forced_.size()) {
    want = forced_[index];
  } else if (exploring_) {
    const auto p = born_probabilities(state, obs);
    const double p_plus = sign > 0 ? p.plus : p.minus;
    const double p_minus = sign > 0 ? p.minus : p.plus;
    want = p_plus >= kZeroProbability ? Outcome::kPlus : Outcome::kMinus;
    choices_.push_back({want, want == Outcome::kPlus && p_minus >= kZeroProbability});
  } else {
    throw InvalidArgument("forced outcome list exhausted after " + std::to_string(index) +
                          " measurements");
  }
  ForcedResult r = force_outcome(state, obs, want * sign);
  return {want, std::move(r.state), r.probability};
}

void for_each_branch(const std::function<void(OutcomeSource&)>& run, std::size_t max_branches) {
  std::vector<std::vector<Outcome>> pending{{}};
  std::size_t branches = 0;
  while (!pending.empty()) {
    std::vector<Outcome> prefix = std::move(pending.back());
    pending.pop_back();
    if (++branches > max_branches) {
      throw InvalidArgument("more than " + std::to_string(max_branches) + " outcome branches");
    }
    OutcomeSource source = OutcomeSource::explore(prefix);
    run(source);
    // Push the alternatives deepest last so they are explored first.
    const auto& choices = source.choices();
    for (std::size_t i = 0; i < choices.size(); ++i) {
      if (!choices[i].alternative_possible) continue;
      std::vector<Outcome> next = prefix;
      for (std::size_t k = 0; k < i; ++k) next.push_back(choices[k].outcome);
      next.push_back(Outcome::kMinus);
      pending.push_back(std::move(next));
    }
  }
}

PatternRun run_pattern(const StateVector& state, const MeasurementPattern& pattern,
                       OutcomeSource& source) {
  if (pattern.max_qubit() >= state.num_qubits()) {
    throw InvalidArgument("pattern touches qubit " + std::to_string(pattern.max_qubit()) +
                          " of a " + std::to_string(state.num_qubits()) + "-qubit state");
  }
  StateVector current = state;
  OutcomeVector outcomes;
  double probability = 1;
  for (const auto& m : pattern.measurements) {
    MeasureResult r = source.measure(current, m.observable, m.sign);
    outcomes.push_back(r.outcome);
    probability *= r.probability;
    current = std::move(r.state);
  }
  PauliOp sigma = byproduct(pattern, outcomes);
  return {std::move(current), std::move(outcomes), std::move(sigma), probability};
}

PatternRun run_pattern(const StateVector& state, const MeasurementPattern& pattern,
                       const OutcomeVector& forced) {
  check_length(pattern, forced);
  OutcomeSource source(forced);
  return run_pattern(state, pattern, source);
}

std::vector<Factor> measured_out_factors(const MeasurementPattern& pattern,
                                         const OutcomeVector& outcomes) {
  check_length(pattern, outcomes);
  std::vector<Factor> out;
  for (const auto& d : pattern.detach) {
    std::vector<Observable> observables;
    std::vector<Outcome> raw;
    for (std::size_t i : d.measurements) {
      observables.push_back(pattern.measurements[i].observable);
      raw.push_back(outcomes[i] * pattern.measurements[i].sign);
    }
    out.push_back({d.qubits, joint_eigenstate(observables, raw, d.qubits)});
  }
  return out;
}

StateVector prepare_input(const MeasurementPattern& pattern, const StateVector& input) {
  if (input.num_qubits() != pattern.inputs.size()) {
    throw InvalidArgument("pattern takes " + std::to_string(pattern.inputs.size()) +
                          " input qubits, state has " + std::to_string(input.num_qubits()));
  }
  const std::size_t n = pattern.max_qubit() + 1;
  std::vector<Amplitude> amps(std::size_t{1} << n);
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    std::size_t in_index = 0;
    for (std::size_t i = 0; i < pattern.inputs.size(); ++i) {
      in_index |= ((idx >> pattern.inputs[i]) & 1u) << i;
    }
    Amplitude amp = input[in_index];
    for (Qubit q = 0; q < n; ++q) {
      const std::size_t bit = (idx >> q) & 1u;
      if (std::find(pattern.inputs.begin(), pattern.inputs.end(), q) != pattern.inputs.end()) {
        continue;
      }
      auto prep = std::find_if(pattern.aux_prep.begin(), pattern.aux_prep.end(),
                               [q](const AuxPreparation& a) { return a.qubit == q; });
      if (prep != pattern.aux_prep.end()) {
        amp *= prep->amplitudes[bit];
      } else if (bit) {
        amp = 0;
      }
    }
    amps[idx] = amp;
  }
  return StateVector(std::move(amps));
}

StateVector extract_output(const MeasurementPattern& pattern, const StateVector& state,
                           const OutcomeVector& outcomes) {
  std::vector<Factor> factors = measured_out_factors(pattern, outcomes);
  std::set<Qubit> covered(pattern.outputs.begin(), pattern.outputs.end());
  for (const auto& f : factors) covered.insert(f.qubits.begin(), f.qubits.end());
  for (Qubit q = 0; q < state.num_qubits(); ++q) {
    if (!covered.count(q)) factors.push_back({{q}, make_basis_state(1, "0")});
  }
  Remainder rest = remove_factors(state, factors);
  std::vector<Qubit> order;
  for (Qubit out : pattern.outputs) {
    auto it = std::find(rest.labels.begin(), rest.labels.end(), out);
    order.push_back(static_cast<Qubit>(it - rest.labels.begin()));
  }
  return reorder_qubits(rest.state, order);
}

}  // namespace mbst
