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

#include "mbst/observables.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

#include "mbst/errors.h"

namespace mbst {
namespace {

int axis_rank(Axis a) {
  switch (a) {
    case Axis::Z: return 0;
    case Axis::X: return 1;
    case Axis::Y: return 2;
    case Axis::XplusY: return 3;
    case Axis::XminusY: return 4;
  }
  return 5;
}

void check_terms(const std::vector<ObservableTerm>& terms) {
  if (terms.empty() || terms.size() > 2) {
    throw InvalidArgument("an observable has one or two terms");
  }
  if (terms.size() == 2 && terms[0].qubit == terms[1].qubit) {
    throw InvalidArgument("observable terms act on the same qubit");
  }
}

// Every axis matrix is diagonal or anti-diagonal, so each basis column has a
// single nonzero image. coeff[b] is that entry for input bit b.
struct TermAction {
  Qubit qubit;
  bool flips;
  Amplitude coeff[2];
};

std::vector<TermAction> term_actions(const Observable& obs) {
  std::vector<TermAction> out;
  for (const auto& t : obs.terms()) {
    const GateMatrix am = axis_matrix(t.axis);
    const bool flips = am(0, 0) == Amplitude(0);
    out.push_back({t.qubit, flips, {flips ? am(1, 0) : am(0, 0), flips ? am(0, 1) : am(1, 1)}});
  }
  return out;
}

std::pair<std::size_t, Amplitude> column_image(const std::vector<TermAction>& actions,
                                               std::size_t col) {
  std::size_t row = col;
  Amplitude coeff = 1;
  for (const auto& a : actions) {
    const std::size_t bit = (col >> a.qubit) & 1u;
    coeff *= a.coeff[bit];
    if (a.flips) row ^= std::size_t{1} << a.qubit;
  }
  return {row, coeff};
}

std::vector<Amplitude> apply_observable(std::span<const Amplitude> psi, std::size_t n,
                                        const Observable& obs) {
  if (obs.max_qubit() >= n) {
    throw InvalidArgument("observable " + obs.token() + " does not fit a " + std::to_string(n) +
                          "-qubit state");
  }
  const auto actions = term_actions(obs);
  std::vector<Amplitude> out(psi.size());
  for (std::size_t col = 0; col < psi.size(); ++col) {
    const auto [row, coeff] = column_image(actions, col);
    out[row] += coeff * psi[col];
  }
  return out;
}

std::vector<Amplitude> apply_observable(const StateVector& state, const Observable& obs) {
  return apply_observable(state.amplitudes(), state.num_qubits(), obs);
}

// (psi + sign * O psi) / 2, unnormalized.
std::vector<Amplitude> project(std::span<const Amplitude> psi, const std::vector<Amplitude>& o_psi,
                               int sign) {
  std::vector<Amplitude> out(psi.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = 0.5 * (psi[i] + static_cast<double>(sign) * o_psi[i]);
  }
  return out;
}

std::vector<Amplitude> project(const StateVector& state, const std::vector<Amplitude>& o_psi,
                               int sign) {
  return project(state.amplitudes(), o_psi, sign);
}

double squared_norm(const std::vector<Amplitude>& v) {
  double s = 0;
  for (const auto& a : v) s += std::norm(a);
  return s;
}

StateVector normalized(std::vector<Amplitude> v) {
  const double n = std::sqrt(squared_norm(v));
  for (auto& a : v) a /= n;
  return StateVector(std::move(v));
}

}  // namespace

std::string_view axis_token(Axis axis) {
  switch (axis) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    case Axis::Z: return "Z";
    case Axis::XplusY: return "X+Y";
    case Axis::XminusY: return "X-Y";
  }
  return "?";
}

std::optional<Axis> parse_axis(std::string_view token) {
  for (Axis a : kAllAxes) {
    if (axis_token(a) == token) return a;
  }
  return std::nullopt;
}

GateMatrix axis_matrix(Axis axis) {
  const Amplitude w = std::polar(1.0, std::numbers::pi / 4);
  switch (axis) {
    case Axis::X: return gates::X();
    case Axis::Y: return gates::Y();
    case Axis::Z: return gates::Z();
    case Axis::XplusY: return GateMatrix(1, {0, std::conj(w), w, 0});
    case Axis::XminusY: return GateMatrix(1, {0, w, std::conj(w), 0});
  }
  throw InvalidArgument("unknown axis");
}

std::optional<SignedAxis> match_axis(const GateMatrix& m, double tol) {
  if (m.arity() != 1) return std::nullopt;
  for (Axis a : kAllAxes) {
    const GateMatrix am = axis_matrix(a);
    for (int sign : {1, -1}) {
      bool same = true;
      for (std::size_t i = 0; i < 4 && same; ++i) {
        same = std::abs(m.entries()[i] - static_cast<double>(sign) * am.entries()[i]) <= tol;
      }
      if (same) return SignedAxis{a, sign};
    }
  }
  return std::nullopt;
}

std::optional<SignedAxis> conjugate_axis(Axis axis, const GateMatrix& w) {
  return match_axis(w * axis_matrix(axis) * w.adjoint());
}

Observable::Observable(std::vector<ObservableTerm> terms) : terms_(std::move(terms)) {
  check_terms(terms_);
}

Observable Observable::parse(std::string_view token) {
  std::vector<ObservableTerm> terms;
  std::size_t start = 0;
  while (true) {
    const std::size_t star = token.find('*', start);
    const std::string_view part =
        token.substr(start, star == std::string_view::npos ? std::string_view::npos : star - start);
    const std::size_t at = part.find('@');
    if (at == std::string_view::npos) {
      throw InvalidArgument("observable token '" + std::string(token) + "' lacks '@'");
    }
    const auto axis = parse_axis(part.substr(0, at));
    if (!axis) {
      throw InvalidArgument("unknown axis in observable token '" + std::string(token) + "'");
    }
    const std::string_view digits = part.substr(at + 1);
    Qubit q = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw InvalidArgument("bad qubit index in observable token '" + std::string(token) + "'");
    }
    terms.push_back({q, *axis});
    if (star == std::string_view::npos) break;
    start = star + 1;
  }
  return Observable(std::move(terms));
}

Qubit Observable::max_qubit() const {
  Qubit m = 0;
  for (const auto& t : terms_) m = std::max(m, t.qubit);
  return m;
}

bool Observable::acts_on(Qubit q) const { return axis_on(q).has_value(); }

std::optional<Axis> Observable::axis_on(Qubit q) const {
  for (const auto& t : terms_) {
    if (t.qubit == q) return t.axis;
  }
  return std::nullopt;
}

std::string Observable::token() const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += '*';
    out += axis_token(t.axis);
    out += '@';
    out += std::to_string(t.qubit);
  }
  return out;
}

std::string Observable::kind() const {
  std::vector<Axis> axes;
  for (const auto& t : terms_) axes.push_back(t.axis);
  std::sort(axes.begin(), axes.end(), [](Axis a, Axis b) { return axis_rank(a) < axis_rank(b); });
  std::string out;
  for (Axis a : axes) {
    if (!out.empty()) out += '*';
    out += axis_token(a);
  }
  return out;
}

Observable Observable::relabeled(const std::vector<Qubit>& physical_of) const {
  std::vector<ObservableTerm> terms = terms_;
  for (auto& t : terms) {
    if (t.qubit >= physical_of.size()) {
      throw InvalidArgument("relabel: qubit " + std::to_string(t.qubit) + " has no image");
    }
    t.qubit = physical_of[t.qubit];
  }
  return Observable(std::move(terms));
}

std::vector<Amplitude> observable_matrix(const Observable& obs, std::size_t n) {
  if (obs.max_qubit() >= n) {
    throw InvalidArgument("observable " + obs.token() + " out of range for " + std::to_string(n) +
                          " qubits");
  }
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Amplitude> m(dim * dim);
  const auto actions = term_actions(obs);
  for (std::size_t col = 0; col < dim; ++col) {
    const auto [row, coeff] = column_image(actions, col);
    m[row * dim + col] = coeff;
  }
  return m;
}

std::pair<std::vector<Amplitude>, std::vector<Amplitude>> eigenprojectors(const Observable& obs,
                                                                          std::size_t n) {
  const auto o = observable_matrix(obs, n);
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Amplitude> plus(dim * dim), minus(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const Amplitude id = r == c ? 1.0 : 0.0;
      plus[r * dim + c] = 0.5 * (id + o[r * dim + c]);
      minus[r * dim + c] = 0.5 * (id - o[r * dim + c]);
    }
  }
  return {std::move(plus), std::move(minus)};
}

BornProbabilities born_probabilities(const StateVector& state, const Observable& obs) {
  const auto o_psi = apply_observable(state, obs);
  // <psi|O|psi> is real for Hermitian O; p(+-) = (1 +- <O>)/2.
  Amplitude expect = 0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    expect += std::conj(state[i]) * o_psi[i];
  }
  const double e = std::clamp(expect.real(), -1.0, 1.0);
  return {0.5 * (1 + e), 0.5 * (1 - e)};
}

ForcedResult force_outcome(const StateVector& state, const Observable& obs, Outcome want) {
  const auto o_psi = apply_observable(state, obs);
  auto projected = project(state, o_psi, value(want));
  const double p = squared_norm(projected);
  if (p < kZeroProbability) {
    throw ImpossibleBranch("outcome " + std::string(1, outcome_char(want)) + "1 of " + obs.token() +
                           " has probability " + std::to_string(p));
  }
  return {normalized(std::move(projected)), p};
}

MeasureResult measure(const StateVector& state, const Observable& obs, double draw) {
  const auto o_psi = apply_observable(state, obs);
  auto plus = project(state, o_psi, +1);
  auto minus = project(state, o_psi, -1);
  const double p_plus = squared_norm(plus);
  const double p_minus = squared_norm(minus);
  if (p_plus < kZeroProbability && p_minus < kZeroProbability) {
    throw CorruptState("both outcomes of " + obs.token() + " have vanishing probability");
  }
  // Normalize against round-off so that p(+) + p(-) = 1 exactly.
  const double p = p_plus / (p_plus + p_minus);
  const bool take_plus = p_minus < kZeroProbability || (p_plus >= kZeroProbability && draw < p);
  if (take_plus) {
    return {Outcome::kPlus, normalized(std::move(plus)), p};
  }
  return {Outcome::kMinus, normalized(std::move(minus)), 1 - p};
}

MeasureResult measure(const StateVector& state, const Observable& obs, Rng& rng) {
  return measure(state, obs, rng.draw());
}

StateVector joint_eigenstate(const std::vector<Observable>& observables,
                             const std::vector<Outcome>& outcomes,
                             const std::vector<Qubit>& qubits) {
  if (observables.size() != outcomes.size() || qubits.empty()) {
    throw InvalidArgument("joint_eigenstate: mismatched arguments");
  }
  std::vector<Qubit> local_of(*std::max_element(qubits.begin(), qubits.end()) + 1, Qubit(-1));
  for (std::size_t i = 0; i < qubits.size(); ++i) local_of[qubits[i]] = static_cast<Qubit>(i);
  std::vector<Observable> local;
  for (const auto& o : observables) {
    for (const auto& t : o.terms()) {
      if (t.qubit >= local_of.size() || local_of[t.qubit] == Qubit(-1)) {
        throw InvalidArgument("joint_eigenstate: observable " + o.token() +
                              " acts outside the listed qubits");
      }
    }
    local.push_back(o.relabeled(local_of));
  }

  const std::size_t dim = std::size_t{1} << qubits.size();
  double trace = 0;
  std::optional<std::vector<Amplitude>> best;
  double best_norm = 0;
  for (std::size_t b = 0; b < dim; ++b) {
    std::vector<Amplitude> v(dim);
    v[b] = 1;
    for (std::size_t k = 0; k < local.size(); ++k) {
      v = project(v, apply_observable(v, qubits.size(), local[k]), value(outcomes[k]));
    }
    const double nv = squared_norm(v);
    trace += nv;
    if (nv > best_norm) {
      best_norm = nv;
      best = std::move(v);
    }
  }
  if (std::abs(trace - 1.0) > 1e-9 || !best) {
    throw InvalidArgument("joint_eigenstate: eigenspace is not one-dimensional");
  }
  return normalized(std::move(*best));
}

}  // namespace mbst
