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

#include "mbst/statevec.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mbst/errors.h"

namespace mbst {
namespace {

constexpr double kUnitarityTolerance = 1e-9;
constexpr double kDetachTolerance = 1e-7;

double squared_norm(std::span<const Amplitude> amps) {
  double total = 0;
  for (const auto& a : amps) {
    total += std::norm(a);
  }
  return total;
}

void check_qubit(const StateVector& state, Qubit q) {
  if (q >= state.num_qubits()) {
    throw InvalidArgument("qubit " + std::to_string(q) + " out of range for a " +
                          std::to_string(state.num_qubits()) + "-qubit state");
  }
}

// Deposits bit i of `value` at position positions[i] of an index whose other
// bits come, in order, from `rest`.
std::size_t scatter_index(std::size_t rest, std::size_t value, std::span<const Qubit> positions,
                          std::size_t total_qubits) {
  std::size_t out = 0;
  std::size_t rest_bit = 0;
  for (std::size_t q = 0; q < total_qubits; ++q) {
    auto it = std::find(positions.begin(), positions.end(), static_cast<Qubit>(q));
    std::size_t bit;
    if (it != positions.end()) {
      bit = (value >> (it - positions.begin())) & 1u;
    } else {
      bit = (rest >> rest_bit) & 1u;
      ++rest_bit;
    }
    out |= bit << q;
  }
  return out;
}

}  // namespace

StateVector::StateVector(std::vector<Amplitude> amplitudes) : amplitudes_(std::move(amplitudes)) {
  const std::size_t len = amplitudes_.size();
  if (len < 2 || !std::has_single_bit(len)) {
    throw InvalidArgument("amplitude count " + std::to_string(len) +
                          " is not a power of two of at least 2");
  }
  num_qubits_ = static_cast<std::size_t>(std::countr_zero(len));
  const double n = std::sqrt(squared_norm(amplitudes_));
  if (!(std::abs(n - 1.0) <= kInputNormTolerance)) {
    throw InvalidArgument("state norm " + std::to_string(n) + " is not 1");
  }
}

double StateVector::norm() const { return std::sqrt(squared_norm(amplitudes_)); }

GateMatrix::GateMatrix(int arity, std::vector<Amplitude> entries)
    : arity_(arity), entries_(std::move(entries)) {
  if (arity != 1 && arity != 2) {
    throw InvalidArgument("gate arity must be 1 or 2");
  }
  const std::size_t dim = dimension();
  if (entries_.size() != dim * dim) {
    throw InvalidArgument("gate of arity " + std::to_string(arity) + " needs " +
                          std::to_string(dim * dim) + " entries");
  }
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      Amplitude acc = 0;
      for (std::size_t k = 0; k < dim; ++k) {
        acc += (*this)(r, k) * std::conj((*this)(c, k));
      }
      const Amplitude want = r == c ? 1.0 : 0.0;
      if (std::abs(acc - want) > kUnitarityTolerance) {
        throw InvalidArgument("gate matrix is not unitary");
      }
    }
  }
}

GateMatrix GateMatrix::adjoint() const {
  const std::size_t dim = dimension();
  std::vector<Amplitude> out(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      out[c * dim + r] = std::conj((*this)(r, c));
    }
  }
  return GateMatrix(arity_, std::move(out));
}

GateMatrix GateMatrix::operator*(const GateMatrix& rhs) const {
  if (arity_ != rhs.arity_) {
    throw InvalidArgument("gate arity mismatch in product");
  }
  const std::size_t dim = dimension();
  std::vector<Amplitude> out(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      Amplitude acc = 0;
      for (std::size_t k = 0; k < dim; ++k) {
        acc += (*this)(r, k) * rhs(k, c);
      }
      out[r * dim + c] = acc;
    }
  }
  return GateMatrix(arity_, std::move(out));
}

bool GateMatrix::equal_up_to_phase(const GateMatrix& other, double tol) const {
  if (arity_ != other.arity_) {
    return false;
  }
  // Pick the phase from the largest entry of `other`.
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (std::abs(other.entries_[i]) > std::abs(other.entries_[pivot])) {
      pivot = i;
    }
  }
  if (std::abs(entries_[pivot]) < 1e-12) {
    return false;
  }
  const Amplitude phase = other.entries_[pivot] / entries_[pivot];
  if (std::abs(std::abs(phase) - 1.0) > tol) {
    return false;
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (std::abs(entries_[i] * phase - other.entries_[i]) > tol) {
      return false;
    }
  }
  return true;
}

namespace gates {

GateMatrix I() { return GateMatrix(1, {1, 0, 0, 1}); }
GateMatrix X() { return GateMatrix(1, {0, 1, 1, 0}); }
GateMatrix Y() { return GateMatrix(1, {0, Amplitude(0, -1), Amplitude(0, 1), 0}); }
GateMatrix Z() { return GateMatrix(1, {1, 0, 0, -1}); }

GateMatrix H() {
  const double s = 1.0 / std::numbers::sqrt2;
  return GateMatrix(1, {s, s, s, -s});
}

GateMatrix T() { return GateMatrix(1, {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)}); }
GateMatrix Tdg() { return GateMatrix(1, {1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)}); }

GateMatrix CNot() {
  return GateMatrix(2, {1, 0, 0, 0,  //
                        0, 1, 0, 0,  //
                        0, 0, 0, 1,  //
                        0, 0, 1, 0});
}

GateMatrix from_label(std::string_view label) {
  if (label == "CNOT") {
    return CNot();
  }
  if (label.empty()) {
    throw InvalidArgument("empty gate label");
  }
  GateMatrix acc = I();
  std::size_t pos = 0;
  while (pos < label.size()) {
    if (label.substr(pos, 3) == "TDG") {
      acc = acc * Tdg();
      pos += 3;
      continue;
    }
    switch (label[pos]) {
      case 'I': break;
      case 'X': acc = acc * X(); break;
      case 'Y': acc = acc * Y(); break;
      case 'Z': acc = acc * Z(); break;
      case 'H': acc = acc * H(); break;
      case 'T': acc = acc * T(); break;
      default:
        throw InvalidArgument("unknown gate label '" + std::string(label) + "'");
    }
    ++pos;
  }
  return acc;
}

}  // namespace gates

StateVector make_basis_state(std::size_t num_qubits, std::string_view bits) {
  if (num_qubits < 1) {
    throw InvalidArgument("a state needs at least one qubit");
  }
  if (bits.size() != num_qubits) {
    throw InvalidArgument("bitstring length " + std::to_string(bits.size()) + " does not match " +
                          std::to_string(num_qubits) + " qubits");
  }
  std::size_t index = 0;
  for (std::size_t q = 0; q < num_qubits; ++q) {
    if (bits[q] == '1') {
      index |= std::size_t{1} << q;
    } else if (bits[q] != '0') {
      throw InvalidArgument("bitstring may only contain '0' and '1'");
    }
  }
  std::vector<Amplitude> amps(std::size_t{1} << num_qubits);
  amps[index] = 1;
  return StateVector(std::move(amps));
}

StateVector make_state(std::vector<Amplitude> amplitudes) { return StateVector(std::move(amplitudes)); }

StateVector apply_gate(const StateVector& state, const GateMatrix& gate,
                       std::span<const Qubit> qubits) {
  if (qubits.size() != static_cast<std::size_t>(gate.arity())) {
    throw InvalidArgument("gate arity " + std::to_string(gate.arity()) + " but " +
                          std::to_string(qubits.size()) + " qubits given");
  }
  for (Qubit q : qubits) {
    check_qubit(state, q);
  }
  if (qubits.size() == 2 && qubits[0] == qubits[1]) {
    throw InvalidArgument("gate qubits collide");
  }

  std::vector<Amplitude> out(state.amplitudes().begin(), state.amplitudes().end());
  if (gate.arity() == 1) {
    const std::size_t bit = std::size_t{1} << qubits[0];
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (i & bit) {
        continue;
      }
      const Amplitude a0 = state[i];
      const Amplitude a1 = state[i | bit];
      out[i] = gate(0, 0) * a0 + gate(0, 1) * a1;
      out[i | bit] = gate(1, 0) * a0 + gate(1, 1) * a1;
    }
  } else {
    const std::size_t hi = std::size_t{1} << qubits[0];
    const std::size_t lo = std::size_t{1} << qubits[1];
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (i & (hi | lo)) {
        continue;
      }
      const std::size_t idx[4] = {i, i | lo, i | hi, i | hi | lo};
      Amplitude in[4];
      for (int k = 0; k < 4; ++k) {
        in[k] = state[idx[k]];
      }
      for (int r = 0; r < 4; ++r) {
        Amplitude acc = 0;
        for (int c = 0; c < 4; ++c) {
          acc += gate(r, c) * in[c];
        }
        out[idx[r]] = acc;
      }
    }
  }
  return StateVector(std::move(out));
}

StateVector apply_gate(const StateVector& state, const GateMatrix& gate,
                       std::initializer_list<Qubit> qubits) {
  return apply_gate(state, gate, std::span<const Qubit>(qubits.begin(), qubits.size()));
}

double fidelity_mod_phase(const StateVector& s1, const StateVector& s2) {
  if (s1.num_qubits() != s2.num_qubits()) {
    throw InvalidArgument("fidelity between states of " + std::to_string(s1.num_qubits()) +
                          " and " + std::to_string(s2.num_qubits()) + " qubits");
  }
  Amplitude overlap = 0;
  for (std::size_t i = 0; i < s1.dimension(); ++i) {
    overlap += std::conj(s1[i]) * s2[i];
  }
  return std::min(1.0, std::abs(overlap));
}

StateVector tensor(const StateVector& low, const StateVector& high) {
  std::vector<Amplitude> out(low.dimension() * high.dimension());
  for (std::size_t h = 0; h < high.dimension(); ++h) {
    for (std::size_t l = 0; l < low.dimension(); ++l) {
      out[h * low.dimension() + l] = low[l] * high[h];
    }
  }
  return StateVector(std::move(out));
}

StateVector insert_factor(const StateVector& state, const StateVector& factor,
                          std::span<const Qubit> positions) {
  const std::size_t total = state.num_qubits() + factor.num_qubits();
  if (positions.size() != factor.num_qubits()) {
    throw InvalidArgument("insert_factor: position count does not match factor size");
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] >= total ||
        std::count(positions.begin(), positions.end(), positions[i]) != 1) {
      throw InvalidArgument("insert_factor: bad position list");
    }
  }
  std::vector<Amplitude> out(std::size_t{1} << total);
  for (std::size_t r = 0; r < state.dimension(); ++r) {
    for (std::size_t f = 0; f < factor.dimension(); ++f) {
      out[scatter_index(r, f, positions, total)] = state[r] * factor[f];
    }
  }
  return StateVector(std::move(out));
}

StateVector detach_qubits(const StateVector& state, std::span<const Qubit> qubits,
                          const StateVector& expected) {
  if (expected.num_qubits() != qubits.size()) {
    throw InvalidArgument("detach: expected state size does not match qubit count");
  }
  if (qubits.size() >= state.num_qubits()) {
    throw InvalidArgument("detach: cannot remove every qubit of the state");
  }
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    check_qubit(state, qubits[i]);
    if (std::count(qubits.begin(), qubits.end(), qubits[i]) != 1) {
      throw InvalidArgument("detach: repeated qubit");
    }
  }

  const std::size_t rest_qubits = state.num_qubits() - qubits.size();
  const std::size_t rest_dim = std::size_t{1} << rest_qubits;

  // reduced[r] = (<expected| (x) I) |state>, restricted to rest index r.
  std::vector<Amplitude> reduced(rest_dim);
  for (std::size_t r = 0; r < rest_dim; ++r) {
    Amplitude acc = 0;
    for (std::size_t f = 0; f < expected.dimension(); ++f) {
      acc += std::conj(expected[f]) * state[scatter_index(r, f, qubits, state.num_qubits())];
    }
    reduced[r] = acc;
  }
  const double overlap = std::sqrt(squared_norm(reduced));
  if (overlap >= 1.0 - kDetachTolerance) {
    for (auto& a : reduced) {
      a /= overlap;
    }
    return StateVector(std::move(reduced));
  }

  // Distinguish entanglement from a wrong pure marginal through the purity of
  // the reduced density matrix of the detached block.
  const std::size_t fdim = expected.dimension();
  std::vector<Amplitude> rho(fdim * fdim);
  for (std::size_t r = 0; r < rest_dim; ++r) {
    for (std::size_t f1 = 0; f1 < fdim; ++f1) {
      const Amplitude a1 = state[scatter_index(r, f1, qubits, state.num_qubits())];
      for (std::size_t f2 = 0; f2 < fdim; ++f2) {
        const Amplitude a2 = state[scatter_index(r, f2, qubits, state.num_qubits())];
        rho[f1 * fdim + f2] += a1 * std::conj(a2);
      }
    }
  }
  double purity = 0;
  for (const auto& v : rho) {
    purity += std::norm(v);
  }
  if (purity < 1.0 - kDetachTolerance) {
    throw EntangledQubit("detach: qubits are entangled with the rest of the register (purity " +
                         std::to_string(purity) + ")");
  }
  throw MarginalMismatch("detach: marginal differs from the expected state (overlap " +
                         std::to_string(overlap) + ")");
}

StateVector detach_qubit(const StateVector& state, Qubit q, const StateVector& expected) {
  if (expected.num_qubits() != 1) {
    throw InvalidArgument("detach_qubit: expected state must be a single qubit");
  }
  const Qubit qs[1] = {q};
  return detach_qubits(state, qs, expected);
}

Remainder remove_factors(const StateVector& state, const std::vector<Factor>& factors) {
  std::vector<Qubit> labels(state.num_qubits());
  for (Qubit q = 0; q < labels.size(); ++q) labels[q] = q;
  StateVector current = state;
  for (const auto& f : factors) {
    std::vector<Qubit> positions;
    for (Qubit q : f.qubits) {
      auto it = std::find(labels.begin(), labels.end(), q);
      if (it == labels.end()) {
        throw InvalidArgument("remove_factors: qubit " + std::to_string(q) +
                              " is absent or already detached");
      }
      positions.push_back(static_cast<Qubit>(it - labels.begin()));
    }
    current = detach_qubits(current, positions, f.state);
    std::vector<Qubit> kept;
    for (Qubit i = 0; i < labels.size(); ++i) {
      if (std::find(positions.begin(), positions.end(), i) == positions.end()) {
        kept.push_back(labels[i]);
      }
    }
    labels = std::move(kept);
  }
  return {std::move(current), std::move(labels)};
}

StateVector reorder_qubits(const StateVector& state, std::span<const Qubit> order) {
  const std::size_t n = state.num_qubits();
  if (order.size() != n) {
    throw InvalidArgument("reorder: order length does not match qubit count");
  }
  std::vector<bool> seen(n, false);
  for (Qubit q : order) {
    if (q >= n || seen[q]) {
      throw InvalidArgument("reorder: order is not a permutation");
    }
    seen[q] = true;
  }
  std::vector<Amplitude> out(state.dimension());
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    std::size_t j = 0;
    for (std::size_t k = 0; k < n; ++k) {
      j |= ((i >> order[k]) & 1u) << k;
    }
    out[j] = state[i];
  }
  return StateVector(std::move(out));
}

std::string to_string(const StateVector& state) {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (i) os << ' ';
    os << '(' << state[i].real() << ',' << state[i].imag() << ')';
  }
  return os.str();
}

}  // namespace mbst
