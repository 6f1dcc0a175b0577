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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mbst {

using Amplitude = std::complex<double>;
using Qubit = std::uint32_t;

/// Tolerance on the norm accepted when building a state from raw amplitudes.
inline constexpr double kInputNormTolerance = 1e-6;

/// Pure state of `num_qubits` qubits. Qubit q is bit q of the amplitude index
/// (qubit 0 is the least significant bit). The norm is 1 within
/// kInputNormTolerance at construction; nothing renormalizes silently.
class StateVector {
 public:
  /// Validates length (power of two, at least 2) and norm.
  explicit StateVector(std::vector<Amplitude> amplitudes);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  const Amplitude& operator[](std::size_t index) const { return amplitudes_[index]; }
  double norm() const;

  /// Releases the amplitude buffer; the state is left empty.
  std::vector<Amplitude> release() && { return std::move(amplitudes_); }

 private:
  std::size_t num_qubits_ = 0;
  std::vector<Amplitude> amplitudes_;
};

/// Unitary on one or two qubits, row-major. For arity 2 the local basis index
/// is 2*bit(first listed qubit) + bit(second listed qubit), so the first
/// qubit is the high (left) tensor factor, as in the usual CNot matrix.
class GateMatrix {
 public:
  /// Validates size and unitarity (U U^dagger = I within 1e-9 entrywise).
  GateMatrix(int arity, std::vector<Amplitude> entries);

  int arity() const { return arity_; }
  std::size_t dimension() const { return std::size_t{1} << arity_; }
  const Amplitude& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dimension() + col];
  }
  std::span<const Amplitude> entries() const { return entries_; }

  GateMatrix adjoint() const;
  GateMatrix operator*(const GateMatrix& rhs) const;

  /// Entrywise equality up to a global unit phase.
  bool equal_up_to_phase(const GateMatrix& other, double tol = 1e-9) const;

 private:
  int arity_;
  std::vector<Amplitude> entries_;
};

namespace gates {
GateMatrix I();
GateMatrix X();
GateMatrix Y();
GateMatrix Z();
GateMatrix H();
GateMatrix T();
GateMatrix Tdg();
/// Control is the first listed qubit.
GateMatrix CNot();

/// Product of named factors, leftmost applied last: "HT" is H*T, "HTDG" is
/// H*T^dagger. Atoms are I, X, Y, Z, H, T, TDG and the whole word CNOT.
GateMatrix from_label(std::string_view label);
}  // namespace gates

/// |bits>, where bits[q] is the value of qubit q.
StateVector make_basis_state(std::size_t num_qubits, std::string_view bits);

StateVector make_state(std::vector<Amplitude> amplitudes);

StateVector apply_gate(const StateVector& state, const GateMatrix& gate,
                       std::span<const Qubit> qubits);
StateVector apply_gate(const StateVector& state, const GateMatrix& gate,
                       std::initializer_list<Qubit> qubits);

/// |<s1|s2>|, insensitive to global phase.
double fidelity_mod_phase(const StateVector& s1, const StateVector& s2);

/// Tensor product with `low` occupying the low-order qubits:
/// result qubit i is low qubit i for i < low.num_qubits(), else high qubit
/// i - low.num_qubits().
StateVector tensor(const StateVector& low, const StateVector& high);

/// Inserts `factor` (k qubits) so that it occupies `positions` (ascending or
/// not; positions[i] receives factor qubit i) in a state of
/// state.num_qubits() + k qubits. The remaining qubits keep their relative
/// order.
StateVector insert_factor(const StateVector& state, const StateVector& factor,
                          std::span<const Qubit> positions);

/// Removes qubit q, which must be in the single-qubit state `expected`
/// (up to global phase, fidelity within 1e-7). Qubits above q shift down.
/// Throws EntangledQubit when q carries correlations with the rest and
/// MarginalMismatch when q is pure but not `expected`.
StateVector detach_qubit(const StateVector& state, Qubit q, const StateVector& expected);

/// Multi-qubit form of detach_qubit: `expected` is a state on
/// qubits.size() qubits, expected qubit i sitting at qubits[i].
StateVector detach_qubits(const StateVector& state, std::span<const Qubit> qubits,
                          const StateVector& expected);

/// A block of qubits expected to be in `state` (local qubit i at qubits[i]).
struct Factor {
  std::vector<Qubit> qubits;
  StateVector state;
};

struct Remainder {
  StateVector state;
  /// Original index of each remaining qubit, ascending.
  std::vector<Qubit> labels;
};

/// Detaches every factor in turn (indices refer to the input state).
Remainder remove_factors(const StateVector& state, const std::vector<Factor>& factors);

/// Relabels qubits: result qubit i is input qubit order[i]. `order` must be a
/// permutation of 0..n-1.
StateVector reorder_qubits(const StateVector& state, std::span<const Qubit> order);

/// Text form "(re,im) (re,im) ..." for diagnostics.
std::string to_string(const StateVector& state);

}  // namespace mbst
