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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mbst/statevec.h"

namespace mbst {

/// Pauli operator modulo global phase: per qubit a pair of bits (x, z)
/// standing for Z^z X^x. Composition is bitwise XOR, so every element is its
/// own inverse. Qubits beyond the stored range are identity.
class PauliOp {
 public:
  PauliOp() = default;

  static PauliOp x(Qubit q) { return single(q, true, false); }
  static PauliOp z(Qubit q) { return single(q, false, true); }
  static PauliOp xz(Qubit q) { return single(q, true, true); }
  static PauliOp single(Qubit q, bool x, bool z);
  /// Z^z_exp X^x_exp on q; exponents taken modulo 2.
  static PauliOp from_exponents(Qubit q, int x_exp, int z_exp) {
    return single(q, (x_exp & 1) != 0, (z_exp & 1) != 0);
  }

  /// Parses the text form produced by str(): "I" or e.g. "X@1*XZ@2".
  static PauliOp parse(std::string_view text);

  bool x_bit(Qubit q) const { return q < bits_.size() && (bits_[q] & 1u); }
  bool z_bit(Qubit q) const { return q < bits_.size() && (bits_[q] & 2u); }
  void set(Qubit q, bool x, bool z);

  bool is_identity() const;
  /// Qubits carrying a non-identity factor, ascending.
  std::vector<Qubit> support() const;
  /// The factor on q alone.
  PauliOp restricted(Qubit q) const { return single(q, x_bit(q), z_bit(q)); }
  /// The factor on q moved to qubit `to`.
  PauliOp moved(Qubit q, Qubit to) const { return single(to, x_bit(q), z_bit(q)); }

  PauliOp& operator*=(const PauliOp& rhs);
  friend PauliOp operator*(PauliOp lhs, const PauliOp& rhs) { return lhs *= rhs; }
  bool operator==(const PauliOp& rhs) const;

  /// "I" for the identity, otherwise factors "X@q", "Z@q" or "XZ@q" in
  /// ascending qubit order joined by '*'.
  std::string str() const;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Applies Z^z X^x on every qubit of the support.
StateVector apply_pauli(const StateVector& state, const PauliOp& pauli);

/// Single-qubit images of X and Z under conjugation by a Clifford unitary,
/// used to move a Pauli through it: W (Z^z X^x) W^dagger ~ image_z^z image_x^x.
struct CliffordImages {
  PauliOp x_image;
  PauliOp z_image;
};

/// Returns the images on qubit 0, or throws UnsupportedObservable when `w`
/// does not map X and Z to Paulis.
CliffordImages clifford_images(const GateMatrix& w);

/// W sigma W^dagger for a single-qubit Clifford, applied to qubit q of sigma.
PauliOp conjugate_pauli(const PauliOp& sigma, Qubit q, const CliffordImages& images);

}  // namespace mbst
