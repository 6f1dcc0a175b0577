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

#include "mbst/pauli.h"

#include <charconv>

#include "mbst/errors.h"
#include "mbst/observables.h"

namespace mbst {

PauliOp PauliOp::single(Qubit q, bool x, bool z) {
  PauliOp p;
  p.set(q, x, z);
  return p;
}

void PauliOp::set(Qubit q, bool x, bool z) {
  if (q >= bits_.size()) {
    if (!x && !z) return;
    bits_.resize(q + 1, 0);
  }
  bits_[q] = static_cast<std::uint8_t>((x ? 1u : 0u) | (z ? 2u : 0u));
}

bool PauliOp::is_identity() const {
  for (auto b : bits_) {
    if (b) return false;
  }
  return true;
}

std::vector<Qubit> PauliOp::support() const {
  std::vector<Qubit> out;
  for (Qubit q = 0; q < bits_.size(); ++q) {
    if (bits_[q]) out.push_back(q);
  }
  return out;
}

PauliOp& PauliOp::operator*=(const PauliOp& rhs) {
  if (rhs.bits_.size() > bits_.size()) bits_.resize(rhs.bits_.size(), 0);
  for (std::size_t q = 0; q < rhs.bits_.size(); ++q) bits_[q] ^= rhs.bits_[q];
  return *this;
}

bool PauliOp::operator==(const PauliOp& rhs) const {
  const std::size_t n = std::max(bits_.size(), rhs.bits_.size());
  for (Qubit q = 0; q < n; ++q) {
    if (x_bit(q) != rhs.x_bit(q) || z_bit(q) != rhs.z_bit(q)) return false;
  }
  return true;
}

std::string PauliOp::str() const {
  std::string out;
  for (Qubit q : support()) {
    if (!out.empty()) out += '*';
    if (x_bit(q)) out += 'X';
    if (z_bit(q)) out += 'Z';
    out += '@';
    out += std::to_string(q);
  }
  return out.empty() ? "I" : out;
}

PauliOp PauliOp::parse(std::string_view text) {
  PauliOp p;
  if (text == "I") return p;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t star = text.find('*', start);
    if (star == std::string_view::npos) star = text.size();
    const std::string_view part = text.substr(start, star - start);
    const std::size_t at = part.find('@');
    const std::string_view name = part.substr(0, at);
    Qubit q = 0;
    bool ok = at != std::string_view::npos && (name == "X" || name == "Z" || name == "XZ");
    if (ok) {
      const std::string_view digits = part.substr(at + 1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
      ok = !digits.empty() && ec == std::errc() && ptr == digits.data() + digits.size();
    }
    if (!ok) throw InvalidArgument("bad Pauli text '" + std::string(text) + "'");
    p *= single(q, name.front() == 'X', name.back() == 'Z');
    start = star + 1;
  }
  return p;
}

StateVector apply_pauli(const StateVector& state, const PauliOp& pauli) {
  StateVector out = state;
  for (Qubit q : pauli.support()) {
    if (pauli.x_bit(q)) out = apply_gate(out, gates::X(), {q});
    if (pauli.z_bit(q)) out = apply_gate(out, gates::Z(), {q});
  }
  return out;
}

CliffordImages clifford_images(const GateMatrix& w) {
  if (w.arity() != 1) {
    throw UnsupportedObservable("Clifford images are defined for single-qubit gates only");
  }
  auto image_of = [&](Axis axis) {
    const auto img = conjugate_axis(axis, w);
    if (!img || img->axis == Axis::XplusY || img->axis == Axis::XminusY) {
      throw UnsupportedObservable("gate is not Clifford: conjugated " +
                                  std::string(axis_token(axis)) + " is not a Pauli");
    }
    return PauliOp::single(0, img->axis != Axis::Z, img->axis != Axis::X);
  };
  return {image_of(Axis::X), image_of(Axis::Z)};
}

PauliOp conjugate_pauli(const PauliOp& sigma, Qubit q, const CliffordImages& images) {
  PauliOp local;
  if (sigma.x_bit(q)) local *= images.x_image;
  if (sigma.z_bit(q)) local *= images.z_image;
  PauliOp out = sigma;
  out.set(q, local.x_bit(0), local.z_bit(0));
  return out;
}

}  // namespace mbst
