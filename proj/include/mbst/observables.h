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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mbst/rng.h"
#include "mbst/statevec.h"

namespace mbst {

/// Single-qubit measurement axis. XplusY is (X+Y)/sqrt(2), XminusY is
/// (X-Y)/sqrt(2); both are kept symbolic so reports can name them.
enum class Axis { X, Y, Z, XplusY, XminusY };

inline constexpr Axis kAllAxes[] = {Axis::X, Axis::Y, Axis::Z, Axis::XplusY, Axis::XminusY};

/// "X", "Y", "Z", "X+Y", "X-Y".
std::string_view axis_token(Axis axis);
std::optional<Axis> parse_axis(std::string_view token);

/// 2x2 matrix of the axis (Hermitian involution).
GateMatrix axis_matrix(Axis axis);

/// An axis with a sign: the operator sign * axis_matrix(axis).
struct SignedAxis {
  Axis axis;
  int sign = 1;

  bool operator==(const SignedAxis&) const = default;
};

/// Finds the signed axis equal to `m` within `tol`, if any.
std::optional<SignedAxis> match_axis(const GateMatrix& m, double tol = 1e-9);

/// Conjugates `axis` by a single-qubit unitary: returns W * axis * W^dagger
/// as a signed axis, or nothing when the result leaves the axis set.
std::optional<SignedAxis> conjugate_axis(Axis axis, const GateMatrix& w);

struct ObservableTerm {
  Qubit qubit;
  Axis axis;

  bool operator==(const ObservableTerm&) const = default;
};

/// Two-outcome observable: a tensor product of one or two axes on distinct
/// qubits. Text form is `AXIS@q` or `AXIS@q*AXIS@q`.
class Observable {
 public:
  explicit Observable(std::vector<ObservableTerm> terms);
  Observable(Qubit q, Axis axis) : Observable(std::vector<ObservableTerm>{{q, axis}}) {}
  Observable(Qubit q1, Axis a1, Qubit q2, Axis a2)
      : Observable(std::vector<ObservableTerm>{{q1, a1}, {q2, a2}}) {}

  static Observable parse(std::string_view token);

  const std::vector<ObservableTerm>& terms() const { return terms_; }
  std::size_t arity() const { return terms_.size(); }
  Qubit max_qubit() const;
  bool acts_on(Qubit q) const;
  std::optional<Axis> axis_on(Qubit q) const;

  /// Exact token, e.g. "Z@0*X@2".
  std::string token() const;
  /// Qubit-free family kind with axes in canonical order Z, X, Y, X+Y, X-Y,
  /// e.g. "X@3*Z@1" has kind "Z*X".
  std::string kind() const;

  Observable relabeled(const std::vector<Qubit>& physical_of) const;

  bool operator==(const Observable&) const = default;

 private:
  std::vector<ObservableTerm> terms_;
};

enum class Outcome : int { kMinus = -1, kPlus = 1 };

inline int value(Outcome o) { return static_cast<int>(o); }
inline Outcome outcome_from(int v) { return v < 0 ? Outcome::kMinus : Outcome::kPlus; }
inline Outcome operator*(Outcome o, int sign) { return outcome_from(value(o) * sign); }
/// Exponent (1 - o)/2 in {0, 1}.
inline int exponent(Outcome o) { return o == Outcome::kPlus ? 0 : 1; }
inline char outcome_char(Outcome o) { return o == Outcome::kPlus ? '+' : '-'; }

/// Probabilities below this are treated as impossible branches.
inline constexpr double kZeroProbability = 1e-12;

/// Dense matrix of the observable on n qubits (row-major, 2^n x 2^n).
std::vector<Amplitude> observable_matrix(const Observable& obs, std::size_t n);

/// (P+, P-) = ((I + O)/2, (I - O)/2) as dense matrices on n qubits.
std::pair<std::vector<Amplitude>, std::vector<Amplitude>> eigenprojectors(const Observable& obs,
                                                                          std::size_t n);

struct BornProbabilities {
  double plus;
  double minus;
};

BornProbabilities born_probabilities(const StateVector& state, const Observable& obs);

struct MeasureResult {
  Outcome outcome;
  StateVector state;
  double probability;
};

/// Samples with one draw: +1 iff draw < p(+1).
MeasureResult measure(const StateVector& state, const Observable& obs, double draw);
MeasureResult measure(const StateVector& state, const Observable& obs, Rng& rng);

struct ForcedResult {
  StateVector state;
  double probability;
};

/// Projects onto the requested branch; throws ImpossibleBranch when its
/// probability is below kZeroProbability.
ForcedResult force_outcome(const StateVector& state, const Observable& obs, Outcome want);

/// The unique joint eigenstate of `observables` (all acting inside `qubits`)
/// with the given outcomes, as a state on qubits.size() qubits where local
/// qubit i is qubits[i]. Throws InvalidArgument when the eigenspace is not
/// one-dimensional.
StateVector joint_eigenstate(const std::vector<Observable>& observables,
                             const std::vector<Outcome>& outcomes,
                             const std::vector<Qubit>& qubits);

}  // namespace mbst
