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

// Reference computations for tests. Everything here is built from literal
// matrices and dense Kronecker products, independently of the library's
// index-bit kernels, so that tests compare two separate derivations.

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mbst/circuit.h"
#include "mbst/observables.h"
#include "mbst/patterns.h"
#include "mbst/statevec.h"

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;
using Mat = std::vector<std::vector<C>>;

Mat identity(std::size_t dim);
Mat kron(const Mat& a, const Mat& b);
Mat mul(const Mat& a, const Mat& b);
Mat adjoint(const Mat& a);
Vec act(const Mat& m, const Vec& v);

Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat hadamard();
Mat t_gate();
Mat cnot();
/// (X + Y)/sqrt(2) and (X - Y)/sqrt(2) expanded by hand.
Mat x_plus_y();
Mat x_minus_y();
Mat power(const Mat& m, int exponent);

/// Operator on n qubits acting as `ops[q]` on qubit q (identity when absent),
/// assembled with qubit n-1 as the leftmost Kronecker factor.
Mat on_qubits(const std::vector<std::pair<mbst::Qubit, Mat>>& ops, std::size_t n);
/// Single-qubit operator `m` on qubit q of n.
Mat on_qubit(mbst::Qubit q, const Mat& m, std::size_t n);
/// Two-qubit gate on (first, second) of n qubits, by direct index mapping.
Mat two_qubit(const Mat& g, mbst::Qubit first, mbst::Qubit second, std::size_t n);

/// Basis vector with bits[q] the value of qubit q.
Vec ket(const std::vector<int>& bits);
/// Product state with factor[q] on qubit q.
Vec product(const std::vector<Vec>& factors);
Vec plus();
Vec minus();

Vec to_vec(const mbst::StateVector& s);
double overlap(const Vec& a, const Vec& b);
double norm(const Vec& v);
Vec normalized(Vec v);
/// max_i |a_i - e^{i theta} b_i| with theta chosen on the largest entry of b.
double aligned_distance(const Vec& a, const Vec& b);

/// Haar-random state from a private generator.
Vec random_vec(std::size_t num_qubits, std::uint64_t seed);
mbst::StateVector random_state(std::size_t num_qubits, std::uint64_t seed);

/// Circuit applied with full 2^n matrices.
Vec simulate(const mbst::CircuitIR& ir, const Vec& input);

/// (I + outcome * O) v / 2, unnormalized.
Vec project(const Mat& o, int outcome, const Vec& v);

/// sqrt(<target| rho_keep |target>) where rho_keep is the reduced state of
/// `keep` (target qubit i is keep[i]). Equals 1 iff those qubits are exactly
/// in `target`, unentangled from the rest.
double reduced_fidelity(const Vec& full, const std::vector<mbst::Qubit>& keep, const Vec& target);

/// Literal matrix of an axis.
Mat axis(mbst::Axis a);
/// Dense observable on n qubits.
Mat observable(const mbst::Observable& obs, std::size_t n);

struct ForcedRun {
  Vec state;
  double probability;
};
/// Applies the pattern's signed projectors for `outcomes` in order to a
/// dense state, renormalizing at the end.
ForcedRun run_forced(const mbst::MeasurementPattern& pattern, const Vec& state,
                     const std::vector<int>& outcomes);

/// Ket written with qubit 0 leftmost, from the characters 0, 1, + and -.
Vec written(const std::string& text);
/// Sum of amplitude * vector terms.
Vec sum(const std::vector<std::pair<C, Vec>>& terms);
/// Tensor product operator with per_qubit[q] on qubit q.
Mat ops(const std::vector<Mat>& per_qubit);

/// Transfer states after one, two and three measurements with outcomes
/// j, k, l, written out by hand (a = qubit 0, b = qubit 1, b starts in |0>).
std::vector<Vec> transfer_intermediate(const Vec& phi, int j, int k, int l);
/// CNOT states after one to four measurements with outcomes j, k, l, m
/// (a, b, c = qubits 0, 1, 2; c starts in |+>). abcd lists the amplitudes of
/// |ab> = |00>, |01>, |10>, |11>.
std::vector<Vec> cnot_intermediate(const Vec& abcd, int j, int k, int l, int m);
/// The same |ab> amplitudes as a register with a = qubit 0.
Vec ab_state(const Vec& abcd);

/// Z^z X^x as a matrix.
Mat pauli(int x, int z);

/// Byproduct exponents of the transfer rule: (x, z) = ((1-k)/2, (1-j*l)/2).
std::pair<int, int> transfer_exponents(int j, int k, int l);

/// Every +-1 vector of the given length, +1 first.
std::vector<std::vector<int>> sign_vectors(std::size_t length);

}  // namespace oracle
