// Copyright 2025-2026 The bbenc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include "bbenc/circuit.hpp"

namespace bbenc {

inline constexpr int kMaxDenseQubits = 14;

/// Apply one gate to a statevector (basis index has qubit 0 as MSB).
void apply_gate(const Gate& g, int n_qubits, Eigen::VectorXcd& psi);

/// Apply the whole circuit in order.
void apply_circuit(const Circuit& c, Eigen::VectorXcd& psi);

/// Exact dense unitary; guarded at kMaxDenseQubits total qubits.
Eigen::MatrixXcd unitary_of(const Circuit& c);

/// Projected block (<0|_anc (x) I) U (|0>_anc (x) I): propagates only the
/// 2^n_sys ancilla-zero basis columns, so it scales past the dense guard.
/// Ancillas are the leading (most significant) n_anc qubits.
Eigen::MatrixXcd block_of(const Circuit& c, int n_anc);

/// max |(U^dag U - I)_ij|
double unitarity_defect(const Eigen::MatrixXcd& u);

/// Spectral norm (largest singular value).
double spectral_norm(const Eigen::MatrixXcd& m);

/// max |a_ij - b_ij| after aligning a's global phase to b on the
/// largest-magnitude entry of b.
double max_diff_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace bbenc
