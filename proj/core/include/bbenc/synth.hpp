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

struct GateCounts {
  long rotations = 0;  // RX + RZ
  long cnots = 0;
  int ancillas = 0;
  long query_depth = 0;  // building-block invocations, filled by builders
};

/// Count rotations/CNOTs of an already-lowered circuit.
GateCounts count_gates(const Circuit& c);

/// Rz/CNOT realization of diag(e^{i phases[k]}) on n qubits via the Walsh
/// coefficients, Gray-code walk per target qubit, zero coefficients skipped.
/// At most 2^n - 1 Rz and 2^n - 2 CNOT gates.
Circuit synthesize_diagonal_unitary(const std::vector<double>& phases);

/// Emit the same synthesis onto an existing gate list for the given qubits
/// (first listed qubit = most significant subindex bit).
void emit_diagonal(Circuit& c, const std::vector<int>& qubits,
                   const std::vector<double>& phases);

/// Remove Rx/Rz gates with |angle| < tol. The unitary moves by at most the
/// sum of dropped |angles| in spectral norm.
Circuit drop_small_rotations(const Circuit& c, double tol);

/// Wrap a circuit in a single control qubit (structural; lowered by transpile).
Circuit controlled(const Circuit& c, int control, bool on_one);

/// Textbook DFT matrix as a circuit (terminal swap network included).
Circuit qft_circuit(int n);

/// Lower to {CNOT, Rx, Rz} + one trailing GlobalPhase; merges adjacent
/// same-axis rotations and removes zero-angle gates.
std::pair<Circuit, GateCounts> transpile(const Circuit& c);

/// Gate list for an arbitrary 2x2 unitary: GlobalPhase + Rz Rx Rz (ZXZ Euler).
std::vector<Gate> su2_gates(const Eigen::Matrix2cd& u, int qubit);

}  // namespace bbenc
