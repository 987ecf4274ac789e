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
#include <optional>

#include "bbenc/circuit.hpp"
#include "bbenc/lattice.hpp"

namespace bbenc {

/// The extra unitary making (S (x) I) U_A satisfy the qubitization
/// conditions. Identity works for involutory select oracles; a single Z
/// on one ancilla covers the signal-processing constructions.
enum class SOperatorKind { None, Identity, SingleZ };

struct SOperator {
  SOperatorKind kind = SOperatorKind::None;
  int qubit = -1;        // global qubit index of the Z (ancillas lead)
  bool commutes = false; // claims S U = U^dag S

  static SOperator none() { return {}; }
  static SOperator identity() { return {SOperatorKind::Identity, -1, false}; }
  static SOperator single_z(int qubit, bool commutes) {
    return {SOperatorKind::SingleZ, qubit, commutes};
  }
};

struct UnitaryTerm {
  double coefficient;  // > 0; phases are absorbed into the circuit
  Circuit circuit;     // system-register numbering
};

struct BlockEncoding {
  Circuit circuit;  // ancillas are the leading qubits
  double alpha = 1.0;
  SOperator s_op;
  bool has_target = false;
  bool target_is_diag = false;
  Eigen::VectorXd target_diag;
  Eigen::MatrixXcd target_dense;

  int n_anc() const { return circuit.regs.ancillas(); }
  int n_sys() const { return circuit.regs.system; }
  /// Dense view of the verification reference (throws if absent).
  Eigen::MatrixXcd target() const;

  void set_target(const Eigen::VectorXd& diag);
  void set_target(const Eigen::MatrixXcd& dense);
};

/// Verify (<0|_anc (x) I) U (|0>_anc (x) I) = target / alpha by dense
/// simulation; returns the max entrywise deviation.
double verify_block_encoding(const BlockEncoding& be);

/// State preparation |0..0> -> sum sqrt(c_i / c) |i> from a binary tree of
/// multiplexed Y rotations (exact amplitudes).
Circuit prep_oracle(const std::vector<double>& coeffs);

/// SEL = sum_i |i><i| (x) U_i on ceil(log2 K) ancillas; K = 1 degenerates
/// to the bare circuit. Branches past K act as identity.
Circuit sel_oracle(const std::vector<UnitaryTerm>& terms);

/// (PREP^dag (x) I) SEL (PREP (x) I); alpha = sum of coefficients.
BlockEncoding lcu_block_encode(const std::vector<UnitaryTerm>& terms,
                               SOperator s_hint = SOperator::none());

/// Control-free SEL for |0><0| (x) e^{iD} + |1><1| (x) e^{-iD}: applicable
/// when a bit-flip mask negates the phases up to a constant; the fallback
/// synthesizes the two controlled branches as one joint diagonal.
std::pair<Circuit, bool> control_free_sel(const std::vector<double>& diag_phases);

/// Exact single-ancilla block encoding of a diagonal operator through
/// e^{+-i arccos(target/beta)}; beta defaults to max|values|.
BlockEncoding love_lcu(const DiagonalOperator& target,
                       std::optional<double> beta = std::nullopt);

/// Combine block encodings sharing the system register: new ancilla layout
/// [a_Lambda | a | s], each sub-encoding's S qubit mapped to a_0, smaller
/// ancilla sets packed low. alpha = sum w_i alpha_i.
BlockEncoding lcu_combine(const std::vector<BlockEncoding>& encodings,
                          const std::vector<double>& weights);

/// Conjugate the system register by a unitary circuit: block becomes
/// F^dag (target/alpha) F.
BlockEncoding conjugate_be(const BlockEncoding& be, const Circuit& f_sys);

/// Widen the system register to total_sys qubits with the original system
/// placed at `offset`  (identity on the rest); the target is embedded by
/// Kronecker products.
BlockEncoding embed_system(const BlockEncoding& be, int total_sys, int offset);

/// Unitary terms (Z strings, signs absorbed as global phases) of a
/// Pauli-Z polynomial; identity terms allowed.
std::vector<UnitaryTerm> pauli_terms(const PauliZPolynomial& poly);

}  // namespace bbenc
