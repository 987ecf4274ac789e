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

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bbenc/types.hpp"

namespace bbenc {

struct Circuit;

enum class GateKind {
  Cnot,
  Rx,
  Rz,
  H,
  X,
  Z,
  GlobalPhase,
  DiagonalPhase,    // structural: diag(e^{i phases[k]}) on listed qubits
  ControlledBlock,  // structural: subcircuit gated on one control qubit
};

/// One gate. Qubit 0 is the most significant bit of the basis index.
struct Gate {
  GateKind kind;
  int q0 = -1;          // target (control for Cnot)
  int q1 = -1;          // Cnot target
  double angle = 0.0;   // Rx/Rz angle or global phase, radians
  std::vector<int> qubits;         // DiagonalPhase support, first = most significant
  std::vector<double> phases;      // DiagonalPhase values, length 2^qubits
  std::shared_ptr<const Circuit> block;  // ControlledBlock payload
  int control = -1;                      // ControlledBlock control qubit
  bool control_on_one = true;            // ControlledBlock polarity

  static Gate cnot(int control, int target);
  static Gate rx(int qubit, double angle);
  static Gate rz(int qubit, double angle);
  static Gate h(int qubit);
  static Gate x(int qubit);
  static Gate z(int qubit);
  static Gate global_phase(double angle);
  static Gate diagonal_phase(std::vector<int> qubits, std::vector<double> phases);
  static Gate controlled_block(Circuit sub, int control, bool on_one);

  Gate inverse() const;
  bool touches(int qubit) const;
  int max_qubit() const;
};

/// Named register sizes. The global qubit order is
/// [signal | site ancilla (a_Lambda) | BE ancilla (a) | system].
struct Registers {
  int signal = 0;
  int site_anc = 0;
  int be_anc = 0;
  int system = 0;

  int total() const { return signal + site_anc + be_anc + system; }
  int ancillas() const { return signal + site_anc + be_anc; }
};

/// Ordered gate list over a fixed qubit count.
struct Circuit {
  Registers regs;
  std::vector<Gate> gates;
  std::map<std::string, std::string> metadata;

  Circuit() = default;
  explicit Circuit(int n_system) { regs.system = n_system; }
  explicit Circuit(Registers r) : regs(r) {}

  int num_qubits() const { return regs.total(); }

  void append(Gate g);
  void append(const Circuit& other);  // same qubit count required
  Circuit inverse() const;

  /// Copy with every qubit index shifted by `offset` into a circuit of
  /// `new_regs` (used to embed a sub-register circuit into a larger one).
  Circuit shifted(int offset, Registers new_regs) const;

  /// Copy with qubit i mapped to mapping[i].
  Circuit remapped(const std::vector<int>& mapping, Registers new_regs) const;
};

/// Line-oriented text serialization of a lowered circuit (one gate per
/// line, `GATE q0 [q1] [angle]`, angles with 17 significant digits).
std::string serialize_circuit(const Circuit& c);

}  // namespace bbenc
