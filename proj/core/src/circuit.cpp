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

#include "bbenc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bbenc {

Gate Gate::cnot(int control, int target) {
  if (control == target) throw StructuralError("cnot: control == target");
  Gate g;
  g.kind = GateKind::Cnot;
  g.q0 = control;
  g.q1 = target;
  return g;
}

Gate Gate::rx(int qubit, double angle) {
  if (!std::isfinite(angle)) throw DomainError("rx: non-finite angle");
  Gate g;
  g.kind = GateKind::Rx;
  g.q0 = qubit;
  g.angle = angle;
  return g;
}

Gate Gate::rz(int qubit, double angle) {
  if (!std::isfinite(angle)) throw DomainError("rz: non-finite angle");
  Gate g;
  g.kind = GateKind::Rz;
  g.q0 = qubit;
  g.angle = angle;
  return g;
}

Gate Gate::h(int qubit) {
  Gate g;
  g.kind = GateKind::H;
  g.q0 = qubit;
  return g;
}

Gate Gate::x(int qubit) {
  Gate g;
  g.kind = GateKind::X;
  g.q0 = qubit;
  return g;
}

Gate Gate::z(int qubit) {
  Gate g;
  g.kind = GateKind::Z;
  g.q0 = qubit;
  return g;
}

Gate Gate::global_phase(double angle) {
  if (!std::isfinite(angle)) throw DomainError("global_phase: non-finite angle");
  Gate g;
  g.kind = GateKind::GlobalPhase;
  g.angle = angle;
  return g;
}

Gate Gate::diagonal_phase(std::vector<int> qubits, std::vector<double> phases) {
  if (phases.size() != (std::size_t{1} << qubits.size()))
    throw StructuralError("diagonal_phase: phase vector length must be 2^qubits");
  for (double p : phases)
    if (!std::isfinite(p)) throw DomainError("diagonal_phase: non-finite phase");
  Gate g;
  g.kind = GateKind::DiagonalPhase;
  g.qubits = std::move(qubits);
  g.phases = std::move(phases);
  return g;
}

Gate Gate::controlled_block(Circuit sub, int control, bool on_one) {
  Gate g;
  g.kind = GateKind::ControlledBlock;
  g.control = control;
  g.control_on_one = on_one;
  for (const Gate& sg : sub.gates)
    if (sg.touches(control))
      throw StructuralError("controlled_block: control qubit used by subcircuit");
  g.block = std::make_shared<const Circuit>(std::move(sub));
  return g;
}

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::Cnot:
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
      return g;
    case GateKind::Rx:
    case GateKind::Rz:
    case GateKind::GlobalPhase:
      g.angle = -angle;
      return g;
    case GateKind::DiagonalPhase:
      for (double& p : g.phases) p = -p;
      return g;
    case GateKind::ControlledBlock:
      g.block = std::make_shared<const Circuit>(block->inverse());
      return g;
  }
  throw StructuralError("inverse: unknown gate kind");
}

bool Gate::touches(int qubit) const {
  switch (kind) {
    case GateKind::Cnot:
      return q0 == qubit || q1 == qubit;
    case GateKind::Rx:
    case GateKind::Rz:
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
      return q0 == qubit;
    case GateKind::GlobalPhase:
      return false;
    case GateKind::DiagonalPhase:
      return std::find(qubits.begin(), qubits.end(), qubit) != qubits.end();
    case GateKind::ControlledBlock: {
      if (control == qubit) return true;
      for (const Gate& sg : block->gates)
        if (sg.touches(qubit)) return true;
      return false;
    }
  }
  return false;
}

int Gate::max_qubit() const {
  switch (kind) {
    case GateKind::Cnot:
      return std::max(q0, q1);
    case GateKind::Rx:
    case GateKind::Rz:
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
      return q0;
    case GateKind::GlobalPhase:
      return -1;
    case GateKind::DiagonalPhase: {
      int m = -1;
      for (int q : qubits) m = std::max(m, q);
      return m;
    }
    case GateKind::ControlledBlock: {
      int m = control;
      for (const Gate& sg : block->gates) m = std::max(m, sg.max_qubit());
      return m;
    }
  }
  return -1;
}

void Circuit::append(Gate g) {
  if (g.max_qubit() >= num_qubits())
    throw StructuralError("append: gate qubit outside circuit registers");
  gates.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.num_qubits() != num_qubits())
    throw StructuralError("append: register size mismatch");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

Circuit Circuit::inverse() const {
  Circuit out(regs);
  out.metadata = metadata;
  out.gates.reserve(gates.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it)
    out.gates.push_back(it->inverse());
  return out;
}

Circuit Circuit::shifted(int offset, Registers new_regs) const {
  std::vector<int> map(num_qubits());
  for (int i = 0; i < num_qubits(); ++i) map[i] = i + offset;
  return remapped(map, new_regs);
}

namespace {

Gate remap_gate(const Gate& g, const std::vector<int>& m, Registers new_regs);

Circuit remap_circuit(const Circuit& c, const std::vector<int>& m, Registers new_regs) {
  Circuit out(new_regs);
  out.metadata = c.metadata;
  out.gates.reserve(c.gates.size());
  for (const Gate& g : c.gates) out.gates.push_back(remap_gate(g, m, new_regs));
  return out;
}

Gate remap_gate(const Gate& g, const std::vector<int>& m, Registers new_regs) {
  auto mq = [&](int q) {
    if (q < 0 || q >= static_cast<int>(m.size()))
      throw StructuralError("remap: qubit outside mapping");
    return m[q];
  };
  Gate out = g;
  switch (g.kind) {
    case GateKind::Cnot:
      out.q0 = mq(g.q0);
      out.q1 = mq(g.q1);
      break;
    case GateKind::Rx:
    case GateKind::Rz:
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
      out.q0 = mq(g.q0);
      break;
    case GateKind::GlobalPhase:
      break;
    case GateKind::DiagonalPhase:
      for (int& q : out.qubits) q = mq(q);
      break;
    case GateKind::ControlledBlock:
      out.control = mq(g.control);
      out.block = std::make_shared<const Circuit>(remap_circuit(*g.block, m, new_regs));
      break;
  }
  return out;
}

}  // namespace

Circuit Circuit::remapped(const std::vector<int>& mapping, Registers new_regs) const {
  if (mapping.size() != static_cast<std::size_t>(num_qubits()))
    throw StructuralError("remapped: mapping size mismatch");
  Circuit out = remap_circuit(*this, mapping, new_regs);
  for (const Gate& g : out.gates)
    if (g.max_qubit() >= new_regs.total())
      throw StructuralError("remapped: mapped qubit outside new registers");
  return out;
}

std::string serialize_circuit(const Circuit& c) {
  std::ostringstream out;
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::Cnot:
        out << "CNOT " << g.q0 << ' ' << g.q1 << '\n';
        break;
      case GateKind::Rx:
        out << "RX " << g.q0 << ' ' << fmt(g.angle) << '\n';
        break;
      case GateKind::Rz:
        out << "RZ " << g.q0 << ' ' << fmt(g.angle) << '\n';
        break;
      case GateKind::H:
        out << "H " << g.q0 << '\n';
        break;
      case GateKind::X:
        out << "X " << g.q0 << '\n';
        break;
      case GateKind::Z:
        out << "Z " << g.q0 << '\n';
        break;
      case GateKind::GlobalPhase:
        out << "GLOBALPHASE " << fmt(g.angle) << '\n';
        break;
      default:
        throw StructuralError(
            "serialize_circuit: structural gate, transpile before dumping");
    }
  }
  return out.str();
}

}  // namespace bbenc
