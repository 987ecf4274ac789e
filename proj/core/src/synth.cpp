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

#include "bbenc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bbenc {

namespace {

void count_into(const Circuit& c, GateCounts& gc) {
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::Cnot:
        ++gc.cnots;
        break;
      case GateKind::Rx:
      case GateKind::Rz:
        ++gc.rotations;
        break;
      default:
        break;
    }
  }
}

}  // namespace

GateCounts count_gates(const Circuit& c) {
  GateCounts gc;
  gc.ancillas = c.regs.ancillas();
  count_into(c, gc);
  return gc;
}

// ---------------------------------------------------------------------------
// Diagonal synthesis
// ---------------------------------------------------------------------------

namespace {

void fwht_d(std::vector<double>& a) {
  const std::size_t n = a.size();
  for (std::size_t len = 1; len < n; len <<= 1)
    for (std::size_t i = 0; i < n; i += 2 * len)
      for (std::size_t j = i; j < i + len; ++j) {
        double u = a[j], v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
}

}  // namespace

void emit_diagonal(Circuit& c, const std::vector<int>& qubits,
                   const std::vector<double>& phases) {
  const int k = static_cast<int>(qubits.size());
  if (phases.size() != (std::size_t{1} << k))
    throw StructuralError("emit_diagonal: phase vector length must be 2^k");
  if (k == 0) {
    if (phases[0] != 0.0) c.append(Gate::global_phase(phases[0]));
    return;
  }
  // Walsh coefficients over position masks (index-mask bit b = position k-1-b).
  std::vector<double> a = phases;
  fwht_d(a);
  double maxp = 0.0;
  for (double p : phases) maxp = std::max(maxp, std::abs(p));
  const double tol = 4.0 * k * std::numeric_limits<double>::epsilon() * maxp;
  const double scale = 1.0 / static_cast<double>(a.size());
  auto coeff = [&](std::uint64_t pos_mask) {
    // position p corresponds to index-mask bit (k-1-p)
    std::uint64_t idx = 0;
    for (int p = 0; p < k; ++p)
      if (pos_mask >> p & 1) idx |= std::uint64_t{1} << (k - 1 - p);
    double v = a[idx] * scale;
    return std::abs(v) <= tol ? 0.0 : v;
  };

  if (double c0 = coeff(0); c0 != 0.0) c.append(Gate::global_phase(c0));

  // One Gray-coded block per target position t, covering subsets with
  // minimum position t (controls drawn from positions t+1..k-1).
  for (int t = 0; t < k; ++t) {
    const int mctl = k - 1 - t;
    const std::uint64_t nsub = std::uint64_t{1} << mctl;
    std::uint64_t acc = 0;  // accumulated control set xored onto the target
    bool any = false;
    for (std::uint64_t j = 0; j < nsub; ++j) {
      std::uint64_t gray = j ^ (j >> 1);
      std::uint64_t pos_mask = (std::uint64_t{1} << t);
      for (int b = 0; b < mctl; ++b)
        if (gray >> b & 1) pos_mask |= std::uint64_t{1} << (t + 1 + b);
      double cv = coeff(pos_mask);
      if (cv == 0.0) continue;
      any = true;
      std::uint64_t want = gray;
      std::uint64_t diff = acc ^ want;
      for (int b = 0; b < mctl; ++b)
        if (diff >> b & 1) c.append(Gate::cnot(qubits[t + 1 + b], qubits[t]));
      acc = want;
      c.append(Gate::rz(qubits[t], -2.0 * cv));
    }
    if (any) {
      for (int b = 0; b < mctl; ++b)
        if (acc >> b & 1) c.append(Gate::cnot(qubits[t + 1 + b], qubits[t]));
    }
  }
}

Circuit synthesize_diagonal_unitary(const std::vector<double>& phases) {
  int k = 0;
  while ((std::size_t{1} << k) < phases.size()) ++k;
  if (phases.size() != (std::size_t{1} << k))
    throw StructuralError("synthesize_diagonal_unitary: length must be a power of 2");
  Circuit c(k);
  std::vector<int> qs(k);
  for (int i = 0; i < k; ++i) qs[i] = i;
  emit_diagonal(c, qs, phases);
  return c;
}

Circuit drop_small_rotations(const Circuit& c, double tol) {
  if (tol < 0.0) throw DomainError("drop_small_rotations: tol must be >= 0");
  Circuit out(c.regs);
  out.metadata = c.metadata;
  for (const Gate& g : c.gates) {
    if ((g.kind == GateKind::Rx || g.kind == GateKind::Rz) &&
        std::abs(g.angle) < tol)
      continue;
    out.gates.push_back(g);
  }
  return out;
}

Circuit controlled(const Circuit& c, int control, bool on_one) {
  if (control < 0 || control >= c.num_qubits())
    throw StructuralError("controlled: control qubit outside registers");
  for (const Gate& g : c.gates)
    if (g.touches(control))
      throw StructuralError("controlled: control qubit used by circuit");
  Circuit out(c.regs);
  out.append(Gate::controlled_block(c, control, on_one));
  return out;
}

Circuit qft_circuit(int n) {
  if (n < 1) throw DomainError("qft_circuit: n must be >= 1");
  Circuit c(n);
  for (int q = 0; q < n; ++q) {
    c.append(Gate::h(q));
    for (int p = q + 1; p < n; ++p) {
      double theta = 2.0 * kPi / std::pow(2.0, p - q + 1);
      c.append(Gate::diagonal_phase({p, q}, {0.0, 0.0, 0.0, theta}));
    }
  }
  for (int q = 0; q < n / 2; ++q) {
    int r = n - 1 - q;
    c.append(Gate::cnot(q, r));
    c.append(Gate::cnot(r, q));
    c.append(Gate::cnot(q, r));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Transpilation
// ---------------------------------------------------------------------------

namespace {

bool inverse_pair(const Gate& a, const Gate& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case GateKind::Cnot:
      return a.q0 == b.q0 && a.q1 == b.q1;
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
      return a.q0 == b.q0;
    case GateKind::Rx:
    case GateKind::Rz:
      return a.q0 == b.q0 && a.angle == -b.angle;
    case GateKind::GlobalPhase:
      return a.angle == -b.angle;
    case GateKind::DiagonalPhase: {
      if (a.qubits != b.qubits) return false;
      for (std::size_t i = 0; i < a.phases.size(); ++i)
        if (a.phases[i] != -b.phases[i]) return false;
      return true;
    }
    case GateKind::ControlledBlock: {
      if (a.control != b.control || a.control_on_one != b.control_on_one)
        return false;
      if (a.block->gates.size() != b.block->gates.size()) return false;
      const auto& ag = a.block->gates;
      const auto& bg = b.block->gates;
      for (std::size_t i = 0; i < ag.size(); ++i)
        if (!inverse_pair(ag[i], bg[ag.size() - 1 - i])) return false;
      return true;
    }
  }
  return false;
}

void lower_blocks(const std::vector<Gate>& in, std::vector<Gate>& out);

// Per-gate controlled lowering; `in` must already be block-free.
void control_lower(const std::vector<Gate>& in, int ctl, bool on_one,
                   std::vector<Gate>& out) {
  for (const Gate& g : in) {
    switch (g.kind) {
      case GateKind::DiagonalPhase: {
        std::vector<int> qs;
        qs.reserve(g.qubits.size() + 1);
        qs.push_back(ctl);
        qs.insert(qs.end(), g.qubits.begin(), g.qubits.end());
        std::vector<double> v(g.phases.size() * 2, 0.0);
        std::size_t off = on_one ? g.phases.size() : 0;
        std::copy(g.phases.begin(), g.phases.end(), v.begin() + off);
        out.push_back(Gate::diagonal_phase(std::move(qs), std::move(v)));
        break;
      }
      case GateKind::Rz: {
        out.push_back(Gate::rz(g.q0, g.angle / 2.0));
        out.push_back(Gate::cnot(ctl, g.q0));
        out.push_back(Gate::rz(g.q0, on_one ? -g.angle / 2.0 : g.angle / 2.0));
        out.push_back(Gate::cnot(ctl, g.q0));
        break;
      }
      case GateKind::Rx: {
        out.push_back(Gate::h(g.q0));
        out.push_back(Gate::rz(g.q0, g.angle / 2.0));
        out.push_back(Gate::cnot(ctl, g.q0));
        out.push_back(Gate::rz(g.q0, on_one ? -g.angle / 2.0 : g.angle / 2.0));
        out.push_back(Gate::cnot(ctl, g.q0));
        out.push_back(Gate::h(g.q0));
        break;
      }
      case GateKind::GlobalPhase: {
        out.push_back(Gate::global_phase(g.angle / 2.0));
        out.push_back(Gate::rz(ctl, on_one ? g.angle : -g.angle));
        break;
      }
      case GateKind::X: {
        // on-zero: X then CNOT applies X only on the control = 0 branch
        if (!on_one) out.push_back(Gate::x(g.q0));
        out.push_back(Gate::cnot(ctl, g.q0));
        break;
      }
      case GateKind::Z: {
        std::vector<double> v(4, 0.0);
        v[on_one ? 3 : 1] = kPi;
        out.push_back(Gate::diagonal_phase({ctl, g.q0}, std::move(v)));
        break;
      }
      case GateKind::H: {
        // H = e^{i pi/2} Rz(pi/2) Rx(pi/2) Rz(pi/2); control the lowered form.
        std::vector<Gate> lowered = {
            Gate::global_phase(kPi / 2.0), Gate::rz(g.q0, kPi / 2.0),
            Gate::rx(g.q0, kPi / 2.0), Gate::rz(g.q0, kPi / 2.0)};
        control_lower(lowered, ctl, on_one, out);
        break;
      }
      case GateKind::Cnot: {
        // Controlled-CNOT = H(target) CCZ H(target); CCZ is diagonal.
        std::vector<double> v(8, 0.0);
        v[on_one ? 7 : 3] = kPi;  // (ctl, control, target) = (pol, 1, 1)
        out.push_back(Gate::h(g.q1));
        out.push_back(Gate::diagonal_phase({ctl, g.q0, g.q1}, std::move(v)));
        out.push_back(Gate::h(g.q1));
        break;
      }
      case GateKind::ControlledBlock:
        throw StructuralError("control_lower: nested block not lowered first");
    }
  }
}

void lower_one_block(const Gate& g, std::vector<Gate>& out) {
  const auto& gs = g.block->gates;
  // Peel matched inverse conjugation pairs off the ends; only the middle
  // needs the control.
  std::size_t i = 0, j = gs.size();
  while (i < j && j - i >= 2 && inverse_pair(gs[i], gs[j - 1])) {
    ++i;
    --j;
  }
  std::vector<Gate> prefix(gs.begin(), gs.begin() + i);
  std::vector<Gate> middle(gs.begin() + i, gs.begin() + j);
  std::vector<Gate> suffix(gs.begin() + j, gs.end());

  lower_blocks(prefix, out);
  std::vector<Gate> mid_lowered;
  lower_blocks(middle, mid_lowered);
  control_lower(mid_lowered, g.control, g.control_on_one, out);
  lower_blocks(suffix, out);
}

void lower_blocks(const std::vector<Gate>& in, std::vector<Gate>& out) {
  for (const Gate& g : in) {
    if (g.kind == GateKind::ControlledBlock)
      lower_one_block(g, out);
    else
      out.push_back(g);
  }
}

// Normalize a rotation angle into (-2pi, 2pi] modulo the 4pi period.
double norm_angle(double a) {
  const double period = 4.0 * kPi;
  a = std::fmod(a, period);
  if (a > 2.0 * kPi) a -= period;
  if (a <= -2.0 * kPi) a += period;
  return a;
}

}  // namespace

std::pair<Circuit, GateCounts> transpile(const Circuit& c) {
  // Pass A: resolve controlled blocks (keeps DiagonalPhase structural).
  std::vector<Gate> flat;
  lower_blocks(c.gates, flat);

  // Pass B: synthesize diagonals; lower H/X/Z to rotations.
  Circuit work(c.regs);
  work.metadata = c.metadata;
  for (const Gate& g : flat) {
    switch (g.kind) {
      case GateKind::DiagonalPhase:
        emit_diagonal(work, g.qubits, g.phases);
        break;
      case GateKind::H:
        work.append(Gate::global_phase(kPi / 2.0));
        work.append(Gate::rz(g.q0, kPi / 2.0));
        work.append(Gate::rx(g.q0, kPi / 2.0));
        work.append(Gate::rz(g.q0, kPi / 2.0));
        break;
      case GateKind::X:
        work.append(Gate::global_phase(kPi / 2.0));
        work.append(Gate::rx(g.q0, kPi));
        break;
      case GateKind::Z:
        work.append(Gate::global_phase(kPi / 2.0));
        work.append(Gate::rz(g.q0, kPi));
        break;
      default:
        work.append(g);
        break;
    }
  }

  // Pass C: merge adjacent same-axis rotations per qubit (a gate touching
  // the qubit flushes its pending rotation), drop zero-angle rotations,
  // collect global phase.
  Circuit out(c.regs);
  out.metadata = c.metadata;
  double gphase = 0.0;
  const int n = c.num_qubits();
  std::vector<int> pending(n, -1);  // index into out.gates, or -1

  auto flush = [&](int q) { pending[q] = -1; };
  auto emit_rot = [&](const Gate& g) {
    int q = g.q0;
    if (pending[q] >= 0 && out.gates[pending[q]].kind == g.kind) {
      double merged = norm_angle(out.gates[pending[q]].angle + g.angle);
      if (merged == 0.0) {
        out.gates[pending[q]].angle = 0.0;  // squashed below
        pending[q] = -1;
      } else if (merged == 2.0 * kPi || merged == -2.0 * kPi) {
        out.gates[pending[q]].angle = 0.0;
        gphase += kPi;
        pending[q] = -1;
      } else {
        out.gates[pending[q]].angle = merged;
      }
      return;
    }
    double a = norm_angle(g.angle);
    if (a == 0.0) return;
    if (a == 2.0 * kPi || a == -2.0 * kPi) {
      gphase += kPi;
      return;
    }
    Gate ng = g;
    ng.angle = a;
    out.gates.push_back(ng);
    pending[q] = static_cast<int>(out.gates.size()) - 1;
  };

  for (const Gate& g : work.gates) {
    switch (g.kind) {
      case GateKind::GlobalPhase:
        gphase += g.angle;
        break;
      case GateKind::Rx:
      case GateKind::Rz:
        if (pending[g.q0] >= 0 && out.gates[pending[g.q0]].kind != g.kind)
          flush(g.q0);
        emit_rot(g);
        break;
      case GateKind::Cnot:
        flush(g.q0);
        flush(g.q1);
        out.gates.push_back(g);
        break;
      default:
        throw StructuralError("transpile: unlowerable gate survived lowering");
    }
  }

  // Squash zero-angle leftovers from merges.
  std::vector<Gate> final_gates;
  final_gates.reserve(out.gates.size());
  for (const Gate& g : out.gates) {
    if ((g.kind == GateKind::Rx || g.kind == GateKind::Rz) && g.angle == 0.0)
      continue;
    final_gates.push_back(g);
  }
  out.gates = std::move(final_gates);

  gphase = std::fmod(gphase, 2.0 * kPi);
  if (gphase != 0.0) out.gates.push_back(Gate::global_phase(gphase));

  GateCounts gc = count_gates(out);
  return {std::move(out), gc};
}

// ---------------------------------------------------------------------------
// SU(2) decomposition
// ---------------------------------------------------------------------------

std::vector<Gate> su2_gates(const Eigen::Matrix2cd& u, int qubit) {
  const cxd a = u(0, 0), b = u(0, 1), cc = u(1, 0), d = u(1, 1);
  const double theta = 2.0 * std::atan2(std::hypot(b.real(), b.imag()),
                                        std::hypot(a.real(), a.imag()));
  double delta, apb, amb;  // delta, alpha+beta, alpha-beta
  const double tiny = 1e-14;
  if (std::abs(a) > tiny && std::abs(d) > tiny) {
    delta = 0.5 * (std::arg(a) + std::arg(d));
    apb = std::arg(d) - std::arg(a);
    amb = (std::abs(b) > tiny && std::abs(cc) > tiny)
              ? std::arg(cc) - std::arg(b)
              : 0.0;
  } else {
    delta = 0.5 * (std::arg(b) + std::arg(cc)) + kPi / 2.0;
    amb = std::arg(cc) - std::arg(b);
    apb = 0.0;
  }
  auto build = [&](double del, double al, double be) {
    Eigen::Matrix2cd rz1, rx, rz2;
    double ch = std::cos(theta / 2.0), sh = std::sin(theta / 2.0);
    rz1 << std::polar(1.0, -al / 2.0), 0.0, 0.0, std::polar(1.0, al / 2.0);
    rz2 << std::polar(1.0, -be / 2.0), 0.0, 0.0, std::polar(1.0, be / 2.0);
    rx << ch, cxd(0.0, -sh), cxd(0.0, -sh), ch;
    return (std::polar(1.0, del) * (rz1 * rx * rz2).array()).matrix().eval();
  };
  // Half-angle branches: delta+pi flips every entry, amb+2pi flips the
  // off-diagonal pair only; four combinations cover all sign patterns.
  for (double dd : {0.0, kPi}) {
    for (double da : {0.0, 2.0 * kPi}) {
      double alpha = 0.5 * (apb + amb + da), beta = 0.5 * (apb - amb - da);
      Eigen::Matrix2cd rec = build(delta + dd, alpha, beta);
      if ((rec - u).cwiseAbs().maxCoeff() <= 1e-11) {
        // Operator u = e^{i delta} Rz(alpha) Rx(theta) Rz(beta): beta first.
        return {Gate::rz(qubit, beta), Gate::rx(qubit, theta),
                Gate::rz(qubit, alpha), Gate::global_phase(delta + dd)};
      }
    }
  }
  throw NumericalError("su2_gates: decomposition failed to reconstruct");
}

}  // namespace bbenc
