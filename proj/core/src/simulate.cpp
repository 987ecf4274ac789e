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

#include "bbenc/simulate.hpp"

#include <cmath>

namespace bbenc {

namespace {

// Stride of qubit q in the basis index (qubit 0 = MSB).
inline std::int64_t stride_of(int q, int n) { return std::int64_t{1} << (n - 1 - q); }

void apply_single(Eigen::VectorXcd& psi, int n, int q, cxd m00, cxd m01, cxd m10,
                  cxd m11) {
  const std::int64_t dim = psi.size();
  const std::int64_t s = stride_of(q, n);
  for (std::int64_t base = 0; base < dim; base += 2 * s) {
    for (std::int64_t i = base; i < base + s; ++i) {
      cxd a = psi[i];
      cxd b = psi[i + s];
      psi[i] = m00 * a + m01 * b;
      psi[i + s] = m10 * a + m11 * b;
    }
  }
}

}  // namespace

void apply_gate(const Gate& g, int n, Eigen::VectorXcd& psi) {
  switch (g.kind) {
    case GateKind::Cnot: {
      const std::int64_t sc = stride_of(g.q0, n);
      const std::int64_t st = stride_of(g.q1, n);
      const std::int64_t dim = psi.size();
      for (std::int64_t i = 0; i < dim; ++i) {
        if ((i & sc) && !(i & st)) std::swap(psi[i], psi[i | st]);
      }
      return;
    }
    case GateKind::Rx: {
      double h = 0.5 * g.angle;
      apply_single(psi, n, g.q0, std::cos(h), cxd(0, -std::sin(h)),
                   cxd(0, -std::sin(h)), std::cos(h));
      return;
    }
    case GateKind::Rz: {
      double h = 0.5 * g.angle;
      apply_single(psi, n, g.q0, std::polar(1.0, -h), 0.0, 0.0, std::polar(1.0, h));
      return;
    }
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      apply_single(psi, n, g.q0, r, r, r, -r);
      return;
    }
    case GateKind::X:
      apply_single(psi, n, g.q0, 0.0, 1.0, 1.0, 0.0);
      return;
    case GateKind::Z:
      apply_single(psi, n, g.q0, 1.0, 0.0, 0.0, -1.0);
      return;
    case GateKind::GlobalPhase:
      psi *= std::polar(1.0, g.angle);
      return;
    case GateKind::DiagonalPhase: {
      const std::int64_t dim = psi.size();
      const int k = static_cast<int>(g.qubits.size());
      for (std::int64_t i = 0; i < dim; ++i) {
        std::int64_t sub = 0;
        for (int b = 0; b < k; ++b) {
          if (i & stride_of(g.qubits[b], n)) sub |= std::int64_t{1} << (k - 1 - b);
        }
        psi[i] *= std::polar(1.0, g.phases[sub]);
      }
      return;
    }
    case GateKind::ControlledBlock: {
      // Run the subcircuit on the control-matching half of the index space.
      // Removing the (fixed) control bit keeps the remaining bits' order, so
      // qubit q maps to q (q < control) or q-1 (q > control) in the half.
      if (g.block->num_qubits() != n)
        throw StructuralError("controlled block register size mismatch");
      const std::int64_t dim = psi.size();
      const std::int64_t sc = stride_of(g.control, n);
      Eigen::VectorXcd reduced(dim / 2);
      std::vector<std::int64_t> on_index(dim / 2);
      std::int64_t j = 0;
      for (std::int64_t i = 0; i < dim; ++i) {
        if (((i & sc) != 0) == g.control_on_one) {
          on_index[j] = i;
          reduced[j++] = psi[i];
        }
      }
      std::vector<int> m(n);
      for (int q = 0; q < n; ++q)
        m[q] = q == g.control ? 0 : (q < g.control ? q : q - 1);
      Registers rr;
      rr.system = n - 1;
      Circuit sub = g.block->remapped(m, rr);
      for (const Gate& sg : sub.gates) apply_gate(sg, n - 1, reduced);
      for (std::int64_t i = 0; i < dim / 2; ++i) psi[on_index[i]] = reduced[i];
      return;
    }
  }
  throw StructuralError("apply_gate: unknown gate kind");
}

void apply_circuit(const Circuit& c, Eigen::VectorXcd& psi) {
  const int n = c.num_qubits();
  if (psi.size() != (std::int64_t{1} << n))
    throw StructuralError("apply_circuit: state dimension mismatch");
  for (const Gate& g : c.gates) apply_gate(g, n, psi);
}

Eigen::MatrixXcd unitary_of(const Circuit& c) {
  const int n = c.num_qubits();
  if (n > kMaxDenseQubits)
    throw ResourceError("unitary_of: qubit budget exceeded (max 14)");
  const std::int64_t dim = std::int64_t{1} << n;
  Eigen::MatrixXcd u(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi[col] = 1.0;
    apply_circuit(c, psi);
    u.col(col) = psi;
  }
  return u;
}

Eigen::MatrixXcd block_of(const Circuit& c, int n_anc) {
  const int n = c.num_qubits();
  if (n_anc < 0 || n_anc > n) throw StructuralError("block_of: bad ancilla count");
  const int n_sys = n - n_anc;
  const std::int64_t dim = std::int64_t{1} << n;
  const std::int64_t sdim = std::int64_t{1} << n_sys;
  Eigen::MatrixXcd b(sdim, sdim);
  for (std::int64_t col = 0; col < sdim; ++col) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi[col] = 1.0;  // ancillas are the leading bits, so |0>_anc |col>_sys = col
    apply_circuit(c, psi);
    b.col(col) = psi.head(sdim);
  }
  return b;
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  Eigen::MatrixXcd d = u.adjoint() * u;
  d.diagonal().array() -= 1.0;
  return d.cwiseAbs().maxCoeff();
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  return m.jacobiSvd().singularValues()(0);
}

double max_diff_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::Index i = 0, j = 0;
  b.cwiseAbs().maxCoeff(&i, &j);
  cxd phase(1.0, 0.0);
  if (std::abs(b(i, j)) > 1e-300 && std::abs(a(i, j)) > 1e-300)
    phase = (b(i, j) / std::abs(b(i, j))) / (a(i, j) / std::abs(a(i, j)));
  return (a * phase - b).cwiseAbs().maxCoeff();
}


Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace bbenc
