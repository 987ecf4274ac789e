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

#include "bbenc/qubitization.hpp"

#include <cmath>

#include "bbenc/simulate.hpp"
#include "bbenc/synth.hpp"

namespace bbenc {

Circuit reflection_r0(int m) {
  if (m < 1) throw DomainError("reflection_r0: m must be >= 1");
  Registers regs;
  regs.be_anc = m;
  Circuit c(regs);
  std::vector<double> v(std::size_t{1} << m, kPi);
  v[0] = 0.0;
  std::vector<int> qs(m);
  for (int i = 0; i < m; ++i) qs[i] = i;
  c.append(Gate::diagonal_phase(std::move(qs), std::move(v)));
  return c;
}

namespace {

Eigen::MatrixXcd s_matrix(const BlockEncoding& be) {
  const int n = be.circuit.num_qubits();
  const std::int64_t dim = std::int64_t{1} << n;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(dim, dim);
  if (be.s_op.kind == SOperatorKind::SingleZ) {
    const std::int64_t stride = std::int64_t{1} << (n - 1 - be.s_op.qubit);
    for (std::int64_t i = 0; i < dim; ++i)
      if (i & stride) s(i, i) = -1.0;
  }
  return s;
}

}  // namespace

SReport verify_s(const BlockEncoding& be) {
  if (be.s_op.kind == SOperatorKind::None)
    throw StructuralError("verify_s: encoding carries no S descriptor");
  SReport rep;
  Eigen::MatrixXcd u = unitary_of(be.circuit);
  Eigen::MatrixXcd su = s_matrix(be) * u;
  const std::int64_t sdim = std::int64_t{1} << be.n_sys();

  Eigen::MatrixXcd block = su.topLeftCorner(sdim, sdim);
  rep.block_residual = (block - be.target() / be.alpha).cwiseAbs().maxCoeff();
  rep.block_ok = rep.block_residual <= 1e-8;

  Eigen::MatrixXcd sq = (su * su).topLeftCorner(sdim, sdim);
  rep.square_residual =
      (sq - Eigen::MatrixXcd::Identity(sdim, sdim)).cwiseAbs().maxCoeff();
  rep.square_ok = rep.square_residual <= 1e-8;

  if (be.s_op.commutes) {
    rep.commutation_checked = true;
    rep.commutation_residual = (su - u.adjoint() * s_matrix(be)).cwiseAbs().maxCoeff();
    rep.commutation_ok = rep.commutation_residual <= 1e-10;
  }
  return rep;
}

WalkOperator make_walk(const BlockEncoding& be) {
  SReport rep = verify_s(be);
  if (!rep.pass())
    throw StructuralError(
        "make_walk: S conditions fail for this encoding; use fallback_qubitize");
  WalkOperator w;
  w.alpha = be.alpha;
  w.source = be;
  Circuit c(be.circuit.regs);
  c.append(be.circuit);
  if (be.s_op.kind == SOperatorKind::SingleZ) c.append(Gate::z(be.s_op.qubit));
  const int m = be.n_anc();
  Circuit r0 = reflection_r0(m);
  std::vector<int> map(m);
  for (int i = 0; i < m; ++i) map[i] = i;
  c.append(r0.remapped(map, be.circuit.regs));
  w.circuit = std::move(c);
  return w;
}

WalkOperator fallback_qubitize(const BlockEncoding& be) {
  // Hermitianized two-query construction: with
  // Q = (X_f (x) I)(|0><0| (x) U^dag + |1><1| (x) U), the conjugation by
  // H_f has block (U + U^dag)/2 = target/alpha and squares to the identity,
  // so the plain reflection completes the walk.
  Registers regs = be.circuit.regs;
  regs.be_anc += 1;  // new leading ancilla
  Circuit inner(regs);
  Circuit fwd = be.circuit.shifted(1, regs);
  inner.append(Gate::h(0));
  inner.append(Gate::controlled_block(fwd.inverse(), 0, false));
  inner.append(Gate::controlled_block(fwd, 0, true));
  inner.append(Gate::x(0));
  inner.append(Gate::h(0));

  WalkOperator w;
  w.alpha = be.alpha;
  w.source = be;
  Circuit c(regs);
  c.append(inner);
  const int m = regs.ancillas();
  Circuit r0 = reflection_r0(m);
  std::vector<int> map(m);
  for (int i = 0; i < m; ++i) map[i] = i;
  c.append(r0.remapped(map, regs));
  w.circuit = std::move(c);
  w.source.circuit = std::move(inner);
  w.source.s_op = SOperator::identity();
  return w;
}

WalkCheck verify_walk(const WalkOperator& w) {
  WalkCheck chk;
  Eigen::MatrixXcd wm = unitary_of(w.circuit);
  Eigen::MatrixXcd tgt = w.source.target() / w.alpha;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(tgt);
  const std::int64_t sdim = tgt.rows();
  const std::int64_t dim = wm.rows();

  for (Eigen::Index i = 0; i < sdim; ++i) {
    const double lam = es.eigenvalues()(i);
    Eigen::VectorXcd v0 = Eigen::VectorXcd::Zero(dim);
    v0.head(sdim) = es.eigenvectors().col(i);
    Eigen::VectorXcd wv = wm * v0;
    cxd a = v0.dot(wv);  // <v0|W|v0>
    chk.max_residual = std::max(chk.max_residual, std::abs(a - lam));
    Eigen::VectorXcd r = wv - a * v0;
    // the remainder must avoid the whole ancilla-zero subspace
    Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(dim);
    proj.head(sdim) = r.head(sdim);
    double leak = proj.norm();
    chk.max_residual = std::max(chk.max_residual, leak);
    double rn = r.norm();
    // compare squared norms: sqrt is ill-conditioned at |lam| = 1
    chk.max_residual =
        std::max(chk.max_residual, std::abs(rn * rn - (1.0 - lam * lam)));
    if (rn > 1e-6) {
      Eigen::VectorXcd u = r / rn;
      Eigen::VectorXcd wu = wm * u;
      // W|u> = -sqrt(1-lam^2)|v0> + lam|u>
      Eigen::VectorXcd expect = -rn * v0 + lam * u;
      chk.max_residual = std::max(chk.max_residual, (wu - expect).norm());
      cxd t00 = v0.dot(wv), t01 = v0.dot(wu), t10 = u.dot(wv), t11 = u.dot(wu);
      chk.max_trace_dev =
          std::max(chk.max_trace_dev, std::abs(t00 + t11 - 2.0 * lam));
      chk.max_det_dev =
          std::max(chk.max_det_dev, std::abs(t00 * t11 - t01 * t10 - 1.0));
    } else {
      chk.max_trace_dev = std::max(chk.max_trace_dev, std::abs(a - lam));
    }
  }
  return chk;
}

}  // namespace bbenc
