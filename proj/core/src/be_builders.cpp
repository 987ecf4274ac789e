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

#include "bbenc/be_builders.hpp"

#include <cmath>
#include <sstream>

#include "bbenc/simulate.hpp"
#include "bbenc/synth.hpp"

namespace bbenc {

BlockEncoding build_xi_be(const PauliZPolynomial& poly) {
  auto terms = pauli_terms(poly);
  bool nonident = false;
  for (const auto& [mask, coeff] : poly.terms)
    if (mask != 0 && coeff != 0.0) nonident = true;
  if (!nonident)
    throw DomainError("build_xi_be: need at least one non-identity term");
  BlockEncoding be = lcu_block_encode(terms, SOperator::identity());
  auto rec = poly.reconstruct();
  Eigen::VectorXd t(rec.values.size());
  for (std::size_t i = 0; i < rec.values.size(); ++i) t[i] = rec.values[i];
  be.set_target(t);
  return be;
}

BlockEncoding qsvt_block_encode(const BlockEncoding& base,
                                const ChebyshevSeries& series, double beta,
                                double tol, PhaseCache* cache) {
  auto phases = qsp_phases_symmetric(series, tol, cache);
  const int d = phases.degree();
  const int m = base.n_anc();
  const int n = base.n_sys();

  Registers regs = base.circuit.regs;
  regs.signal += 1;
  Circuit c(regs);

  Circuit base_fwd = base.circuit.shifted(1, regs);
  Circuit base_inv = base_fwd.inverse();

  // CR_phi is diagonal on [signal | base ancillas]: e^{+i phi} on the
  // (signal=0, anc=0) and (signal=1, anc!=0) slots, e^{-i phi} elsewhere.
  std::vector<int> crq(1 + m);
  for (int i = 0; i <= m; ++i) crq[i] = i;
  auto cr = [&](double phi) {
    std::vector<double> v(std::size_t{2} << m);
    const std::size_t half = std::size_t{1} << m;
    for (std::size_t a = 0; a < half; ++a) {
      v[a] = a == 0 ? phi : -phi;
      v[half + a] = a == 0 ? -phi : phi;
    }
    return Gate::diagonal_phase(crq, v);
  };

  c.append(Gate::h(0));
  c.append(cr(phases.phases[0]));
  for (int j = 1; j <= d; ++j) {
    c.append(j % 2 == 1 ? base_fwd : base_inv);
    c.append(cr(phases.phases[j]));
  }
  c.append(Gate::h(0));
  c.metadata["queries"] = std::to_string(d);

  BlockEncoding out;
  out.circuit = std::move(c);
  out.alpha = beta;
  out.s_op = SOperator::single_z(0, true);
  if (base.has_target && n <= 10) {
    // beta * series(target/alpha) via the eigenbasis of the base target
    Eigen::MatrixXcd tgt = base.target();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(tgt);
    Eigen::VectorXd ev = es.eigenvalues();
    Eigen::VectorXcd fv(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      fv[i] = beta * series.eval(ev[i] / base.alpha);
    out.set_target(Eigen::MatrixXcd(es.eigenvectors() * fv.asDiagonal() *
                                    es.eigenvectors().adjoint()));
  }
  return out;
}

BlockEncoding qetu_block_encode(const std::function<double(double)>& f,
                                const DiagonalOperator& op,
                                const QetuConfig& config, double tol,
                                PhaseCache* cache) {
  const std::size_t dim = op.values.size();
  double fmax = 0.0;
  double vscale = std::max(1.0, op.max_abs());
  for (std::size_t k = 0; k < dim; ++k) {
    double y = f(op.values[k]);
    if (!std::isfinite(y)) throw DomainError("qetu_block_encode: f not finite");
    fmax = std::max(fmax, std::abs(y));
    double ym = f(-op.values[k]);
    if (std::abs(y - ym) > 1e-11 * std::max(1.0, fmax))
      throw ParityError(
          "qetu_block_encode: f must be even on the spectrum "
          "(indefinite parity is handled by LOVE-LCU)");
    (void)vscale;
  }
  double beta = config.beta > 0.0 ? config.beta : fmax;
  if (beta < fmax * (1.0 - 1e-12))
    throw DomainError("qetu_block_encode: beta below max |f| on the spectrum");

  std::vector<double> xs(dim), ys(dim);
  std::vector<double> bb_phases(dim);
  double tau = 1.0;
  if (config.building_block == QetuKind::ExpTau) {
    auto [shifted, params] = shift_for_qetu(op);
    if (params.tau > 2.0 + 1e-12)
      throw DomainError("qetu_block_encode: tau > 2, spectrum shift invalid");
    tau = params.tau;
    for (std::size_t k = 0; k < dim; ++k) {
      xs[k] = std::cos(tau * shifted.values[k] / 2.0);
      ys[k] = f(op.values[k]) / beta;
      bb_phases[k] = -tau * shifted.values[k];
    }
  } else {
    double alpha = config.alpha > 0.0 ? config.alpha : op.max_abs();
    if (alpha < op.max_abs() * (1.0 - 1e-12))
      throw DomainError("qetu_block_encode: alpha below max |values|");
    tau = 1.0;
    for (std::size_t k = 0; k < dim; ++k) {
      double r = std::clamp(op.values[k] / alpha, -1.0, 1.0);
      xs[k] = r;
      ys[k] = f(op.values[k]) / beta;
      bb_phases[k] = -2.0 * std::acos(r);
    }
  }

  ChebyshevSeries series = chebyshev_fit_exact(xs, ys, Parity::Even);
  if (!series.qsp_ready()) {
    std::ostringstream msg;
    msg << "qetu_block_encode: interpolant sup-norm " << series.sup_norm()
        << " exceeds 1; increase beta";
    throw DomainError(msg.str());
  }
  auto qsvt_phases = qsp_phases_symmetric(series, tol, cache);
  auto xphases = qetu_phases_for_series(qsvt_phases);
  const int d = xphases.degree();

  Registers regs;
  regs.signal = 1;
  regs.system = op.n;
  Circuit c(regs);
  Circuit bb(regs);
  std::vector<int> sysq(op.n);
  for (int q = 0; q < op.n; ++q) sysq[q] = 1 + q;
  bb.append(Gate::diagonal_phase(sysq, bb_phases));
  Circuit bb_inv = bb.inverse();

  // e^{i phi X} = Rx(-2 phi)
  c.append(Gate::rx(0, -2.0 * xphases.phases[0]));
  for (int j = 1; j <= d; ++j) {
    c.append(Gate::controlled_block(j % 2 == 1 ? bb : bb_inv, 0, true));
    c.append(Gate::rx(0, -2.0 * xphases.phases[j]));
  }
  c.metadata["queries"] = std::to_string(d);

  BlockEncoding out;
  out.circuit = std::move(c);
  out.alpha = beta;
  out.s_op = SOperator::single_z(0, true);
  Eigen::VectorXd t(dim);
  for (std::size_t k = 0; k < dim; ++k) t[k] = f(op.values[k]);
  out.set_target(t);
  return out;
}

}  // namespace bbenc
