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

#include "bbenc/lcu.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bbenc/simulate.hpp"
#include "bbenc/synth.hpp"

namespace bbenc {

Eigen::MatrixXcd BlockEncoding::target() const {
  if (!has_target) throw StructuralError("BlockEncoding: no verification target");
  if (!target_is_diag) return target_dense;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(target_diag.size(), target_diag.size());
  m.diagonal() = target_diag.cast<cxd>();
  return m;
}

void BlockEncoding::set_target(const Eigen::VectorXd& diag) {
  has_target = true;
  target_is_diag = true;
  target_diag = diag;
}

void BlockEncoding::set_target(const Eigen::MatrixXcd& dense) {
  has_target = true;
  target_is_diag = false;
  target_dense = dense;
}

double verify_block_encoding(const BlockEncoding& be) {
  Eigen::MatrixXcd block = block_of(be.circuit, be.n_anc());
  return (block - be.target() / be.alpha).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// PREP
// ---------------------------------------------------------------------------

namespace {

void emit_ry(Circuit& c, int qubit, double theta) {
  c.append(Gate::rz(qubit, -kPi / 2.0));
  c.append(Gate::rx(qubit, theta));
  c.append(Gate::rz(qubit, kPi / 2.0));
}

// Multiplexed RY over `controls` (first control = outermost split).
void emit_ucry(Circuit& c, const std::vector<int>& controls, int target,
               const std::vector<double>& angles) {
  if (controls.empty()) {
    emit_ry(c, target, angles[0]);
    return;
  }
  const std::size_t half = angles.size() / 2;
  std::vector<double> sum(half), diff(half);
  for (std::size_t i = 0; i < half; ++i) {
    sum[i] = 0.5 * (angles[i] + angles[half + i]);
    diff[i] = 0.5 * (angles[i] - angles[half + i]);
  }
  std::vector<int> rest(controls.begin() + 1, controls.end());
  emit_ucry(c, rest, target, sum);
  c.append(Gate::cnot(controls[0], target));
  emit_ucry(c, rest, target, diff);
  c.append(Gate::cnot(controls[0], target));
}

}  // namespace

Circuit prep_oracle(const std::vector<double>& coeffs) {
  if (coeffs.empty()) throw DomainError("prep_oracle: at least one coefficient");
  for (double cv : coeffs)
    if (!(cv > 0.0)) throw DomainError("prep_oracle: coefficients must be positive");
  int m = 0;
  while ((std::size_t{1} << m) < coeffs.size()) ++m;
  Registers regs;
  regs.be_anc = m;
  Circuit c(regs);
  if (m == 0) return c;

  std::vector<double> amp(std::size_t{1} << m, 0.0);
  double total = 0.0;
  for (double cv : coeffs) total += cv;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    amp[i] = std::sqrt(coeffs[i] / total);

  for (int j = 0; j < m; ++j) {
    const std::size_t np = std::size_t{1} << j;
    std::vector<double> angles(np, 0.0);
    const std::size_t width = std::size_t{1} << (m - j);
    for (std::size_t p = 0; p < np; ++p) {
      double n0 = 0.0, n1 = 0.0;
      for (std::size_t i = 0; i < width / 2; ++i) {
        double a0 = amp[p * width + i];
        double a1 = amp[p * width + width / 2 + i];
        n0 += a0 * a0;
        n1 += a1 * a1;
      }
      angles[p] = 2.0 * std::atan2(std::sqrt(n1), std::sqrt(n0));
    }
    std::vector<int> controls(j);
    for (int b = 0; b < j; ++b) controls[b] = b;
    emit_ucry(c, controls, j, angles);
  }
  return c;
}

// ---------------------------------------------------------------------------
// SEL / LCU
// ---------------------------------------------------------------------------

Circuit sel_oracle(const std::vector<UnitaryTerm>& terms) {
  if (terms.empty()) throw DomainError("sel_oracle: no terms");
  const int n = terms[0].circuit.regs.system;
  for (const auto& t : terms)
    if (t.circuit.regs.system != n || t.circuit.regs.ancillas() != 0)
      throw StructuralError("sel_oracle: terms must share one system register");
  int m = 0;
  while ((std::size_t{1} << m) < terms.size()) ++m;
  Registers regs;
  regs.be_anc = m;
  regs.system = n;
  Circuit sel(regs);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].circuit.gates.empty()) continue;
    Circuit body = terms[i].circuit.shifted(m, regs);
    if (m == 0) {
      sel.append(body);
      continue;
    }
    // innermost control is qubit m-1 (LSB of i); qubit 0 tests the MSB
    Gate g = Gate::controlled_block(body, m - 1, (i >> 0) & 1);
    for (int b = m - 2; b >= 0; --b) {
      Circuit wrap(regs);
      wrap.gates.push_back(std::move(g));
      g = Gate::controlled_block(std::move(wrap), b, (i >> (m - 1 - b)) & 1);
    }
    sel.append(std::move(g));
  }
  return sel;
}

BlockEncoding lcu_block_encode(const std::vector<UnitaryTerm>& terms,
                               SOperator s_hint) {
  if (terms.empty()) throw DomainError("lcu_block_encode: no terms");
  std::vector<double> coeffs;
  coeffs.reserve(terms.size());
  double total = 0.0;
  for (const auto& t : terms) {
    if (!(t.coefficient > 0.0))
      throw DomainError("lcu_block_encode: coefficients must be positive");
    coeffs.push_back(t.coefficient);
    total += t.coefficient;
  }
  Circuit sel = sel_oracle(terms);
  Circuit prep = prep_oracle(coeffs);
  BlockEncoding be;
  be.circuit = Circuit(sel.regs);
  if (sel.regs.be_anc > 0) {
    Circuit prep_embedded = prep.shifted(0, sel.regs);
    be.circuit.append(prep_embedded);
    be.circuit.append(sel);
    be.circuit.append(prep_embedded.inverse());
  } else {
    be.circuit.append(sel);
  }
  be.alpha = total;
  be.s_op = s_hint;
  if (be.circuit.num_qubits() <= 12) {
    const int n = sel.regs.system;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(1 << n, 1 << n);
    for (const auto& t : terms) acc += t.coefficient * unitary_of(t.circuit);
    be.set_target(acc);
  }
  return be;
}

std::vector<UnitaryTerm> pauli_terms(const PauliZPolynomial& poly) {
  std::vector<UnitaryTerm> terms;
  for (const auto& [mask, coeff] : poly.terms) {
    if (coeff == 0.0) continue;
    UnitaryTerm t;
    t.coefficient = std::abs(coeff);
    t.circuit = Circuit(poly.n);
    for (int q = 0; q < poly.n; ++q)
      if (mask >> q & 1) t.circuit.append(Gate::z(q));
    if (coeff < 0.0) t.circuit.append(Gate::global_phase(kPi));
    terms.push_back(std::move(t));
  }
  return terms;
}

// ---------------------------------------------------------------------------
// LOVE-LCU
// ---------------------------------------------------------------------------

std::pair<Circuit, bool> control_free_sel(const std::vector<double>& diag_phases) {
  int n = 0;
  while ((std::size_t{1} << n) < diag_phases.size()) ++n;
  if (diag_phases.size() != (std::size_t{1} << n))
    throw StructuralError("control_free_sel: phase vector length must be 2^n");
  const std::size_t dim = diag_phases.size();
  double scale = 1e-12;
  for (double p : diag_phases) scale = std::max(scale, std::abs(p));

  Registers regs;
  regs.be_anc = 1;
  regs.system = n;

  // search for an index mask M with D[x ^ M] = -D[x] + const; the full
  // flip is the physically expected mask, so it goes first
  std::int64_t found = -1;
  double cshift = 0.0;
  for (std::size_t trial = 0; trial < dim; ++trial) {
    std::size_t mask = trial == 0 ? dim - 1 : trial - 1;
    if (trial > 0 && mask == dim - 1) continue;
    double c0 = diag_phases[mask] + diag_phases[0];
    bool ok = true;
    for (std::size_t x = 0; x < dim; ++x) {
      if (std::abs(diag_phases[x ^ mask] + diag_phases[x] - c0) > 1e-12 * scale) {
        ok = false;
        break;
      }
    }
    if (ok) {
      found = static_cast<std::int64_t>(mask);
      cshift = c0;
      break;
    }
  }

  Circuit c(regs);
  if (found < 0) {
    // fallback: both controlled branches synthesized as one joint diagonal
    std::vector<int> qs(n + 1);
    for (int i = 0; i <= n; ++i) qs[i] = i;
    std::vector<double> v(2 * dim);
    for (std::size_t x = 0; x < dim; ++x) {
      v[x] = diag_phases[x];
      v[dim + x] = -diag_phases[x];
    }
    c.append(Gate::diagonal_phase(std::move(qs), std::move(v)));
    return {c, false};
  }

  std::vector<int> sysq(n);
  for (int i = 0; i < n; ++i) sysq[i] = 1 + i;
  std::vector<int> fan;
  for (int b = 0; b < n; ++b)
    if (found >> b & 1) fan.push_back(1 + (n - 1 - b));  // index bit -> qubit
  for (int q : fan) c.append(Gate::cnot(0, q));
  c.append(Gate::diagonal_phase(sysq, diag_phases));
  for (int q : fan) c.append(Gate::cnot(0, q));
  if (cshift != 0.0) {
    // diag(1, e^{-i c}) on the ancilla
    c.append(Gate::global_phase(-cshift / 2.0));
    c.append(Gate::rz(0, -cshift));
  }
  return {c, true};
}

BlockEncoding love_lcu(const DiagonalOperator& target, std::optional<double> beta) {
  const double vmax = target.max_abs();
  double b = beta.value_or(vmax);
  if (b < vmax * (1.0 - 1e-12) || !(b > 0.0))
    throw DomainError("love_lcu: beta must satisfy beta >= max|target values|");
  const std::size_t dim = target.values.size();
  const int n = target.n;

  std::vector<double> dpr(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    double r = std::clamp(target.values[k] / b, -1.0, 1.0);
    dpr[k] = std::acos(r);
  }

  Registers regs;
  regs.be_anc = 1;
  regs.system = n;

  auto assemble = [&](Circuit sel) {
    Circuit c(regs);
    c.append(Gate::h(0));
    c.append(sel);
    c.append(Gate::h(0));
    return c;
  };

  // Any sign choice of the arccos branch encodes the same block. For
  // targets even under the full bit flip, the sign-alternating branch has
  // odd phases and unlocks the control-free select (for cos(phi) it
  // reduces the select to e^{-+ i phi}).
  bool flip_even = true;
  for (std::size_t k = 0; k < dim / 2; ++k) {
    if (std::abs(target.values[k] - target.values[dim - 1 - k]) >
        1e-12 * std::max(1.0, vmax)) {
      flip_even = false;
      break;
    }
  }
  std::vector<double> dcf = dpr;
  if (flip_even)
    for (std::size_t k = 0; k < dim; ++k)
      dcf[k] = (k < dim / 2 ? 1.0 : -1.0) * dpr[k];

  // The control-free select pays off when the bare diagonal is a sum of
  // single-qubit Z terms (an O(n_q) select, e.g. cos with its e^{-+i phi}
  // reduction); for richer Walsh support the joint synthesis shares the
  // Gray walk across both branches and wins.
  bool singleton_support = true;
  {
    auto poly = pauli_z_decompose(DiagonalOperator(n, dcf));
    for (const auto& [mask, coeff] : poly.terms) {
      (void)coeff;
      if (mask != 0 && (mask & (mask - 1)) != 0) singleton_support = false;
    }
  }
  auto [sel_cf, cf_ok] = control_free_sel(dcf);
  bool use_cf = cf_ok && singleton_support;

  BlockEncoding be;
  if (use_cf) {
    be.circuit = assemble(std::move(sel_cf));
    be.circuit.metadata["love_sel"] =
        flip_even ? "control-free-odd" : "control-free";
  } else {
    std::vector<int> qs(n + 1);
    for (int i = 0; i <= n; ++i) qs[i] = i;
    std::vector<double> v(2 * dim);
    for (std::size_t x = 0; x < dim; ++x) {
      v[x] = dpr[x];
      v[dim + x] = -dpr[x];
    }
    Circuit sel(regs);
    sel.append(Gate::diagonal_phase(std::move(qs), std::move(v)));
    be.circuit = assemble(std::move(sel));
    be.circuit.metadata["love_sel"] = "joint-diagonal";
  }
  be.alpha = b;
  be.s_op = SOperator::single_z(0, true);
  Eigen::VectorXd t(dim);
  for (std::size_t k = 0; k < dim; ++k) t[k] = target.values[k];
  be.set_target(t);
  return be;
}

// ---------------------------------------------------------------------------
// Combination
// ---------------------------------------------------------------------------

BlockEncoding lcu_combine(const std::vector<BlockEncoding>& encodings,
                          const std::vector<double>& weights) {
  if (encodings.empty() || encodings.size() != weights.size())
    throw DomainError("lcu_combine: encoding/weight count mismatch");
  const int n_sys = encodings[0].n_sys();
  int max_anc = 0;
  for (const auto& be : encodings) {
    if (be.n_sys() != n_sys)
      throw StructuralError("lcu_combine: system registers differ");
    if (be.s_op.kind != SOperatorKind::SingleZ)
      throw StructuralError(
          "lcu_combine: every sub-encoding must carry a single-Z S operator");
    max_anc = std::max(max_anc, be.n_anc());
  }
  const int m_terms = static_cast<int>(encodings.size());
  int m_lambda = 0;
  while ((1 << m_lambda) < m_terms) ++m_lambda;

  Registers regs;
  regs.site_anc = m_lambda;
  regs.be_anc = max_anc;
  regs.system = n_sys;

  std::vector<double> coeffs(m_terms);
  for (int i = 0; i < m_terms; ++i) {
    if (!(weights[i] > 0.0))
      throw DomainError("lcu_combine: weights must be positive");
    coeffs[i] = weights[i] * encodings[i].alpha;
  }

  // Embed each sub-encoding with its S qubit on a_0, remaining ancillas
  // packed into the low-indexed a qubits.
  std::vector<Circuit> embedded;
  bool commutes = true;
  for (const auto& be : encodings) {
    const int na = be.n_anc();
    std::vector<int> map(be.circuit.num_qubits());
    int next = m_lambda + 1;
    for (int q = 0; q < na; ++q) {
      if (q == be.s_op.qubit)
        map[q] = m_lambda;  // a_0
      else
        map[q] = next++;
    }
    for (int q = na; q < be.circuit.num_qubits(); ++q)
      map[q] = m_lambda + max_anc + (q - na);
    embedded.push_back(be.circuit.remapped(map, regs));
    commutes = commutes && be.s_op.commutes;
  }

  Circuit circ(regs);
  Circuit prep_embedded(regs);
  if (m_lambda > 0) {
    Circuit prep = prep_oracle(coeffs);
    std::vector<int> pmap(m_lambda);
    for (int b = 0; b < m_lambda; ++b) pmap[b] = b;
    prep_embedded = prep.remapped(pmap, regs);
    circ.append(prep_embedded);
  }
  for (int i = 0; i < m_terms; ++i) {
    if (m_lambda == 0) {
      circ.append(embedded[i]);
      continue;
    }
    Gate g = Gate::controlled_block(embedded[i], m_lambda - 1, (i >> 0) & 1);
    for (int b = m_lambda - 2; b >= 0; --b) {
      Circuit wrap(regs);
      wrap.gates.push_back(std::move(g));
      g = Gate::controlled_block(std::move(wrap), b, (i >> (m_lambda - 1 - b)) & 1);
    }
    circ.append(std::move(g));
  }
  if (m_lambda > 0) circ.append(prep_embedded.inverse());

  BlockEncoding out;
  out.circuit = std::move(circ);
  out.alpha = 0.0;
  for (double cv : coeffs) out.alpha += cv;
  out.s_op = SOperator::single_z(m_lambda, commutes);

  bool all_targets = true;
  for (const auto& be : encodings) all_targets = all_targets && be.has_target;
  if (all_targets) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(1 << n_sys, 1 << n_sys);
    for (int i = 0; i < m_terms; ++i) acc += weights[i] * encodings[i].target();
    out.set_target(acc);
  }
  return out;
}

BlockEncoding conjugate_be(const BlockEncoding& be, const Circuit& f_sys) {
  if (f_sys.num_qubits() != be.n_sys())
    throw StructuralError("conjugate_be: conjugation must act on the system");
  BlockEncoding out = be;
  Circuit emb = f_sys.shifted(be.n_anc(), be.circuit.regs);
  Circuit c(be.circuit.regs);
  c.metadata = be.circuit.metadata;
  c.append(emb);
  c.append(be.circuit);
  c.append(emb.inverse());
  out.circuit = std::move(c);
  if (be.has_target) {
    Eigen::MatrixXcd f = unitary_of(f_sys);
    out.set_target(Eigen::MatrixXcd(f.adjoint() * be.target() * f));
  }
  return out;
}

BlockEncoding embed_system(const BlockEncoding& be, int total_sys, int offset) {
  const int n = be.n_sys();
  if (offset < 0 || offset + n > total_sys)
    throw StructuralError("embed_system: window outside the target register");
  BlockEncoding out = be;
  Registers regs = be.circuit.regs;
  regs.system = total_sys;
  const int na = be.n_anc();
  std::vector<int> map(be.circuit.num_qubits());
  for (int q = 0; q < na; ++q) map[q] = q;
  for (int q = 0; q < n; ++q) map[na + q] = na + offset + q;
  out.circuit = be.circuit.remapped(map, regs);
  if (be.has_target) {
    Eigen::MatrixXcd left =
        Eigen::MatrixXcd::Identity(std::int64_t{1} << offset, std::int64_t{1} << offset);
    Eigen::MatrixXcd right = Eigen::MatrixXcd::Identity(
        std::int64_t{1} << (total_sys - offset - n),
        std::int64_t{1} << (total_sys - offset - n));
    out.set_target(Eigen::MatrixXcd(kron(kron(left, be.target()), right)));
  }
  return out;
}

}  // namespace bbenc
