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

#include "bbenc/lattice.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace bbenc {

DigitizationGrid::DigitizationGrid(int n_q_, double phi_max_)
    : n_q(n_q_), phi_max(phi_max_) {
  if (n_q < 1) throw DomainError("DigitizationGrid: n_q must be >= 1");
  if (!(phi_max > 0.0) || !std::isfinite(phi_max))
    throw DomainError("DigitizationGrid: phi_max must be a positive real");
}

double DigitizationGrid::delta_phi() const {
  return 2.0 * phi_max / static_cast<double>(dim() - 1);
}

double DigitizationGrid::pi_max() const { return kPi / delta_phi(); }

double DigitizationGrid::delta_pi() const {
  return 2.0 * pi_max() / static_cast<double>(dim() - 1);
}

DiagonalOperator::DiagonalOperator(int n_, std::vector<double> values_)
    : n(n_), values(std::move(values_)) {
  if (n < 0 || values.size() != static_cast<std::size_t>(std::int64_t{1} << n))
    throw DomainError("DiagonalOperator: length must be 2^n");
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError("DiagonalOperator: non-finite entry");
}

double DiagonalOperator::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

DiagonalOperator PauliZPolynomial::reconstruct() const {
  std::vector<double> vals(std::size_t{1} << n, 0.0);
  for (std::uint64_t x = 0; x < vals.size(); ++x) {
    double acc = 0.0;
    for (const auto& [mask, coeff] : terms) {
      // mask bit q = Z on qubit q; qubit q reads index bit (n-1-q).
      std::uint64_t idx_mask = 0;
      for (int q = 0; q < n; ++q)
        if (mask >> q & 1) idx_mask |= std::uint64_t{1} << (n - 1 - q);
      int parity = __builtin_popcountll(x & idx_mask) & 1;
      acc += parity ? -coeff : coeff;
    }
    vals[x] = acc;
  }
  return DiagonalOperator(n, std::move(vals));
}

double PauliZPolynomial::coeff_one_norm() const {
  double s = 0.0;
  for (const auto& [mask, coeff] : terms) {
    (void)mask;
    s += std::abs(coeff);
  }
  return s;
}

DiagonalOperator build_phi(const DigitizationGrid& grid) {
  std::vector<double> vals(grid.dim());
  const double d = grid.delta_phi();
  for (std::int64_t k = 0; k < grid.dim(); ++k)
    vals[k] = -grid.phi_max + static_cast<double>(k) * d;
  return DiagonalOperator(grid.n_q, std::move(vals));
}

DiagonalOperator build_pi_diag(const DigitizationGrid& grid) {
  std::vector<double> vals(grid.dim());
  const double pm = grid.pi_max();
  const double d = grid.delta_pi();
  for (std::int64_t k = 0; k < grid.dim(); ++k)
    vals[k] = -pm + static_cast<double>(k) * d;
  return DiagonalOperator(grid.n_q, std::move(vals));
}

namespace {

// In-place fast Walsh-Hadamard transform over index masks.
void fwht(std::vector<double>& a) {
  const std::size_t n = a.size();
  for (std::size_t len = 1; len < n; len <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * len) {
      for (std::size_t j = i; j < i + len; ++j) {
        double u = a[j];
        double v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
    }
  }
}

// Basis index bit (n-1-b) corresponds to qubit b (qubit 0 = MSB), so
// qubit masks and index masks are bit reversals of each other.
std::uint64_t rev_bits(std::uint64_t mask, int n) {
  std::uint64_t out = 0;
  for (int b = 0; b < n; ++b)
    if (mask >> b & 1) out |= std::uint64_t{1} << (n - 1 - b);
  return out;
}

}  // namespace

PauliZPolynomial pauli_z_decompose(const DiagonalOperator& op) {
  std::vector<double> a = op.values;
  fwht(a);
  const double scale = 1.0 / static_cast<double>(op.dim());
  PauliZPolynomial poly;
  poly.n = op.n;
  const double tol =
      4.0 * op.n * std::numeric_limits<double>::epsilon() * op.max_abs();
  for (std::uint64_t s = 0; s < a.size(); ++s) {
    double c = a[s] * scale;
    if (std::abs(c) <= tol) continue;
    poly.terms[rev_bits(s, op.n)] = c;
  }
  return poly;
}

DiagonalOperator apply_function(const DiagonalOperator& op,
                                const std::function<double(double)>& f) {
  std::vector<double> vals(op.values.size());
  for (std::size_t k = 0; k < vals.size(); ++k) {
    double y = f(op.values[k]);
    if (!std::isfinite(y)) {
      std::ostringstream msg;
      msg << "apply_function: non-finite value at eigenvalue " << op.values[k];
      throw DomainError(msg.str());
    }
    vals[k] = y;
  }
  return DiagonalOperator(op.n, std::move(vals));
}

DiagonalOperator difference_operator(const DigitizationGrid& grid) {
  DiagonalOperator phi = build_phi(grid);
  const std::int64_t d = grid.dim();
  std::vector<double> vals(static_cast<std::size_t>(d) * d);
  // Site 1 = more significant block: joint index (k1, k2) = k1*d + k2.
  for (std::int64_t k1 = 0; k1 < d; ++k1)
    for (std::int64_t k2 = 0; k2 < d; ++k2)
      vals[k1 * d + k2] = phi.values[k1] - phi.values[k2];
  return DiagonalOperator(2 * grid.n_q, std::move(vals));
}

std::pair<DiagonalOperator, ShiftParams> shift_for_qetu(const DiagonalOperator& op) {
  double vmin = op.values[0], vmax = op.values[0];
  for (double v : op.values) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  if (!(vmax > vmin))
    throw DomainError("shift_for_qetu: operator has a degenerate (constant) spectrum");
  ShiftParams p{};
  p.c1 = kPi / (vmax - vmin);
  p.c2 = -p.c1 * vmin;
  p.tau = p.c2 > 0.0 ? kPi / p.c2 : 2.0;
  std::vector<double> vals(op.values.size());
  for (std::size_t k = 0; k < vals.size(); ++k)
    vals[k] = p.c1 * op.values[k] + p.c2;
  return {DiagonalOperator(op.n, std::move(vals)), p};
}

double scale_factor_closed_form(ScaleFamily kind, const ScaleParams& params) {
  switch (kind) {
    case ScaleFamily::PhiPow:
      return std::pow(params.phi_max, params.degree);
    case ScaleFamily::HalfPiSquared:
      return 0.5 * params.pi_max * params.pi_max;
    case ScaleFamily::V1:
      return 0.5 * params.m * params.m * params.phi_max * params.phi_max +
             params.lambda / 24.0 * std::pow(params.phi_max, 4);
    case ScaleFamily::HalfDiffSquared:
      return 2.0 * params.phi_max * params.phi_max;
  }
  throw DomainError("scale_factor_closed_form: unsupported operator family");
}

double lcu_scale_factor(const DiagonalOperator& op) {
  return pauli_z_decompose(op).coeff_one_norm();
}

}  // namespace bbenc
