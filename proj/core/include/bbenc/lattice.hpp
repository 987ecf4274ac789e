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

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "bbenc/types.hpp"

namespace bbenc {

/// Symmetric digitization of a bosonic site: 2^n_q field values in
/// [-phi_max, phi_max], conjugate momentum grid fixed by delta_phi.
struct DigitizationGrid {
  int n_q;
  double phi_max;

  DigitizationGrid(int n_q_, double phi_max_);

  double delta_phi() const;
  double pi_max() const;
  double delta_pi() const;
  std::int64_t dim() const { return std::int64_t{1} << n_q; }
};

/// Real diagonal operator on n qubits in computational-basis order.
/// Qubit 0 is the most significant bit of the basis index.
struct DiagonalOperator {
  int n = 0;
  std::vector<double> values;

  DiagonalOperator() = default;
  DiagonalOperator(int n_, std::vector<double> values_);

  std::int64_t dim() const { return std::int64_t{1} << n; }
  double max_abs() const;
};

/// Sum of Z-strings: subset bitmask (bit q set = Z on qubit q) -> coefficient.
struct PauliZPolynomial {
  int n = 0;
  std::map<std::uint64_t, double> terms;

  /// Rebuild the diagonal this polynomial represents.
  DiagonalOperator reconstruct() const;
  /// Sum of |coefficients| over all terms (identity included).
  double coeff_one_norm() const;
};

/// Affine spectral shift used by the exp(-i tau A) QETU building block.
struct ShiftParams {
  double c1;
  double c2;
  double tau;
};

DiagonalOperator build_phi(const DigitizationGrid& grid);
DiagonalOperator build_pi_diag(const DigitizationGrid& grid);

/// Walsh-Hadamard decomposition of a diagonal into Z-strings,
/// coeff(S) = 2^-n sum_x values[x] (-1)^{popcount(x & S)}.
PauliZPolynomial pauli_z_decompose(const DiagonalOperator& op);

/// Pointwise application; throws DomainError naming the offending
/// eigenvalue if f is non-finite anywhere on the grid.
DiagonalOperator apply_function(const DiagonalOperator& op,
                                const std::function<double(double)>& f);

/// Two-site operator phi_1 - phi_2 on 2 n_q qubits; site 1 occupies the
/// more significant qubit block.
DiagonalOperator difference_operator(const DigitizationGrid& grid);

/// Shift values into [0, pi]: shifted = c1 v + c2 with c1 = pi/(vmax - vmin),
/// c2 = -c1 vmin; tau = pi/c2 (tau = 2 for symmetric spectra).
std::pair<DiagonalOperator, ShiftParams> shift_for_qetu(const DiagonalOperator& op);

enum class ScaleFamily { PhiPow, HalfPiSquared, V1, HalfDiffSquared };

struct ScaleParams {
  double phi_max = 0.0;
  double pi_max = 0.0;
  int degree = 1;      // PhiPow only
  double m = 1.0;      // V1
  double lambda = 0.0; // V1
};

/// Closed-form one-norm of the Pauli coefficients for the supported
/// operator families (phi^d, pi^2/2, V1, (phi1-phi2)^2/2).
double scale_factor_closed_form(ScaleFamily kind, const ScaleParams& params);

/// One-norm of the Pauli coefficients of an arbitrary diagonal (the LCU
/// scale factor); used where no closed form exists, e.g. cos(phi).
double lcu_scale_factor(const DiagonalOperator& op);

}  // namespace bbenc
