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

#include "bbenc/poly.hpp"

namespace bbenc {

/// Symmetric phase factors for the alternating-query signal-processing
/// circuits; phases[j] == phases[degree-j] exactly.
struct SymmetricPhases {
  std::vector<double> phases;
  double node_residual = 0.0;

  int degree() const { return static_cast<int>(phases.size()) - 1; }
};

/// Scalar model of the signal-processing circuit block for a target with
/// the given phases: the two signal branches of the Hadamard-conjugated
/// projector-phase circuit evaluated by 2x2 products. Real on solutions.
cxd qsvt_scalar_eval(double x, const std::vector<double>& phases);

/// Scalar model of the QETU circuit block at eigenvalue `a` of the
/// generator: e^{i phi_0 X} cU e^{i phi_1 X} cU^dag ... with U = e^{-i tau a}.
cxd qetu_scalar_eval(double a, double tau, const std::vector<double>& xphases);

/// Solve symmetric phases such that the alternating-query circuit block
/// reproduces the series at the fit nodes to <= tol; the returned phases
/// satisfy the QSVT circuit convention directly.
SymmetricPhases qsp_phases_symmetric(const ChebyshevSeries& series, double tol,
                                     PhaseCache* cache = nullptr);

/// phases[j] -> phases[j] + pi/4 at both symmetric ends, + pi/2 in the
/// interior.
SymmetricPhases qetu_shift(const SymmetricPhases& p);

/// Phases driving the QETU circuit for the same series: the interior
/// convention offset between the two circuit families plus a sign fix for
/// d = 2 (mod 4) (an exact pi shift of the middle X-rotation).
SymmetricPhases qetu_phases_for_series(const SymmetricPhases& qsvt_phases);

}  // namespace bbenc
