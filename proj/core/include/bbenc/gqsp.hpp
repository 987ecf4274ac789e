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

#include <Eigen/Dense>

#include "bbenc/poly.hpp"

namespace bbenc {

/// SU(2) rotation angles parameterizing a Laurent polynomial of a unitary.
/// Layer j applies an inverse query when dirs[j-1] < 0 (the negative
/// Laurent powers), a forward query otherwise.
struct GqspPhases {
  std::vector<double> thetas;  // length d+1
  std::vector<double> phis;    // length d+1
  double gamma = 0.0;
  int k_min = 0;
  int k_max = 0;
  std::vector<int> dirs;  // length d
  double grid_residual = 0.0;

  int queries() const { return static_cast<int>(dirs.size()); }
};

/// The R(theta, phi, gamma) rotation of the signal qubit.
Eigen::Matrix2cd gqsp_rotation(double theta, double phi, double gamma);

/// Evaluate the implemented polynomial at z = e^{i theta} by the 2x2
/// matrix recursion (the verification oracle).
cxd gqsp_eval(const GqspPhases& p, double theta);

/// Angle extraction for a Laurent polynomial sum_{k=-K..K} coeffs[k+K] z^k
/// with |P| <= 1 on the unit circle. Completion by root finding at small
/// degree, FFT spectral factorization in extended precision otherwise; the
/// layer peel always runs in extended precision (its error grows by about
/// one bit per layer). The returned angles are certified on a 4096-point
/// grid to `target_residual`.
GqspPhases gqsp_phases_laurent(const std::vector<cxd>& coeffs, int K,
                               double target_residual,
                               PhaseCache* cache = nullptr);

GqspPhases gqsp_phases(const JacobiAngerTable& table, double target_residual,
                       PhaseCache* cache = nullptr);

}  // namespace bbenc
