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

#include "bbenc/gqsp.hpp"
#include "bbenc/qubitization.hpp"
#include "bbenc/synth.hpp"

namespace bbenc {

enum class Potential { V1, V2 };

struct HamiltonianSpec {
  int sites = 1;  // 1 or 2
  DigitizationGrid grid{3, 1.5};
  Potential potential = Potential::V1;
  double m = 1.0;
  double lambda = 32.0;
  double g = 1.0;

  double vfun(double phi) const;
  int n_sys() const { return sites * grid.n_q; }
};

struct EvolutionReport {
  std::string method;  // pf2 | pf4 | gqsp
  double t = 0.0;
  double eps_target = 0.0;
  double eps_measured = 0.0;
  GateCounts counts;
  long queries = 0;
  double alpha_t = 0.0;
  std::string verification;  // dense | walk-eigen | structure-only
};

/// Dense Hermitian Hamiltonian: per-site Fourier-conjugated kinetic terms
/// plus the diagonal potential (and gradient coupling for two sites).
Eigen::MatrixXcd build_hamiltonian_matrix(const HamiltonianSpec& spec);

/// Diagonal part of the Hamiltonian (potential + coupling) and the
/// momentum-basis kinetic diagonal of one site.
DiagonalOperator hamiltonian_phi_diagonal(const HamiltonianSpec& spec);
DiagonalOperator kinetic_diagonal(const HamiltonianSpec& spec);

/// Full-Hamiltonian block encoding: LOVE-LCU encodings of the kinetic and
/// potential pieces combined by one LCU layer (single-Z S operator).
BlockEncoding hamiltonian_block_encoding(const HamiltonianSpec& spec);

struct GqspOptions {
  bool solve_angles = true;  // false: bookkeeping only (structure-only rows)
  bool materialize = true;   // assemble the full gate-level circuit
  bool dense_verify = true;  // measure eps by dense block simulation
  PhaseCache* cache = nullptr;
};

/// Time evolution by signal-processing the walk operator with the
/// Jacobi-Anger expansion of e^{-i alpha t cos x}.
std::pair<Circuit, EvolutionReport> gqsp_evolve(const WalkOperator& walk,
                                                const Eigen::MatrixXcd& h,
                                                double t, double eps,
                                                const GqspOptions& options = {});

/// 2nd / 4th order product formulas with exact diagonal exponentials and
/// per-site Fourier layers. Circuits are materialized up to `materialize_cap`
/// steps; counts always refer to the full evolution.
std::pair<Circuit, EvolutionReport> trotter_evolve(const HamiltonianSpec& spec,
                                                   double t, long steps,
                                                   int order,
                                                   long materialize_cap = 64);

/// Spectral norm of (projected block - e^{-i h t}).
double measure_error(const Eigen::MatrixXcd& block, const Eigen::MatrixXcd& h,
                     double t);

/// Minimal step count whose measured error meets the target (doubling then
/// bisection); returns {steps, eps_measured}.
std::pair<long, double> trotter_steps_for(const HamiltonianSpec& spec, double t,
                                          int order, double eps_target,
                                          long max_steps = 4'000'000);

}  // namespace bbenc
