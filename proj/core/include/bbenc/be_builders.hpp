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

#include <functional>

#include "bbenc/lcu.hpp"
#include "bbenc/qsp.hpp"

namespace bbenc {

/// LCU block encoding of a Z-string polynomial; alpha is the coefficient
/// one-norm. The select oracle squares to the identity, so the identity
/// operator serves as S.
BlockEncoding build_xi_be(const PauliZPolynomial& poly);

/// Signal-processed product of `base` and its inverse realizing the even
/// series of base's block: block = sum c_j T_j(target/alpha_base), encoded
/// with scale factor `beta` relative to `target_fn` applied entrywise.
BlockEncoding qsvt_block_encode(const BlockEncoding& base,
                                const ChebyshevSeries& series, double beta,
                                double tol, PhaseCache* cache = nullptr);

enum class QetuKind { ExpTau, ExpArccos };

struct QetuConfig {
  QetuKind building_block = QetuKind::ExpTau;
  double alpha = 0.0;  // ExpArccos: normalization of the argument
  double beta = 0.0;   // target normalization; 0 = max |f| over the spectrum
};

/// Even-function block encoding through alternating controlled calls to a
/// diagonal building block: e^{-i tau A_sh} (spectral shift, exact sampling
/// at the shifted grid) or e^{-2 i arccos(A/alpha)} (direct argument).
BlockEncoding qetu_block_encode(const std::function<double(double)>& f,
                                const DiagonalOperator& op,
                                const QetuConfig& config, double tol,
                                PhaseCache* cache = nullptr);

}  // namespace bbenc
