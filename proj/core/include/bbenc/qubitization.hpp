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

#include "bbenc/lcu.hpp"

namespace bbenc {

struct WalkOperator {
  Circuit circuit;
  double alpha = 1.0;
  BlockEncoding source;
};

/// 2|0><0| - I on m qubits, lowered through diagonal synthesis.
Circuit reflection_r0(int m);

struct SReport {
  double block_residual = 0.0;       // S-projected block vs target/alpha
  double square_residual = 0.0;      // [(S (x) I) U]^2 block vs identity
  double commutation_residual = 0.0; // S U - U^dag S when claimed
  bool block_ok = false;
  bool square_ok = false;
  bool commutation_checked = false;
  bool commutation_ok = false;
  bool pass() const { return block_ok && square_ok; }
};

/// Matrix-level check of the qubitization conditions for the encoding's
/// declared S operator.
SReport verify_s(const BlockEncoding& be);

/// Walk operator (R0 (x) I)(S (x) I) U; refuses when verify_s fails.
WalkOperator make_walk(const BlockEncoding& be);

/// General qubitization: one extra ancilla, two controlled calls to the
/// encoding. Valid for any Hermitian-block encoding.
WalkOperator fallback_qubitize(const BlockEncoding& be);

struct WalkCheck {
  double max_residual = 0.0;   // worst deviation from the two-dim action
  double max_trace_dev = 0.0;  // |tr - 2 lambda| over eigen blocks
  double max_det_dev = 0.0;    // |det - 1| over eigen blocks
};

/// Verify the invariant two-dimensional action of the walk on every
/// eigenpair of target/alpha (dense).
WalkCheck verify_walk(const WalkOperator& w);

}  // namespace bbenc
