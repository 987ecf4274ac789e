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

#include <complex>
#include <stdexcept>
#include <string>

namespace bbenc {

using cxd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Base class for all bbenc exceptions.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid value or out-of-domain input (non-finite function value, bad coefficient, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Ill-formed circuit or register layout (qubit collision, register mismatch, ...).
struct StructuralError : Error {
  using Error::Error;
};

/// Resource guard tripped (qubit budget, matrix size, ...).
struct ResourceError : Error {
  using Error::Error;
};

/// Numerical routine failed (rank-deficient fit, ill-conditioned roots, ...).
struct NumericalError : Error {
  using Error::Error;
};

/// Iterative solver did not reach its tolerance.
struct SolverError : Error {
  using Error::Error;
};

/// Function has the wrong parity for the requested construction.
struct ParityError : Error {
  using Error::Error;
};

}  // namespace bbenc
