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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bbenc/types.hpp"

namespace bbenc {

enum class Parity { Even, Odd, None };

/// Real Chebyshev series sum_j coeffs[j] T_j(x).
struct ChebyshevSeries {
  Parity parity = Parity::None;
  std::vector<double> coeffs;  // index = degree

  int degree() const;
  double eval(double x) const;          // Clenshaw
  double sup_norm() const;              // max |.| over the 10001-point grid
  bool qsp_ready() const { return sup_norm() <= 1.0 + 1e-12; }
};

/// Interpolate the sample values exactly (residual <= 1e-12 at every
/// point); for Even/Odd parity the symmetric point set is folded and the
/// degree halves.
ChebyshevSeries chebyshev_fit_exact(const std::vector<double>& points,
                                    const std::vector<double>& values,
                                    Parity parity);

/// Bessel functions of the first kind J_0..J_kmax by Miller's downward
/// recurrence with normalization.
std::vector<double> bessel_j_table(double t, int kmax);

/// Truncated, rescaled Laurent expansion of e^{-i t cos x}:
/// c_k = (-i)^k J_k(t) / (1 + eps/2) for |k| <= K, K minimal with
/// 2 sum_{k>K} |J_k(t)| <= eps/2.
struct JacobiAngerTable {
  double t = 0.0;
  double eps = 0.0;
  int K = 0;
  std::vector<cxd> coeffs;  // index k + K

  cxd eval(double theta) const;  // sum c_k e^{i k theta}
};

JacobiAngerTable jacobi_anger(double t, double eps);

/// Append-only phase-factor cache, one record per line:
///   hash degree tol v0 v1 ... (17 significant digits)
class PhaseCache {
 public:
  explicit PhaseCache(std::string path);

  std::optional<std::vector<double>> lookup(const std::string& hash, int degree,
                                            double tol) const;
  void store(const std::string& hash, int degree, double tol,
             const std::vector<double>& values);

  static std::string hash_doubles(const std::vector<double>& vs,
                                  const std::string& salt);

 private:
  std::string path_;
  struct Key {
    std::string hash;
    int degree;
    double tol;
    bool operator<(const Key& o) const;
  };
  std::map<Key, std::vector<double>> records_;
};

}  // namespace bbenc
