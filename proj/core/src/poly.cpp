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

#include "bbenc/poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bbenc {

int ChebyshevSeries::degree() const {
  for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j)
    if (coeffs[j] != 0.0) return j;
  return 0;
}

double ChebyshevSeries::eval(double x) const {
  // Clenshaw recurrence
  double b1 = 0.0, b2 = 0.0;
  for (int j = static_cast<int>(coeffs.size()) - 1; j >= 1; --j) {
    double b0 = coeffs[j] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  double c0 = coeffs.empty() ? 0.0 : coeffs[0];
  return c0 + x * b1 - b2;
}

double ChebyshevSeries::sup_norm() const {
  double m = 0.0;
  const int grid = 10001;
  for (int i = 0; i < grid; ++i) {
    double x = -1.0 + 2.0 * i / (grid - 1);
    m = std::max(m, std::abs(eval(x)));
  }
  return m;
}

namespace {

double cheb_t(int j, double x) {
  if (x > 1.0) x = 1.0;
  if (x < -1.0) x = -1.0;
  return std::cos(j * std::acos(x));
}

}  // namespace

ChebyshevSeries chebyshev_fit_exact(const std::vector<double>& points,
                                    const std::vector<double>& values,
                                    Parity parity) {
  if (points.size() != values.size() || points.empty())
    throw DomainError("chebyshev_fit_exact: point/value count mismatch");
  double scale = 1.0;
  for (double v : values) scale = std::max(scale, std::abs(v));

  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<int> degs;

  if (parity == Parity::None) {
    xs = points;
    ys = values;
    for (std::size_t j = 0; j < xs.size(); ++j) degs.push_back(static_cast<int>(j));
  } else {
    // Fold the +-x pairs; the sample set must be consistent with the parity.
    const double ptol = 1e-12;
    std::vector<std::pair<double, double>> folded;
    for (std::size_t i = 0; i < points.size(); ++i) {
      double u = std::abs(points[i]);
      double y = values[i];
      if (parity == Parity::Odd && points[i] < 0.0) y = -y;
      if (parity == Parity::Odd && u < ptol) {
        if (std::abs(values[i]) > 1e-10 * scale)
          throw DomainError("chebyshev_fit_exact: odd fit requires f(0) = 0");
        continue;
      }
      bool merged = false;
      for (auto& [ux, uy] : folded) {
        if (std::abs(ux - u) < ptol) {
          if (std::abs(uy - y) > 1e-10 * scale)
            throw DomainError(
                "chebyshev_fit_exact: sample values inconsistent with parity");
          merged = true;
          break;
        }
      }
      if (!merged) folded.emplace_back(u, y);
    }
    for (auto& [ux, uy] : folded) {
      xs.push_back(ux);
      ys.push_back(uy);
    }
    for (std::size_t j = 0; j < xs.size(); ++j)
      degs.push_back(parity == Parity::Even ? 2 * static_cast<int>(j)
                                            : 2 * static_cast<int>(j) + 1);
  }

  const int m = static_cast<int>(xs.size());
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    b(i) = ys[i];
    for (int j = 0; j < m; ++j) a(i, j) = cheb_t(degs[j], xs[i]);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < m) {
    std::ostringstream msg;
    msg << "chebyshev_fit_exact: rank-deficient system (rank " << qr.rank()
        << " of " << m << ")";
    throw NumericalError(msg.str());
  }
  Eigen::VectorXd c = qr.solve(b);

  ChebyshevSeries out;
  out.parity = parity;
  out.coeffs.assign(degs.empty() ? 1 : degs.back() + 1, 0.0);
  double cmax = 0.0;
  for (int j = 0; j < m; ++j) cmax = std::max(cmax, std::abs(c(j)));
  for (int j = 0; j < m; ++j)
    out.coeffs[degs[j]] = std::abs(c(j)) > 1e-13 * cmax ? c(j) : 0.0;
  while (out.coeffs.size() > 1 && out.coeffs.back() == 0.0)
    out.coeffs.pop_back();

  for (std::size_t i = 0; i < points.size(); ++i) {
    double r = std::abs(out.eval(points[i]) - values[i]);
    if (r > 1e-12 * scale) {
      std::ostringstream msg;
      msg << "chebyshev_fit_exact: residual " << r << " at x = " << points[i]
          << " exceeds tolerance (ill-conditioned fit)";
      throw NumericalError(msg.str());
    }
  }
  return out;
}

std::vector<double> bessel_j_table(double t, int kmax) {
  if (t < 0.0) throw DomainError("bessel_j_table: t must be >= 0");
  std::vector<double> out(kmax + 1, 0.0);
  if (t == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const int start = std::max(kmax, static_cast<int>(std::ceil(t))) + 60 +
                    2 * static_cast<int>(std::cbrt(t));
  std::vector<double> j(start + 2, 0.0);
  j[start + 1] = 0.0;
  j[start] = 1e-280;
  for (int k = start; k >= 1; --k) {
    j[k - 1] = 2.0 * k / t * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > 1e260) {
      for (int i = k - 1; i <= start + 1; ++i) j[i] *= 1e-260;
    }
  }
  // normalization: J_0 + 2 sum_{k even >= 2} J_k = 1
  double norm = j[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0 * j[k];
  for (int k = 0; k <= kmax; ++k) out[k] = j[k] / norm;
  return out;
}

cxd JacobiAngerTable::eval(double theta) const {
  cxd acc = 0.0;
  for (int k = -K; k <= K; ++k)
    acc += coeffs[k + K] * std::polar(1.0, k * theta);
  return acc;
}

JacobiAngerTable jacobi_anger(double t, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw DomainError("jacobi_anger: eps must lie in (0, 1)");
  if (t < 0.0) throw DomainError("jacobi_anger: t must be >= 0");
  JacobiAngerTable table;
  table.t = t;
  table.eps = eps;
  if (t == 0.0) {
    table.K = 0;
    table.coeffs = {cxd(1.0, 0.0) / (1.0 + eps / 2.0)};
    return table;
  }
  const int kbig = static_cast<int>(std::ceil(t)) + 64 +
                   static_cast<int>(12.0 * std::cbrt(t)) +
                   static_cast<int>(2.0 * std::log10(1.0 / eps));
  auto js = bessel_j_table(t, kbig);
  std::vector<double> tail(kbig + 2, 0.0);
  for (int k = kbig; k >= 0; --k) tail[k] = tail[k + 1] + std::abs(js[k]);
  int K = -1;
  for (int k = 0; k <= kbig; ++k) {
    if (2.0 * tail[k + 1] <= eps / 2.0) {
      K = k;
      break;
    }
  }
  if (K < 0) throw NumericalError("jacobi_anger: truncation search failed");
  table.K = K;
  table.coeffs.resize(2 * K + 1);
  const double scale = 1.0 / (1.0 + eps / 2.0);
  static const cxd ipow[4] = {cxd(1, 0), cxd(0, -1), cxd(-1, 0), cxd(0, 1)};
  for (int k = -K; k <= K; ++k) {
    int mod = ((k % 4) + 4) % 4;  // (-i)^k for negative k via periodicity
    double jk = js[std::abs(k)];
    if (k < 0 && (std::abs(k) & 1)) jk = -jk;  // J_{-k} = (-1)^k J_k
    table.coeffs[k + K] = ipow[mod] * jk * scale;
  }
  return table;
}

// ---------------------------------------------------------------------------
// Phase cache
// ---------------------------------------------------------------------------

bool PhaseCache::Key::operator<(const Key& o) const {
  if (hash != o.hash) return hash < o.hash;
  if (degree != o.degree) return degree < o.degree;
  return tol < o.tol;
}

PhaseCache::PhaseCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    Key k;
    if (!(ss >> k.hash >> k.degree >> k.tol)) continue;
    std::vector<double> vs;
    double v;
    while (ss >> v) vs.push_back(v);
    if (!vs.empty()) records_[k] = std::move(vs);
  }
}

std::optional<std::vector<double>> PhaseCache::lookup(const std::string& hash,
                                                      int degree,
                                                      double tol) const {
  auto it = records_.find(Key{hash, degree, tol});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void PhaseCache::store(const std::string& hash, int degree, double tol,
                       const std::vector<double>& values) {
  Key k{hash, degree, tol};
  if (records_.count(k)) return;
  records_[k] = values;
  std::ofstream out(path_, std::ios::app);
  char buf[64];
  out << hash << ' ' << degree << ' ';
  std::snprintf(buf, sizeof buf, "%.17g", tol);
  out << buf;
  for (double v : values) {
    std::snprintf(buf, sizeof buf, " %.17g", v);
    out << buf;
  }
  out << '\n';
}

std::string PhaseCache::hash_doubles(const std::vector<double>& vs,
                                     const std::string& salt) {
  // FNV-1a over the 17-digit decimal forms: stable and deterministic.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const char* s) {
    while (*s) {
      h ^= static_cast<unsigned char>(*s++);
      h *= 1099511628211ull;
    }
  };
  mix(salt.c_str());
  char buf[64];
  for (double v : vs) {
    std::snprintf(buf, sizeof buf, "%.17g|", v);
    mix(buf);
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bbenc
