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

#include "bbenc/qsp.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

namespace bbenc {

namespace {

using M2 = std::array<cxd, 4>;  // row-major 2x2

inline M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

inline M2 wmat(double x) {
  double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  return {cxd(x, 0), cxd(0, s), cxd(0, s), cxd(x, 0)};
}

inline M2 ez(double phi) {
  return {std::polar(1.0, phi), 0.0, 0.0, std::polar(1.0, -phi)};
}

// W-convention value: Re <0| e^{i p0 Z} prod_j W(x) e^{i pj Z} |0>.
// Gradient w.r.t. every full phase is filled when grad != nullptr.
double eval_w(double x, const std::vector<double>& full, double* grad) {
  const int d = static_cast<int>(full.size()) - 1;
  const M2 w = wmat(x);
  if (grad == nullptr) {
    M2 m = ez(full[0]);
    for (int j = 1; j <= d; ++j) m = mul(mul(m, w), ez(full[j]));
    return m[0].real();
  }
  // prefix[j] = E_0 W E_1 ... W E_j ; suffix[j] = W E_{j+1} ... W E_d
  std::vector<M2> prefix(d + 1), suffix(d + 1);
  prefix[0] = ez(full[0]);
  for (int j = 1; j <= d; ++j) prefix[j] = mul(mul(prefix[j - 1], w), ez(full[j]));
  suffix[d] = {1.0, 0.0, 0.0, 1.0};
  for (int j = d - 1; j >= 0; --j)
    suffix[j] = mul(mul(w, ez(full[j + 1])), suffix[j + 1]);
  // dM/dp_j = prefix[j] (iZ) suffix[j]
  for (int j = 0; j <= d; ++j) {
    // (prefix * iZ)_{0k}: multiply columns by (i, -i)
    cxd a = prefix[j][0] * cxd(0, 1);
    cxd b = prefix[j][1] * cxd(0, -1);
    grad[j] = (a * suffix[j][0] + b * suffix[j][2]).real();
  }
  return mul(prefix[d], suffix[d])[0].real();  // suffix[d] = I
}

struct Objective {
  const std::vector<double>& nodes;
  const std::vector<double>& targets;
  int d;

  // z holds the reduced variables (first half); the canonical pi/4 end
  // offset is part of the parameterization.
  std::vector<double> full_of(const std::vector<double>& z) const {
    std::vector<double> full(d + 1, 0.0);
    int half = d / 2;
    for (int j = 0; j <= half; ++j) {
      full[j] = z[j];
      full[d - j] = z[j];
    }
    full[0] += kPi / 4.0;
    if (d > 0) full[d] += kPi / 4.0;
    return full;
  }

  double value_grad(const std::vector<double>& z, std::vector<double>& gz) const {
    std::vector<double> full = full_of(z);
    int half = d / 2;
    gz.assign(half + 1, 0.0);
    std::vector<double> gfull(d + 1);
    double f = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      double v = eval_w(nodes[k], full, gfull.data());
      double r = v - targets[k];
      f += r * r;
      for (int j = 0; j <= half; ++j) {
        double g = gfull[j];
        if (d - j != j) g += gfull[d - j];
        gz[j] += 2.0 * r * g;
      }
    }
    return f;
  }

  double max_residual(const std::vector<double>& z) const {
    std::vector<double> full = full_of(z);
    double m = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      m = std::max(m, std::abs(eval_w(nodes[k], full, nullptr) - targets[k]));
    return m;
  }
};

// Residuals and Jacobian of the square node system.
void residual_jacobian(const Objective& obj, const std::vector<double>& z,
                       Eigen::VectorXd& r, Eigen::MatrixXd& jac) {
  const int half = obj.d / 2;
  const int m = static_cast<int>(obj.nodes.size());
  std::vector<double> full = obj.full_of(z);
  std::vector<double> gfull(obj.d + 1);
  r.resize(m);
  jac.resize(m, half + 1);
  for (int k = 0; k < m; ++k) {
    r(k) = eval_w(obj.nodes[k], full, gfull.data()) - obj.targets[k];
    for (int j = 0; j <= half; ++j) {
      double g = gfull[j];
      if (obj.d - j != j) g += gfull[obj.d - j];
      jac(k, j) = g;
    }
  }
}

// Levenberg-Marquardt on the node residuals; deterministic.
bool solve_lm(const Objective& obj, std::vector<double>& z, int max_iter) {
  const int n = static_cast<int>(z.size());
  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  residual_jacobian(obj, z, r, jac);
  double f = r.squaredNorm();
  double lambda = 1e-3;
  for (int iter = 0; iter < max_iter; ++iter) {
    if (r.cwiseAbs().maxCoeff() < 1e-14) return true;
    Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::VectorXd jtr = jac.transpose() * r;
    bool stepped = false;
    for (int attempt = 0; attempt < 32; ++attempt) {
      Eigen::MatrixXd a = jtj;
      a.diagonal().array() += lambda;
      Eigen::VectorXd delta = a.ldlt().solve(-jtr);
      std::vector<double> znew(n);
      for (int k = 0; k < n; ++k) znew[k] = z[k] + delta(k);
      Eigen::VectorXd rnew;
      Eigen::MatrixXd jnew;
      residual_jacobian(obj, znew, rnew, jnew);
      double fnew = rnew.squaredNorm();
      if (fnew < f) {
        z = znew;
        r = rnew;
        jac = jnew;
        f = fnew;
        lambda = std::max(lambda * 0.35, 1e-14);
        stepped = true;
        break;
      }
      lambda *= 8.0;
      if (lambda > 1e12) break;
    }
    if (!stepped) return r.cwiseAbs().maxCoeff() < 1e-12;
  }
  return r.cwiseAbs().maxCoeff() < 1e-12;
}

// Bridge from the W-convention solution to the QSVT figure-circuit
// convention: +pi/4 at the ends, +pi/2 at even interior slots, +3pi/2 at
// odd interior slots (symmetric because d is even).
std::vector<double> qsvt_bridge(const std::vector<double>& w) {
  const int d = static_cast<int>(w.size()) - 1;
  std::vector<double> out = w;
  if (d == 0) return out;
  out[0] += kPi / 4.0;
  out[d] += kPi / 4.0;
  for (int j = 1; j < d; ++j) out[j] += (j % 2 == 0) ? kPi / 2.0 : 1.5 * kPi;
  return out;
}

}  // namespace

cxd qsvt_scalar_eval(double x, const std::vector<double>& phases) {
  const int d = static_cast<int>(phases.size()) - 1;
  const M2 w = wmat(x);
  const M2 wd = {std::conj(w[0]), std::conj(w[2]), std::conj(w[1]),
                 std::conj(w[3])};
  cxd out = 0.0;
  for (int sgn : {+1, -1}) {
    M2 m = ez(sgn * phases[0]);
    for (int j = 1; j <= d; ++j)
      m = mul(ez(sgn * phases[j]), mul(j % 2 == 1 ? w : wd, m));
    out += 0.5 * m[0];
  }
  return out;
}

cxd qetu_scalar_eval(double a, double tau, const std::vector<double>& xphases) {
  const int d = static_cast<int>(xphases.size()) - 1;
  auto ex = [](double p) -> M2 {
    return {cxd(std::cos(p), 0), cxd(0, std::sin(p)), cxd(0, std::sin(p)),
            cxd(std::cos(p), 0)};
  };
  const M2 cu = {1.0, 0.0, 0.0, std::polar(1.0, -tau * a)};
  const M2 cud = {1.0, 0.0, 0.0, std::polar(1.0, tau * a)};
  M2 m = ex(xphases[0]);
  for (int j = 1; j <= d; ++j)
    m = mul(ex(xphases[j]), mul(j % 2 == 1 ? cu : cud, m));
  return m[0];
}

SymmetricPhases qsp_phases_symmetric(const ChebyshevSeries& series, double tol,
                                     PhaseCache* cache) {
  if (!series.qsp_ready())
    throw DomainError("qsp_phases_symmetric: series sup-norm exceeds 1");
  const int d = series.degree();
  if (series.parity == Parity::Odd || (d % 2) != 0)
    throw ParityError("qsp_phases_symmetric: series must be even");
  for (int j = 1; j < static_cast<int>(series.coeffs.size()); j += 2)
    if (series.coeffs[j] != 0.0)
      throw ParityError("qsp_phases_symmetric: odd coefficient present");

  std::string hash;
  if (cache) {
    hash = PhaseCache::hash_doubles(series.coeffs, "qsvt-symmetric");
    if (auto hit = cache->lookup(hash, d, tol)) {
      SymmetricPhases p;
      p.phases = *hit;
      return p;
    }
  }

  const int half = d / 2;
  const int nnodes = half + 1;
  std::vector<double> nodes(nnodes), targets(nnodes);
  for (int k = 1; k <= nnodes; ++k) {
    nodes[k - 1] = std::cos((2.0 * k - 1.0) * kPi / (4.0 * nnodes));
    targets[k - 1] = series.eval(nodes[k - 1]);
  }
  Objective obj{nodes, targets, d};

  std::mt19937 seed_rng(12345);
  std::normal_distribution<double> nd(0.0, 0.15);
  std::vector<double> best;
  double best_res = 1e300;
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::vector<double> z(half + 1, 0.0);
    if (attempt > 0)
      for (double& v : z) v = nd(seed_rng);
    solve_lm(obj, z, 500);
    double res = obj.max_residual(z);
    if (res < best_res) {
      best_res = res;
      best = z;
    }
    if (best_res <= std::min(tol, 1e-13)) break;
  }
  if (best_res > tol) {
    std::ostringstream msg;
    msg << "qsp_phases_symmetric: solver did not converge (residual " << best_res
        << " > tol " << tol << " at degree " << d << ")";
    throw SolverError(msg.str());
  }

  SymmetricPhases out;
  out.phases = qsvt_bridge(obj.full_of(best));
  // enforce exact symmetry
  for (int j = 0; j <= d / 2; ++j) out.phases[d - j] = out.phases[j];

  // Independent confirmation through the circuit-convention evaluation at
  // 2d fresh Chebyshev nodes.
  const int m = std::max(2 * d, 4);
  double check = 0.0;
  for (int k = 1; k <= m; ++k) {
    double x = std::cos((2.0 * k - 1.0) * kPi / (2.0 * m));
    check = std::max(check,
                     std::abs(qsvt_scalar_eval(x, out.phases) - series.eval(x)));
  }
  out.node_residual = check;
  if (check > std::max(tol, 10.0 * best_res)) {
    std::ostringstream msg;
    msg << "qsp_phases_symmetric: circuit-convention check failed (residual "
        << check << ")";
    throw SolverError(msg.str());
  }
  if (cache) cache->store(hash, d, tol, out.phases);
  return out;
}

SymmetricPhases qetu_shift(const SymmetricPhases& p) {
  SymmetricPhases out = p;
  const int d = p.degree();
  for (int j = 0; j <= d; ++j)
    out.phases[j] += (j == 0 || j == d) ? kPi / 4.0 : kPi / 2.0;
  return out;
}

SymmetricPhases qetu_phases_for_series(const SymmetricPhases& qsvt_phases) {
  // Undo the interior convention offset (odd interior slots sit 3pi/2
  // instead of pi/2 above the base solution), then flip the middle slot by
  // pi when d/2 is odd to absorb the (-1)^{d/2} of the X-rotation circuit.
  SymmetricPhases out = qsvt_phases;
  const int d = out.degree();
  if (d == 0) return out;
  for (int j = 1; j < d; ++j)
    if (j % 2 == 1) out.phases[j] -= kPi;
  if ((d / 2) % 2 == 1) out.phases[d / 2] += kPi;
  return out;
}

}  // namespace bbenc
