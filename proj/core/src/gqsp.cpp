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

#include "bbenc/gqsp.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bbenc {

namespace {

using mpf = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                          boost::multiprecision::et_off>;

struct mpc {
  mpf re, im;
  mpc() : re(0), im(0) {}
  mpc(mpf r, mpf i) : re(std::move(r)), im(std::move(i)) {}
  explicit mpc(const cxd& z) : re(z.real()), im(z.imag()) {}
};

inline mpc operator+(const mpc& a, const mpc& b) { return {a.re + b.re, a.im + b.im}; }
inline mpc operator-(const mpc& a, const mpc& b) { return {a.re - b.re, a.im - b.im}; }
inline mpc operator*(const mpc& a, const mpc& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline mpc operator*(const mpf& s, const mpc& a) { return {s * a.re, s * a.im}; }
inline mpf norm2(const mpc& a) { return a.re * a.re + a.im * a.im; }
inline mpf absval(const mpc& a) { return sqrt(norm2(a)); }

// In-place radix-2 FFT; sign = +1 evaluates sum x_m e^{+i 2pi jm/N} (no 1/N).
void mp_fft(std::vector<mpc>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j |= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const mpf pi = boost::math::constants::pi<mpf>();
  for (std::size_t len = 2; len <= n; len <<= 1) {
    mpf ang = sign * 2 * pi / static_cast<double>(len);
    mpc wl(cos(ang), sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      mpc w(mpf(1), mpf(0));
      for (std::size_t k = i; k < i + len / 2; ++k) {
        mpc u = a[k];
        mpc v = a[k + len / 2] * w;
        a[k] = u + v;
        a[k + len / 2] = u - v;
        w = w * wl;
      }
    }
  }
}

// Spectral factor of A(theta) = 1 - |P(theta)|^2 with support [0, 2K]
// (min-phase), computed by the FFT cepstral method at the current mpfr
// precision. Returns the tail mass beyond degree 2K as a diagnostic.
std::vector<mpc> cepstral_factor(const std::vector<cxd>& coeffs, int K,
                                 std::size_t n_grid, double& tail, double& amin) {
  const std::size_t N = n_grid;
  std::vector<mpc> arr(N);
  for (int k = -K; k <= K; ++k) {
    std::size_t idx = static_cast<std::size_t>(((k % static_cast<int>(N)) + N)) % N;
    arr[idx] = mpc(coeffs[k + K]);
  }
  mp_fft(arr, +1);  // P(theta_j)
  std::vector<mpf> a_vals(N);
  mpf amin_mp = 2;
  for (std::size_t j = 0; j < N; ++j) {
    a_vals[j] = 1 - norm2(arr[j]);
    amin_mp = (std::min)(amin_mp, a_vals[j]);
  }
  amin = amin_mp.convert_to<double>();
  if (amin_mp <= 0)
    throw DomainError(
        "gqsp completion: 1 - |P|^2 negative on the unit circle (input error)");
  std::vector<mpc> lv(N);
  for (std::size_t j = 0; j < N; ++j) lv[j] = mpc(log(a_vals[j]), mpf(0));
  mp_fft(lv, -1);
  const mpf invn = mpf(1) / static_cast<double>(N);
  std::vector<mpc> g(N);
  g[0] = (invn / 2) * lv[0];
  for (std::size_t m = 1; m < N / 2; ++m) g[m] = invn * lv[m];
  g[N / 2] = (invn / 2) * lv[N / 2];
  mp_fft(g, +1);
  for (std::size_t j = 0; j < N; ++j) {
    mpf e = exp(g[j].re);
    mpf cs = cos(g[j].im), sn = sin(g[j].im);
    g[j] = mpc(e * cs, e * sn);
  }
  mp_fft(g, -1);
  std::vector<mpc> q(2 * K + 1);
  mpf qmax = 0;
  for (int m = 0; m <= 2 * K; ++m) {
    q[m] = invn * g[m];
    qmax = (std::max)(qmax, absval(q[m]));
  }
  mpf t = 0;
  for (std::size_t m = 2 * K + 1; m < N - static_cast<std::size_t>(K); ++m)
    t = (std::max)(t, absval(invn * g[m]));
  tail = (qmax > 0 ? t / qmax : t).convert_to<double>();
  return q;
}

// Root-finding completion in double precision for small degree.
std::vector<mpc> root_factor(const std::vector<cxd>& coeffs, int K, bool& ok) {
  ok = false;
  const int deg = 4 * K;
  std::vector<cxd> a(deg + 1, 0.0);
  a[2 * K] = 1.0;
  for (int m = -2 * K; m <= 2 * K; ++m) {
    cxd s = 0.0;
    for (int k = -K; k <= K; ++k) {
      int km = k - m;
      if (km >= -K && km <= K) s += coeffs[k + K] * std::conj(coeffs[km + K]);
    }
    a[m + 2 * K] -= s;
  }
  // strip negligible ends; trailing strips correspond to roots at zero
  double amax = 0.0;
  for (const cxd& v : a) amax = std::max(amax, std::abs(v));
  int lo = 0, hi = deg;
  while (lo < hi && std::abs(a[lo]) < 1e-15 * amax) ++lo;
  while (hi > lo && std::abs(a[hi]) < 1e-15 * amax) --hi;
  const int m = hi - lo;
  if (m < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i) comp(i, m - 1) = -a[lo + i] / a[hi];
  for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  if (es.info() != Eigen::Success) return {};
  std::vector<cxd> roots(es.eigenvalues().data(),
                         es.eigenvalues().data() + m);
  for (int i = 0; i < lo; ++i) roots.push_back(0.0);  // stripped trailing zeros
  std::sort(roots.begin(), roots.end(),
            [](const cxd& x, const cxd& y) { return std::abs(x) < std::abs(y); });
  if (static_cast<int>(roots.size()) < 2 * K) return {};
  roots.resize(2 * K);
  // expand monic polynomial with these roots
  std::vector<cxd> q(2 * K + 1, 0.0);
  q[0] = 1.0;
  for (int i = 0; i < 2 * K; ++i) {
    for (int j = i + 1; j >= 1; --j) q[j] = q[j - 1] - roots[i] * q[j];
    q[0] = -roots[i] * q[0];
  }
  std::reverse(q.begin(), q.end());  // lowest degree first
  // scale so |Q|^2 matches 1 - |P|^2 in the mean over a grid
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 512; ++i) {
    double th = 2.0 * kPi * i / 512;
    cxd pv = 0.0, qv = 0.0;
    for (int k = -K; k <= K; ++k) pv += coeffs[k + K] * std::polar(1.0, k * th);
    for (int j = 0; j <= 2 * K; ++j) qv += q[j] * std::polar(1.0, j * th);
    num += 1.0 - std::norm(pv);
    den += std::norm(qv);
  }
  if (den <= 0.0 || num <= 0.0) return {};
  double s = std::sqrt(num / den);
  std::vector<mpc> out(2 * K + 1);
  for (int j = 0; j <= 2 * K; ++j) out[j] = mpc(q[j] * s);
  ok = true;
  return out;
}

struct PeelResult {
  std::vector<double> thetas, phis;
  double gamma = 0.0;
  double max_drop = 0.0;
};

// Layer peel in the current mpfr precision. P has window [-K, K] (index
// k + K); Q is the z^{-K}-shifted factor with the same window.
PeelResult peel(const std::vector<cxd>& coeffs, const std::vector<mpc>& q0,
                const std::vector<int>& dirs) {
  const int d = static_cast<int>(dirs.size());
  std::vector<mpc> P(coeffs.size()), Q = q0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) P[i] = mpc(coeffs[i]);
  PeelResult out;
  out.thetas.assign(d + 1, 0.0);
  out.phis.assign(d + 1, 0.0);
  mpf maxdrop = 0;
  for (int j = d; j >= 1; --j) {
    const int s = dirs[j - 1];
    const mpc a = s > 0 ? P.back() : P.front();
    const mpc b = s > 0 ? Q.back() : Q.front();
    mpf aa = absval(a), ab = absval(b);
    mpf tj, pj;
    if (aa == 0 && ab == 0) {
      // Degenerate edge (monomial-like input): swap the roles of P and Q.
      tj = boost::math::constants::half_pi<mpf>();
      pj = 0;
    } else {
      tj = atan2(ab, aa);
      pj = (aa > 0 && ab > 0) ? atan2(a.im, a.re) - atan2(b.im, b.re) : mpf(0);
    }
    out.thetas[j] = tj.convert_to<double>();
    out.phis[j] = pj.convert_to<double>();
    mpc em(cos(pj), -sin(pj));
    mpf ct = cos(tj), st = sin(tj);
    const std::size_t len = P.size();
    std::vector<mpc> newPz(len), newQ(len);
    for (std::size_t i = 0; i < len; ++i) {
      mpc ep = em * P[i];
      newPz[i] = ct * ep + st * Q[i];
      newQ[i] = st * ep - ct * Q[i];
    }
    if (s > 0) {
      maxdrop = (std::max)(maxdrop, absval(newPz.front()));
      maxdrop = (std::max)(maxdrop, absval(newQ.back()));
      P.assign(newPz.begin() + 1, newPz.end());
      Q.assign(newQ.begin(), newQ.end() - 1);
    } else {
      maxdrop = (std::max)(maxdrop, absval(newPz.back()));
      maxdrop = (std::max)(maxdrop, absval(newQ.front()));
      P.assign(newPz.begin(), newPz.end() - 1);
      Q.assign(newQ.begin() + 1, newQ.end());
    }
  }
  const mpc p0 = P[0], q0f = Q[0];
  mpf gm = absval(q0f) > 0 ? atan2(q0f.im, q0f.re) : mpf(0);
  out.gamma = gm.convert_to<double>();
  out.thetas[0] = atan2(absval(q0f), absval(p0)).convert_to<double>();
  out.phis[0] = (absval(p0) > 0 ? atan2(p0.im, p0.re) - gm : mpf(0)).convert_to<double>();
  out.max_drop = maxdrop.convert_to<double>();
  return out;
}

}  // namespace

Eigen::Matrix2cd gqsp_rotation(double theta, double phi, double gamma) {
  Eigen::Matrix2cd r;
  r << std::polar(1.0, gamma + phi) * std::cos(theta),
      std::polar(1.0, phi) * std::sin(theta),
      std::polar(1.0, gamma) * std::sin(theta), -std::cos(theta);
  return r;
}

cxd gqsp_eval(const GqspPhases& p, double theta) {
  Eigen::Matrix2cd m = gqsp_rotation(p.thetas[0], p.phis[0], p.gamma);
  for (std::size_t j = 1; j < p.thetas.size(); ++j) {
    cxd z = std::polar(1.0, p.dirs[j - 1] > 0 ? theta : -theta);
    Eigen::Matrix2cd cz;
    cz << z, 0.0, 0.0, 1.0;
    m = gqsp_rotation(p.thetas[j], p.phis[j], 0.0) * cz * m;
  }
  return m(0, 0);
}

GqspPhases gqsp_phases_laurent(const std::vector<cxd>& coeffs, int K,
                               double target_residual, PhaseCache* cache) {
  if (static_cast<int>(coeffs.size()) != 2 * K + 1)
    throw DomainError("gqsp_phases_laurent: coefficient window size mismatch");
  const int d = 2 * K;

  GqspPhases out;
  out.k_min = -K;
  out.k_max = K;
  out.dirs.assign(d, 1);
  for (int j = 0; j < K; ++j) out.dirs[j] = -1;

  auto eval_target = [&](double th) {
    cxd acc = 0.0;
    for (int k = -K; k <= K; ++k) acc += coeffs[k + K] * std::polar(1.0, k * th);
    return acc;
  };

  std::string hash;
  if (cache) {
    std::vector<double> flat;
    flat.reserve(2 * coeffs.size());
    for (const cxd& c : coeffs) {
      flat.push_back(c.real());
      flat.push_back(c.imag());
    }
    hash = PhaseCache::hash_doubles(flat, "gqsp-laurent");
    if (auto hit = cache->lookup(hash, d, target_residual)) {
      if (hit->size() == 2 * (d + 1) + 2) {
        out.thetas.assign(hit->begin(), hit->begin() + d + 1);
        out.phis.assign(hit->begin() + d + 1, hit->begin() + 2 * (d + 1));
        out.gamma = (*hit)[2 * (d + 1)];
        out.grid_residual = (*hit)[2 * (d + 1) + 1];
        return out;
      }
    }
  }

  // certify |P| <= 1 on the unit circle
  double sup2 = 0.0, min2 = 2.0;
  for (int i = 0; i < 4096; ++i) {
    double n2 = std::norm(eval_target(2.0 * kPi * i / 4096));
    sup2 = std::max(sup2, n2);
    min2 = std::min(min2, n2);
  }
  if (sup2 > 1.0 + 1e-12)
    throw DomainError("gqsp_phases_laurent: |P| exceeds 1 on the unit circle");

  const double target = std::max(target_residual, 1e-13);
  auto verify = [&](const PeelResult& pr) {
    GqspPhases cand = out;
    cand.thetas = pr.thetas;
    cand.phis = pr.phis;
    cand.gamma = pr.gamma;
    double worst = 0.0;
    for (int i = 0; i < 4096; ++i) {
      double th = 2.0 * kPi * i / 4096;
      worst = std::max(worst, std::abs(gqsp_eval(cand, th) - eval_target(th)));
    }
    cand.grid_residual = worst;
    return cand;
  };

  unsigned digits =
      static_cast<unsigned>((d + 140 + std::log2(1.0 / target)) * 0.302) + 8;
  mpf::default_precision(digits);

  // Exactly unimodular inputs (monomials): the completion is zero.
  if (1.0 - min2 <= 1e-13) {
    std::vector<mpc> qzero(2 * K + 1);
    auto pr = peel(coeffs, qzero, out.dirs);
    auto cand = verify(pr);
    if (cand.grid_residual <= target) return cand;
    throw SolverError("gqsp_phases_laurent: unimodular special case failed");
  }

  // Fast route: double-precision root completion at small degree.
  if (d <= 64) {
    bool ok = false;
    auto q = root_factor(coeffs, K, ok);
    if (ok) {
      auto pr = peel(coeffs, q, out.dirs);
      auto cand = verify(pr);
      if (cand.grid_residual <= target) {
        if (cache) {
          std::vector<double> rec = cand.thetas;
          rec.insert(rec.end(), cand.phis.begin(), cand.phis.end());
          rec.push_back(cand.gamma);
          rec.push_back(cand.grid_residual);
          cache->store(hash, d, target_residual, rec);
        }
        return cand;
      }
    }
  }

  // Extended-precision spectral factorization + peel, escalating the FFT
  // grid (and precision) until the certification passes.
  std::size_t n_grid = 1;
  while (n_grid < std::max<std::size_t>(
             4096, std::max<std::size_t>(8 * (2 * K + 1),
                                          static_cast<std::size_t>(1.6 * digits * K))))
    n_grid <<= 1;
  std::string diag;
  for (int attempt = 0; attempt < 3; ++attempt) {
    mpf::default_precision(digits);
    double tail = 0.0, amin = 0.0;
    auto q = cepstral_factor(coeffs, K, n_grid, tail, amin);
    if (tail > std::pow(10.0, -0.85 * static_cast<double>(digits))) {
      n_grid <<= 2;
      std::ostringstream d1;
      d1 << "tail " << tail << " at N " << (n_grid >> 2) << "; ";
      diag += d1.str();
      continue;
    }
    auto pr = peel(coeffs, q, out.dirs);
    auto cand = verify(pr);
    if (cand.grid_residual <= target) {
      if (cache) {
        std::vector<double> rec = cand.thetas;
        rec.insert(rec.end(), cand.phis.begin(), cand.phis.end());
        rec.push_back(cand.gamma);
        rec.push_back(cand.grid_residual);
        cache->store(hash, d, target_residual, rec);
      }
      return cand;
    }
    std::ostringstream d2;
    d2 << "residual " << cand.grid_residual << " drop " << pr.max_drop
       << " at digits " << digits << " N " << n_grid << "; ";
    diag += d2.str();
    digits = digits * 3 / 2;
    n_grid <<= 1;
  }
  throw SolverError("gqsp_phases_laurent: certification failed after retries (" +
                    diag + ")");
}

GqspPhases gqsp_phases(const JacobiAngerTable& table, double target_residual,
                       PhaseCache* cache) {
  return gqsp_phases_laurent(table.coeffs, table.K, target_residual, cache);
}

}  // namespace bbenc
