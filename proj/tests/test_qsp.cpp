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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bbenc/qsp.hpp"

using namespace bbenc;

namespace {

std::mt19937 rng(99);

ChebyshevSeries random_even_series(int d, double headroom) {
  std::normal_distribution<double> nd(0.0, 1.0);
  ChebyshevSeries s;
  s.parity = Parity::Even;
  s.coeffs.assign(d + 1, 0.0);
  for (int j = 0; j <= d; j += 2) s.coeffs[j] = nd(rng) * std::pow(0.72, j / 2);
  double sup = s.sup_norm();
  for (double& c : s.coeffs) c *= headroom / sup;
  return s;
}

}  // namespace

TEST_CASE("constant series gives block 1") {
  ChebyshevSeries s;
  s.parity = Parity::Even;
  s.coeffs = {1.0};
  auto p = qsp_phases_symmetric(s, 1e-12);
  CHECK(p.degree() == 0);
  CHECK(std::abs(qsvt_scalar_eval(0.37, p.phases) - 1.0) < 1e-12);
  CHECK(std::abs(qsvt_scalar_eval(-0.9, p.phases) - 1.0) < 1e-12);
}

TEST_CASE("T2 series: circuit evaluation equals 2x^2 - 1") {
  ChebyshevSeries s;
  s.parity = Parity::Even;
  s.coeffs = {0.0, 0.0, 1.0};
  auto p = qsp_phases_symmetric(s, 1e-12);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  for (int i = 0; i < 24; ++i) {
    double x = ux(rng);
    CHECK(std::abs(qsvt_scalar_eval(x, p.phases) - (2 * x * x - 1)) < 1e-12);
  }
}

TEST_CASE("phase symmetry is exact") {
  auto s = random_even_series(12, 0.85);
  auto p = qsp_phases_symmetric(s, 1e-11);
  int d = p.degree();
  for (int j = 0; j <= d; ++j) CHECK(p.phases[j] == p.phases[d - j]);
}

TEST_CASE("solver reaches 1e-10 residual up to degree 64") {
  for (int d : {8, 16, 32, 48, 64}) {
    auto s = random_even_series(d, 0.9);
    auto p = qsp_phases_symmetric(s, 1e-10);
    CHECK(p.node_residual <= 1e-10);
    // independent confirmation at fresh random points, 10x tolerance
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    for (int i = 0; i < 12; ++i) {
      double x = ux(rng);
      CHECK(std::abs(qsvt_scalar_eval(x, p.phases) - s.eval(x)) < 1e-9);
    }
  }
}

TEST_CASE("degree-16 target solves to 1e-10") {
  auto s = random_even_series(16, 0.92);
  auto p = qsp_phases_symmetric(s, 1e-10);
  CHECK(p.node_residual <= 1e-10);
}

TEST_CASE("qetu_shift rule") {
  SymmetricPhases zero;
  zero.phases = {0.0, 0.0, 0.0};
  auto sh = qetu_shift(zero);
  CHECK(sh.phases[0] == doctest::Approx(kPi / 4));
  CHECK(sh.phases[1] == doctest::Approx(kPi / 2));
  CHECK(sh.phases[2] == doctest::Approx(kPi / 4));

  SymmetricPhases z4;
  z4.phases = {0.1, 0.2, 0.3, 0.2, 0.1};
  auto s4 = qetu_shift(z4);
  CHECK(s4.phases[0] == doctest::Approx(0.1 + kPi / 4));
  CHECK(s4.phases[1] == doctest::Approx(0.2 + kPi / 2));
  CHECK(s4.phases[2] == doctest::Approx(0.3 + kPi / 2));
  CHECK(s4.phases[4] == doctest::Approx(0.1 + kPi / 4));
}

TEST_CASE("QETU circuit conformance across degrees") {
  // The QETU scalar circuit with the adapted phases must reproduce
  // F(cos(tau a / 2)) for eigenvalues a of the shifted generator.
  std::uniform_real_distribution<double> ua(0.0, kPi);
  for (int d : {2, 4, 6, 8, 14}) {
    auto s = random_even_series(d, 0.88);
    auto qsvt = qsp_phases_symmetric(s, 1e-11);
    auto qetu = qetu_phases_for_series(qsvt);
    double tau = 2.0;
    for (int i = 0; i < 16; ++i) {
      double a = ua(rng);
      cxd block = qetu_scalar_eval(a, tau, qetu.phases);
      double expect = s.eval(std::cos(tau * a / 2.0));
      CHECK(std::abs(block - expect) < 1e-9);
    }
  }
}

TEST_CASE("non-QSP-ready and odd series are rejected") {
  ChebyshevSeries big;
  big.parity = Parity::Even;
  big.coeffs = {1.2};
  CHECK_THROWS_AS(qsp_phases_symmetric(big, 1e-10), DomainError);

  ChebyshevSeries odd;
  odd.parity = Parity::Odd;
  odd.coeffs = {0.0, 0.9};
  CHECK_THROWS_AS(qsp_phases_symmetric(odd, 1e-10), ParityError);
}
