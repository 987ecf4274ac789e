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

#include <random>

#include "bbenc/simulate.hpp"
#include "bbenc/synth.hpp"

using namespace bbenc;

namespace {

std::mt19937 rng(2024);

std::vector<double> random_phases(int n) {
  std::uniform_real_distribution<double> dist(-2.5, 2.5);
  std::vector<double> v(std::size_t{1} << n);
  for (double& p : v) p = dist(rng);
  return v;
}

Eigen::MatrixXcd diag_matrix(const std::vector<double>& phases) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(phases.size(), phases.size());
  for (std::size_t k = 0; k < phases.size(); ++k)
    m(k, k) = std::polar(1.0, phases[k]);
  return m;
}

}  // namespace

TEST_CASE("diagonal synthesis: one qubit") {
  std::vector<double> ph{0.7, -0.4};
  auto c = synthesize_diagonal_unitary(ph);
  auto u = unitary_of(c);
  CHECK((u - diag_matrix(ph)).cwiseAbs().maxCoeff() < 1e-14);
  auto gc = count_gates(c);
  CHECK(gc.rotations <= 1);
  CHECK(gc.cnots == 0);
}

TEST_CASE("diagonal synthesis: bounds and exactness on random vectors") {
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 34; ++trial) {
      auto ph = random_phases(n);
      auto c = synthesize_diagonal_unitary(ph);
      auto gc = count_gates(c);
      CHECK(gc.rotations <= (1 << n) - 1);
      CHECK(gc.cnots <= std::max(0, (1 << n) - 2));
      auto u = unitary_of(c);
      CHECK((u - diag_matrix(ph)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("diagonal synthesis: even function of phi kills half the terms") {
  // even in phi <=> symmetric under full bit flip; only even-size subsets remain
  int n = 4;
  std::vector<double> ph(1 << n);
  for (int k = 0; k < (1 << n); ++k) {
    double x = -1.0 + 2.0 * k / ((1 << n) - 1);
    ph[k] = 0.3 * x * x + 0.1 * x * x * x * x;
  }
  auto c = synthesize_diagonal_unitary(ph);
  auto gc = count_gates(c);
  CHECK(gc.rotations <= (1 << (n - 1)) - 1);
  auto u = unitary_of(c);
  CHECK((u - diag_matrix(ph)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("drop_small_rotations") {
  Circuit c(2);
  c.append(Gate::rz(0, 1e-9));
  c.append(Gate::rx(1, 0.5));
  auto same = drop_small_rotations(c, 0.0);
  CHECK(same.gates.size() == 2);
  auto dropped = drop_small_rotations(c, 1e-8);
  REQUIRE(dropped.gates.size() == 1);
  CHECK(dropped.gates[0].kind == GateKind::Rx);

  // spectral-norm bound on a random diagonal circuit
  auto ph = random_phases(4);
  auto dc = synthesize_diagonal_unitary(ph);
  double tol = 1e-3;
  double dropped_sum = 0.0;
  for (const Gate& g : dc.gates)
    if ((g.kind == GateKind::Rz || g.kind == GateKind::Rx) &&
        std::abs(g.angle) < tol)
      dropped_sum += std::abs(g.angle);
  auto dc2 = drop_small_rotations(dc, tol);
  double dev = spectral_norm(unitary_of(dc) - unitary_of(dc2));
  CHECK(dev <= dropped_sum + 1e-10);
}

TEST_CASE("controlled wrapper") {
  Circuit empty(2);
  auto ce = controlled(empty, 0, true);
  CHECK((unitary_of(ce) - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-15);

  // controlled-RZ against the closed form, both polarities
  for (bool pol : {true, false}) {
    double th = 0.83;
    Circuit rz1(2);
    rz1.append(Gate::rz(1, th));
    auto cc = controlled(rz1, 0, pol);
    auto u = unitary_of(cc);
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Identity(4, 4);
    int off = pol ? 2 : 0;
    expect(off, off) = std::polar(1.0, -th / 2);
    expect(off + 1, off + 1) = std::polar(1.0, th / 2);
    CHECK((u - expect).cwiseAbs().maxCoeff() < 1e-14);

    // transpiled version preserves it and uses only CNOT/RX/RZ
    auto [tc, gc] = transpile(cc);
    CHECK((unitary_of(tc) - expect).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(gc.rotations <= 2);
    CHECK(gc.cnots <= 2);
  }

  // collision check
  Circuit busy(2);
  busy.append(Gate::h(0));
  CHECK_THROWS_AS(controlled(busy, 0, true), StructuralError);
}

TEST_CASE("qft matches the DFT matrix") {
  for (int n = 1; n <= 4; ++n) {
    auto c = qft_circuit(n);
    auto u = unitary_of(c);
    const int dim = 1 << n;
    Eigen::MatrixXcd dft(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        dft(j, k) = std::polar(1.0 / std::sqrt(double(dim)),
                               2.0 * kPi * j * k / dim);
    CHECK((u - dft).cwiseAbs().maxCoeff() < 1e-12);
  }
  // n=1 is H
  auto u1 = unitary_of(qft_circuit(1));
  CHECK(std::abs(u1(1, 1) + 1.0 / std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("qft conjugation of a diagonal is Hermitian with the same spectrum") {
  int n = 3;
  auto f = qft_circuit(n);
  auto fu = unitary_of(f);
  Eigen::VectorXd vals(8);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int i = 0; i < 8; ++i) vals[i] = dist(rng);
  Eigen::MatrixXcd conj = fu.adjoint() * vals.asDiagonal().toDenseMatrix().cast<cxd>() * fu;
  CHECK((conj - conj.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(conj);
  Eigen::VectorXd sorted = vals;
  std::sort(sorted.data(), sorted.data() + 8);
  CHECK((es.eigenvalues() - sorted).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("transpile: H to 3 rotations, Z to 1, merging") {
  Circuit c(1);
  c.append(Gate::h(0));
  auto [tc, gc] = transpile(c);
  CHECK(gc.rotations == 3);
  CHECK(max_diff_up_to_phase(unitary_of(tc), unitary_of(c)) < 1e-14);

  Circuit z(1);
  z.append(Gate::z(0));
  auto [tz, gz] = transpile(z);
  CHECK(gz.rotations == 1);
  CHECK(max_diff_up_to_phase(unitary_of(tz), unitary_of(z)) < 1e-14);

  Circuit two(1);
  two.append(Gate::rz(0, 0.3));
  two.append(Gate::rz(0, 0.4));
  auto [tt, gt] = transpile(two);
  CHECK(gt.rotations == 1);
  CHECK(tt.gates[0].angle == doctest::Approx(0.7));

  Circuit cancel(1);
  cancel.append(Gate::rz(0, 0.3));
  cancel.append(Gate::rz(0, -0.3));
  auto [tc2, gc2] = transpile(cancel);
  CHECK(gc2.rotations == 0);
}

TEST_CASE("transpile preserves unitary and is idempotent") {
  for (int trial = 0; trial < 10; ++trial) {
    Circuit c(3);
    c.append(Gate::h(0));
    c.append(Gate::diagonal_phase({0, 2}, random_phases(2)));
    c.append(Gate::cnot(0, 1));
    Circuit sub(3);
    sub.append(Gate::rz(2, 0.7));
    sub.append(Gate::x(1));
    sub.append(Gate::h(2));
    c.append(Gate::controlled_block(sub, 0, trial % 2 == 0));
    c.append(Gate::z(1));
    c.append(Gate::x(2));

    auto [t1, g1] = transpile(c);
    CHECK(max_diff_up_to_phase(unitary_of(t1), unitary_of(c)) < 1e-10);
    for (const Gate& g : t1.gates) {
      bool ok = g.kind == GateKind::Cnot || g.kind == GateKind::Rx ||
                g.kind == GateKind::Rz || g.kind == GateKind::GlobalPhase;
      CHECK(ok);
    }
    auto [t2, g2] = transpile(t1);
    CHECK(g2.rotations == g1.rotations);
    CHECK(g2.cnots == g1.cnots);
    // exact recount
    auto recount = count_gates(t1);
    CHECK(recount.rotations == g1.rotations);
    CHECK(recount.cnots == g1.cnots);
  }
}

TEST_CASE("transpile: controlled CNOT (Toffoli route)") {
  for (bool pol : {true, false}) {
    Circuit sub(3);
    sub.append(Gate::cnot(1, 2));
    auto cc = controlled(sub, 0, pol);
    auto expect = unitary_of(cc);
    auto [tc, gc] = transpile(cc);
    CHECK((unitary_of(tc) - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("inverse-conjugation peeling keeps controls off the conjugation") {
  // ctrl-[F^dag D F] should lower with F uncontrolled: same CNOT count as
  // ctrl-D plus two F's worth of gates.
  int n = 3;
  auto f = qft_circuit(n - 1).shifted(1, Registers{0, 0, 0, n});
  Circuit sub(n);
  sub.append(f);
  sub.append(Gate::diagonal_phase({1, 2}, {0.1, 0.7, -0.3, 0.2}));
  sub.append(f.inverse());
  auto cc = controlled(sub, 0, true);
  auto [tc, gc] = transpile(cc);
  CHECK(max_diff_up_to_phase(unitary_of(tc), unitary_of(cc)) < 1e-12);

  auto [tf, gf] = transpile(f);
  Circuit just_d(n);
  just_d.append(Gate::diagonal_phase({0, 1, 2}, [] {
    std::vector<double> v(8, 0.0);
    v[4] = 0.1; v[5] = 0.7; v[6] = -0.3; v[7] = 0.2;
    return v;
  }()));
  auto [td, gd] = transpile(just_d);
  CHECK(gc.cnots == 2 * gf.cnots + gd.cnots);
}

TEST_CASE("su2 decomposition reconstructs random unitaries") {
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Matrix2cd m;
    m << cxd(nd(rng), nd(rng)), cxd(nd(rng), nd(rng)), cxd(nd(rng), nd(rng)),
        cxd(nd(rng), nd(rng));
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(
        m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix2cd u = svd.matrixU() * svd.matrixV().adjoint();
    auto gates = su2_gates(u, 0);
    Circuit c(1);
    for (const Gate& g : gates) c.append(g);
    CHECK((unitary_of(c) - u).cwiseAbs().maxCoeff() < 1e-12);
  }
  // special cases: diagonal and antidiagonal
  Eigen::Matrix2cd dz;
  dz << std::polar(1.0, 0.3), 0, 0, std::polar(1.0, -1.2);
  auto g1 = su2_gates(dz, 0);
  Circuit c1(1);
  for (const Gate& g : g1) c1.append(g);
  CHECK((unitary_of(c1) - dz).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::Matrix2cd ax;
  ax << 0, std::polar(1.0, 0.4), std::polar(1.0, 2.0), 0;
  auto g2 = su2_gates(ax, 0);
  Circuit c2(1);
  for (const Gate& g : g2) c2.append(g);
  CHECK((unitary_of(c2) - ax).cwiseAbs().maxCoeff() < 1e-12);
}
