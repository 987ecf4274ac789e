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

#include "bbenc/verify.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "bbenc/be_builders.hpp"
#include "bbenc/evolution.hpp"
#include "bbenc/simulate.hpp"

namespace bbenc {

namespace {

struct Check {
  std::string name;
  std::function<std::string(const std::string&)> run;  // empty string = pass
};

double v1f(double x) { return 0.5 * x * x + 32.0 / 24.0 * std::pow(x, 4); }

std::vector<Check> make_checks() {
  std::vector<Check> checks;

  checks.push_back({"lattice.pauli-round-trip", [](const std::string&) {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> d(-2, 2);
    for (int n = 1; n <= 8; ++n) {
      std::vector<double> vals(std::size_t{1} << n);
      for (double& v : vals) v = d(rng);
      DiagonalOperator op(n, vals);
      auto rec = pauli_z_decompose(op).reconstruct();
      for (std::size_t k = 0; k < vals.size(); ++k)
        if (std::abs(rec.values[k] - vals[k]) > 1e-12)
          return std::string("reconstruction above 1e-12 at n=") + std::to_string(n);
    }
    return std::string();
  }});

  checks.push_back({"lattice.scale-closed-forms", [](const std::string&) {
    for (int nq = 1; nq <= 8; ++nq) {
      DigitizationGrid g(nq, 1.3);
      auto phi = build_phi(g);
      for (int deg = 1; deg <= 4; ++deg) {
        auto p = apply_function(phi, [&](double x) { return std::pow(x, deg); });
        if (std::abs(lcu_scale_factor(p) - std::pow(1.3, deg)) > 1e-12 * std::pow(1.3, deg))
          return std::string("phi^d mismatch at nq=") + std::to_string(nq);
      }
      auto v = apply_function(phi, v1f);
      double expect = 0.5 * 1.3 * 1.3 + 32.0 / 24.0 * std::pow(1.3, 4);
      if (std::abs(lcu_scale_factor(v) - expect) > 1e-12 * expect)
        return std::string("V1 mismatch at nq=") + std::to_string(nq);
    }
    return std::string();
  }});

  checks.push_back({"lattice.cos-scale-trend", [](const std::string&) {
    double last = 0;
    for (int nq = 2; nq <= 8; ++nq) {
      auto phi = build_phi(DigitizationGrid(nq, kPi));
      auto c = apply_function(phi, [](double x) { return std::cos(x); });
      double lcu = lcu_scale_factor(c);
      if (lcu < c.max_abs()) return std::string("LCU sum below LOVE beta");
      last = lcu;
    }
    if (std::abs(last - 1.3) > 0.1)
      return std::string("cos scale at nq=8 far from 1.3: ") + std::to_string(last);
    return std::string();
  }});

  checks.push_back({"circuit.diag-synthesis-bounds", [](const std::string&) {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> d(-2.5, 2.5);
    for (int n = 1; n <= 6; ++n) {
      for (int trial = 0; trial < 200 / n; ++trial) {
        std::vector<double> ph(std::size_t{1} << n);
        for (double& p : ph) p = d(rng);
        auto c = synthesize_diagonal_unitary(ph);
        auto gc = count_gates(c);
        if (gc.rotations > (1 << n) - 1 || gc.cnots > std::max(0, (1 << n) - 2))
          return std::string("gate bound exceeded at n=") + std::to_string(n);
        auto u = unitary_of(c);
        for (std::size_t k = 0; k < ph.size(); ++k)
          if (std::abs(u(k, k) - std::polar(1.0, ph[k])) > 1e-12)
            return std::string("reconstruction above 1e-12");
      }
    }
    return std::string();
  }});

  checks.push_back({"circuit.qft-matches-dft", [](const std::string&) {
    for (int n = 1; n <= 4; ++n) {
      auto u = unitary_of(qft_circuit(n));
      int dim = 1 << n;
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          if (std::abs(u(j, k) - std::polar(1.0 / std::sqrt(double(dim)),
                                            2.0 * kPi * j * k / dim)) > 1e-12)
            return std::string("DFT mismatch at n=") + std::to_string(n);
    }
    return std::string();
  }});

  checks.push_back({"lcu.block-equality-random", [](const std::string&) {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> cd(0.1, 2.0), ang(-2, 2);
    for (int trial = 0; trial < 30; ++trial) {
      int n = 1 + trial % 3;
      int k = 1 + static_cast<int>(rng() % 8);
      std::vector<UnitaryTerm> terms(k);
      for (auto& t : terms) {
        t.coefficient = cd(rng);
        t.circuit = Circuit(n);
        t.circuit.append(Gate::rz(static_cast<int>(rng() % n), ang(rng)));
        t.circuit.append(Gate::h(static_cast<int>(rng() % n)));
      }
      auto be = lcu_block_encode(terms);
      if (verify_block_encoding(be) > 1e-8)
        return std::string("LCU block deviates at trial ") + std::to_string(trial);
      if (unitarity_defect(unitary_of(be.circuit)) > 1e-12)
        return std::string("unitarity defect");
    }
    return std::string();
  }});

  checks.push_back({"lcu.love-exactness", [](const std::string&) {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    for (int n = 1; n <= 4; ++n) {
      std::vector<double> vals(std::size_t{1} << n);
      for (double& v : vals) v = d(rng);
      auto be = love_lcu(DiagonalOperator(n, vals));
      if (be.n_anc() != 1) return std::string("LOVE ancilla count != 1");
      if (verify_block_encoding(be) > 1e-10)
        return std::string("LOVE block deviates at n=") + std::to_string(n);
    }
    return std::string();
  }});

  checks.push_back({"lcu.control-free-branches", [](const std::string&) {
    DigitizationGrid g(3, 1.1);
    auto phi = build_phi(g);
    auto [fast, ok] = control_free_sel(phi.values);
    if (!ok) return std::string("full-mask case not detected");
    std::vector<double> v(16);
    for (int x = 0; x < 8; ++x) {
      v[x] = phi.values[x];
      v[8 + x] = -phi.values[x];
    }
    Circuit ref(Registers{0, 0, 1, 3});
    ref.append(Gate::diagonal_phase({0, 1, 2, 3}, v));
    if ((unitary_of(fast) - unitary_of(ref)).cwiseAbs().maxCoeff() > 1e-12)
      return std::string("fast branch disagrees with the joint diagonal");
    return std::string();
  }});

  checks.push_back({"poly.jacobi-anger-grid", [](const std::string&) {
    for (double eps : {1e-4, 1e-8}) {
      auto ja = jacobi_anger(5.0, eps);
      for (int i = 0; i < 4096; ++i) {
        double th = 2.0 * kPi * i / 4096;
        if (std::abs(ja.eval(th) - std::polar(1.0, -5.0 * std::cos(th))) > eps)
          return std::string("grid error exceeds eps");
      }
    }
    return std::string();
  }});

  checks.push_back({"poly.bessel-self-check", [](const std::string&) {
    auto series_j = [](int k, double t) {
      double sum = 0.0;
      for (int mm = 0; mm < 80; ++mm) {
        double num = std::pow(t / 2.0, 2 * mm + k);
        double den = 1.0;
        for (int i = 2; i <= mm; ++i) den *= i;
        for (int i = 2; i <= mm + k; ++i) den *= i;
        sum += ((mm % 2) ? -1.0 : 1.0) * num / den;
      }
      return sum;
    };
    for (double t : {0.5, 1.0, 10.0}) {
      auto js = bessel_j_table(t, 3);
      for (int k = 0; k <= 2; ++k)
        if (std::abs(js[k] - series_j(k, t)) > 1e-12)
          return std::string("Bessel mismatch at t=") + std::to_string(t);
    }
    return std::string();
  }});

  checks.push_back({"qsp.residual-deg64", [](const std::string& fault) {
    std::mt19937 rng(41);
    std::normal_distribution<double> nd(0.0, 1.0);
    ChebyshevSeries s;
    s.parity = Parity::Even;
    s.coeffs.assign(65, 0.0);
    for (int j = 0; j <= 64; j += 2) s.coeffs[j] = nd(rng) * std::pow(0.72, j / 2);
    double sup = s.sup_norm();
    for (double& c : s.coeffs) c *= 0.9 / sup;
    auto p = qsp_phases_symmetric(s, 1e-10);
    if (fault == "phase-perturb") p.phases[1] += 1e-3;
    double worst = 0.0;
    for (int k = 0; k < 64; ++k) {
      double x = std::cos((2.0 * k + 1.0) * kPi / 128.0);
      worst = std::max(worst, std::abs(qsvt_scalar_eval(x, p.phases) - s.eval(x)));
    }
    if (worst > 1e-10)
      return std::string("node residual ") + std::to_string(worst);
    return std::string();
  }});

  checks.push_back({"gqsp.reconstruction", [](const std::string&) {
    auto ja = jacobi_anger(3.0, 1e-8);
    auto p = gqsp_phases(ja, 1e-9);
    if (p.grid_residual > 1e-9)
      return std::string("grid residual ") + std::to_string(p.grid_residual);
    return std::string();
  }});

  checks.push_back({"be.method-agreement", [](const std::string&) {
    DigitizationGrid g(3, 1.0);
    auto phi = build_phi(g);
    double beta = 0.0;
    for (double v : phi.values) beta = std::max(beta, v1f(v));
    auto base = build_xi_be(pauli_z_decompose(phi));
    std::vector<double> xs, ys;
    for (double v : phi.values) {
      xs.push_back(v / base.alpha);
      ys.push_back(v1f(v) / beta);
    }
    auto series = chebyshev_fit_exact(xs, ys, Parity::Even);
    auto b1 = block_of(qsvt_block_encode(base, series, beta, 1e-11).circuit,
                       base.n_anc() + 1);
    QetuConfig c1;
    c1.beta = beta;
    auto b2 = block_of(qetu_block_encode(v1f, phi, c1, 1e-11).circuit, 1);
    auto b3 = block_of(love_lcu(apply_function(phi, v1f), beta).circuit, 1);
    if ((b1 - b2).cwiseAbs().maxCoeff() > 1e-7 ||
        (b1 - b3).cwiseAbs().maxCoeff() > 1e-7)
      return std::string("methods disagree beyond 1e-7");
    return std::string();
  }});

  checks.push_back({"walk.single-site-spectrum", [](const std::string&) {
    HamiltonianSpec spec;
    spec.sites = 1;
    spec.grid = DigitizationGrid(2, 1.0);
    auto be = hamiltonian_block_encoding(spec);
    auto w = make_walk(be);
    auto chk = verify_walk(w);
    if (chk.max_residual > 1e-8)
      return std::string("walk residual ") + std::to_string(chk.max_residual);
    auto rep = verify_s(be);
    if (!rep.commutation_ok) return std::string("S commutation fails");
    return std::string();
  }});

  checks.push_back({"evolve.gqsp-small", [](const std::string&) {
    HamiltonianSpec spec;
    spec.sites = 1;
    spec.grid = DigitizationGrid(2, 1.0);
    auto be = hamiltonian_block_encoding(spec);
    auto walk = make_walk(be);
    auto h = build_hamiltonian_matrix(spec);
    auto [c, rep] = gqsp_evolve(walk, h, 1.0, 1e-6);
    if (rep.eps_measured > 1e-6)
      return std::string("measured eps ") + std::to_string(rep.eps_measured);
    return std::string();
  }});

  checks.push_back({"evolve.trotter-slope-pf2", [](const std::string&) {
    HamiltonianSpec spec;
    spec.sites = 1;
    spec.grid = DigitizationGrid(2, 1.0);
    std::vector<double> lx, ly;
    for (long steps : {16, 32, 64, 128}) {
      auto [c, rep] = trotter_evolve(spec, 1.0, steps, 2, 1);
      lx.push_back(std::log(1.0 / steps));
      ly.push_back(std::log(rep.eps_measured));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    double n = static_cast<double>(lx.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (std::abs(slope - 2.0) > 0.1)
      return std::string("slope ") + std::to_string(slope);
    return std::string();
  }});

  return checks;
}

}  // namespace

int run_verify(std::ostream& out, const std::string& inject_fault) {
  auto checks = make_checks();
  int failures = 0;
  out << "invariant suite (" << checks.size() << " checks)\n";
  for (const auto& c : checks) {
    std::string detail;
    try {
      detail = c.run(inject_fault);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    bool ok = detail.empty();
    out << (ok ? "[PASS] " : "[FAIL] ") << std::left << std::setw(34) << c.name;
    if (!ok) {
      out << " " << detail;
      ++failures;
    }
    out << '\n';
  }
  out << (failures == 0 ? "all checks passed" :
          std::to_string(failures) + " check(s) failed") << '\n';
  return failures;
}

}  // namespace bbenc
