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

#include "bbenc/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bbenc/be_builders.hpp"
#include "bbenc/simulate.hpp"

#include <json.hpp>

namespace bbenc {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, double>) return fmt17(*v);
  else return std::to_string(*v);
}

}  // namespace

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.method << ',' << r.op << ',' << cell(r.n_q) << ',' << cell(r.t)
        << ',' << cell(r.eps_target) << ',' << cell(r.eps_measured) << ','
        << cell(r.rotations) << ',' << cell(r.cnots) << ',' << cell(r.ancillas)
        << ',' << cell(r.queries) << ',' << cell(r.scale_factor) << ','
        << cell(r.residual) << '\n';
  }
  return out.str();
}

std::string rows_to_json(const std::vector<ReportRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["method"] = r.method;
    j["operator"] = r.op;
    auto put = [&](const char* key, const auto& opt) {
      if (opt) j[key] = *opt;
    };
    put("n_q", r.n_q);
    put("t", r.t);
    put("eps_target", r.eps_target);
    put("eps_measured", r.eps_measured);
    put("rotations", r.rotations);
    put("cnots", r.cnots);
    put("ancillas", r.ancillas);
    put("queries", r.queries);
    put("scale_factor", r.scale_factor);
    put("residual", r.residual);
    if (!r.note.empty()) j["note"] = r.note;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

double default_phi_max(const std::string& op) {
  return op == "cos" ? kPi : 1.0;
}

std::pair<DiagonalOperator, std::function<double(double)>> bench_operator(
    const std::string& op, int n_q, const Scenario& sc) {
  double pm = sc.phi_max > 0.0 ? sc.phi_max : default_phi_max(op);
  DigitizationGrid grid(n_q, pm);
  if (op == "pi2")
    return {build_pi_diag(grid), [](double x) { return 0.5 * x * x; }};
  if (op == "v1") {
    double m = sc.m, l = sc.lambda;
    return {build_phi(grid), [m, l](double x) {
              return 0.5 * m * m * x * x + l / 24.0 * x * x * x * x;
            }};
  }
  if (op == "diff2")
    return {difference_operator(grid), [](double x) { return 0.5 * x * x; }};
  if (op == "cos") {
    double g = sc.g;
    return {build_phi(grid), [g](double x) { return g * std::cos(x); }};
  }
  throw DomainError("unknown benchmark operator: " + op);
}

namespace {

ReportRow be_row(const std::string& method, const std::string& op, int n_q,
                 const Scenario& sc, PhaseCache* cache) {
  ReportRow row;
  row.method = method;
  row.op = op;
  row.n_q = n_q;
  auto [xi, f] = bench_operator(op, n_q, sc);
  auto target = apply_function(xi, f);
  double beta = target.max_abs();

  BlockEncoding be;
  long queries = 0;
  if (method == "love-lcu") {
    be = love_lcu(target, beta);
    queries = 2;
  } else if (method == "lcu") {
    be = lcu_block_encode(pauli_terms(pauli_z_decompose(target)),
                          SOperator::identity());
    Eigen::VectorXd t(target.values.size());
    for (std::size_t i = 0; i < target.values.size(); ++i) t[i] = target.values[i];
    be.set_target(t);
    queries = 1;
  } else if (method == "qsvt") {
    auto base = build_xi_be(pauli_z_decompose(xi));
    std::vector<double> xs, ys;
    for (double v : xi.values) {
      xs.push_back(v / base.alpha);
      ys.push_back(f(v) / beta);
    }
    auto series = chebyshev_fit_exact(xs, ys, Parity::Even);
    be = qsvt_block_encode(base, series, beta, std::min(sc.tol, 1e-10), cache);
    queries = series.degree();
  } else if (method == "qetu-exp" || method == "qetu-arccos") {
    QetuConfig cfg;
    cfg.building_block =
        method == "qetu-exp" ? QetuKind::ExpTau : QetuKind::ExpArccos;
    cfg.beta = beta;
    be = qetu_block_encode(f, xi, cfg, std::min(sc.tol, 1e-10), cache);
    queries = std::stol(be.circuit.metadata.at("queries"));
  } else {
    throw DomainError("unknown block-encoding method: " + method);
  }

  auto [tc, gc] = transpile(be.circuit);
  row.rotations = gc.rotations;
  row.cnots = gc.cnots;
  row.ancillas = be.n_anc();
  row.queries = queries;
  row.scale_factor = be.alpha;
  if (be.circuit.num_qubits() <= kMaxDenseQubits) {
    row.residual = verify_block_encoding(be);
  } else {
    row.note = "structure-only";
  }
  return row;
}

}  // namespace

std::vector<ReportRow> run_be(const Scenario& sc, PhaseCache* cache) {
  std::vector<ReportRow> rows;
  auto methods = sc.methods.empty()
                     ? std::vector<std::string>{"lcu", "qsvt", "qetu-exp",
                                                "qetu-arccos", "love-lcu"}
                     : sc.methods;
  auto ops = sc.operators.empty()
                 ? std::vector<std::string>{"pi2", "v1", "diff2", "cos"}
                 : sc.operators;
  auto nqs = sc.n_qs.empty() ? std::vector<int>{2, 3, 4} : sc.n_qs;
  for (const auto& m : methods)
    for (const auto& op : ops)
      for (int nq : nqs) {
        try {
          rows.push_back(be_row(m, op, nq, sc, cache));
        } catch (const Error& e) {
          ReportRow row;
          row.method = m;
          row.op = op;
          row.n_q = nq;
          row.note = e.what();
          rows.push_back(row);
        }
      }
  return rows;
}

std::vector<ReportRow> run_evolve(const Scenario& sc, PhaseCache* cache) {
  std::vector<ReportRow> rows;
  auto methods = sc.methods.empty()
                     ? std::vector<std::string>{"pf2", "pf4", "gqsp"}
                     : sc.methods;
  auto nqs = sc.n_qs.empty() ? std::vector<int>{3} : sc.n_qs;
  auto ts = sc.ts.empty() ? std::vector<double>{1.0} : sc.ts;
  auto epss = sc.epss.empty() ? std::vector<double>{1e-6} : sc.epss;

  for (int nq : nqs) {
    HamiltonianSpec spec;
    spec.sites = sc.sites;
    spec.grid = DigitizationGrid(nq, sc.phi_max > 0.0 ? sc.phi_max : 1.5);
    spec.m = sc.m;
    spec.lambda = sc.lambda;
    spec.g = sc.g;
    Eigen::MatrixXcd h = build_hamiltonian_matrix(spec);

    bool want_gqsp = std::find(methods.begin(), methods.end(), "gqsp") != methods.end();
    WalkOperator walk;
    if (want_gqsp) {
      auto be = hamiltonian_block_encoding(spec);
      walk = make_walk(be);
    }
    for (const auto& m : methods) {
      for (double t : ts) {
        for (double eps : epss) {
          try {
            ReportRow row;
            row.method = m;
            row.op = spec.sites == 1 ? "h1" : "h2";
            row.n_q = nq;
            row.t = t;
            row.eps_target = eps;
            if (m == "pf2" || m == "pf4") {
              int order = m == "pf2" ? 2 : 4;
              auto [steps, err] = trotter_steps_for(spec, t, order, eps);
              auto [c, rep] = trotter_evolve(spec, t, steps, order);
              row.eps_measured = rep.eps_measured;
              row.rotations = rep.counts.rotations;
              row.cnots = rep.counts.cnots;
              row.ancillas = 0;
              row.queries = steps;
              (void)err;
            } else if (m == "gqsp") {
              GqspOptions opt;
              opt.cache = cache;
              // full treatment only at desk sizes; bookkeeping otherwise
              int total = walk.circuit.num_qubits() + 1;
              double at = walk.alpha * t;
              bool small = total <= 8 && at <= 400.0;
              opt.solve_angles = small;
              opt.materialize = small;
              opt.dense_verify = small;
              auto [c, rep] = gqsp_evolve(walk, h, t, eps, opt);
              row.eps_measured = rep.eps_measured;
              row.rotations = rep.counts.rotations;
              row.cnots = rep.counts.cnots;
              row.ancillas = rep.counts.ancillas;
              row.queries = rep.queries;
              if (rep.verification != "dense") row.note = rep.verification;
            } else {
              throw DomainError("unknown evolution method: " + m);
            }
            rows.push_back(std::move(row));
          } catch (const Error& e) {
            ReportRow row;
            row.method = m;
            row.op = spec.sites == 1 ? "h1" : "h2";
            row.n_q = nq;
            row.t = t;
            row.eps_target = eps;
            row.note = e.what();
            rows.push_back(row);
          }
        }
      }
    }
  }
  return rows;
}

std::vector<ReportRow> run_sweep(const Scenario& sc, PhaseCache* cache) {
  static const std::vector<std::string> be_methods{"lcu", "qsvt", "qetu-exp",
                                                   "qetu-arccos", "love-lcu"};
  static const std::vector<std::string> ev_methods{"pf2", "pf4", "gqsp"};
  Scenario be_sc = sc, ev_sc = sc;
  be_sc.methods.clear();
  ev_sc.methods.clear();
  for (const auto& m : sc.methods) {
    if (std::find(be_methods.begin(), be_methods.end(), m) != be_methods.end())
      be_sc.methods.push_back(m);
    if (std::find(ev_methods.begin(), ev_methods.end(), m) != ev_methods.end())
      ev_sc.methods.push_back(m);
  }
  std::vector<ReportRow> rows;
  if (sc.methods.empty() || !be_sc.methods.empty()) {
    auto r = run_be(be_sc, cache);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (sc.methods.empty() || !ev_sc.methods.empty()) {
    auto r = run_evolve(ev_sc, cache);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return rows;
}

Scenario parse_config(const std::string& text) {
  Scenario sc;
  std::istringstream in(text);
  std::string line;
  auto split_list = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
      if (ch == ',') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else if (!isspace(static_cast<unsigned char>(ch))) {
        cur += ch;
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  };
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      auto last = s.find_last_not_of(" \t\r");
      if (last != std::string::npos) s.erase(last + 1);
      return s;
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "command") sc.command = val;
    else if (key == "method") sc.methods = split_list(val);
    else if (key == "operator") sc.operators = split_list(val);
    else if (key == "n_q") {
      for (const auto& v : split_list(val)) sc.n_qs.push_back(std::stoi(v));
    } else if (key == "t") {
      for (const auto& v : split_list(val)) sc.ts.push_back(std::stod(v));
    } else if (key == "eps") {
      for (const auto& v : split_list(val)) sc.epss.push_back(std::stod(v));
    } else if (key == "phi_max") sc.phi_max = std::stod(val);
    else if (key == "m") sc.m = std::stod(val);
    else if (key == "lambda") sc.lambda = std::stod(val);
    else if (key == "g") sc.g = std::stod(val);
    else if (key == "sites") sc.sites = std::stoi(val);
    else if (key == "out") sc.out_path = val;
    else if (key == "json") sc.json = (val == "1" || val == "true");
    else if (key == "dump_circuit") sc.dump_circuit = val;
    else if (key == "tol") sc.tol = std::stod(val);
    else if (key == "cache_dir") sc.cache_dir = val;
    else throw DomainError("unknown config key: " + key);
  }
  return sc;
}

}  // namespace bbenc
