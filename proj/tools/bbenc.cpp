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

// Command-line front end: block-encoding resource rows, time-evolution
// sweeps, and the invariant verification suite.
//
// bbenc be|evolve|sweep|verify [--config FILE] [--out FILE.csv] [--json]
//                              [--dump-circuit FILE]
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bbenc/be_builders.hpp"
#include "bbenc/bench.hpp"
#include "bbenc/simulate.hpp"
#include "bbenc/verify.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bbenc::DomainError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string cache_path(const bbenc::Scenario& sc, const std::string& config_path) {
  std::filesystem::path dir;
  if (!sc.cache_dir.empty()) {
    dir = sc.cache_dir;
  } else if (const char* env = std::getenv("BBENC_CACHE_DIR")) {
    dir = env;
  } else if (!config_path.empty()) {
    dir = std::filesystem::path(config_path).parent_path() / ".cache";
  } else {
    dir = ".cache";
  }
  std::filesystem::create_directories(dir);
  return (dir / "phases.cache").string();
}

void emit(const bbenc::Scenario& sc, const std::vector<bbenc::ReportRow>& rows) {
  std::string payload =
      sc.json ? bbenc::rows_to_json(rows) : bbenc::rows_to_csv(rows);
  if (sc.out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(sc.out_path);
    out << payload;
  }
  for (const auto& r : rows)
    if (!r.note.empty())
      std::cerr << "note: " << r.method << "/" << r.op << ": " << r.note << "\n";
}

void maybe_dump_circuit(const bbenc::Scenario& sc) {
  if (sc.dump_circuit.empty()) return;
  // dump the transpiled circuit of the first grid point
  using namespace bbenc;
  Scenario one = sc;
  if (one.methods.empty()) one.methods = {"love-lcu"};
  if (one.operators.empty()) one.operators = {"v1"};
  if (one.n_qs.empty()) one.n_qs = {3};
  auto [op, f] = bench_operator(one.operators[0], one.n_qs[0], one);
  auto target = apply_function(op, f);
  BlockEncoding be = love_lcu(target);
  if (one.methods[0] == "lcu")
    be = lcu_block_encode(pauli_terms(pauli_z_decompose(target)),
                          SOperator::identity());
  auto [tc, gc] = transpile(be.circuit);
  std::ofstream out(sc.dump_circuit);
  out << serialize_circuit(tc);
  (void)gc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"block-encoding and time-evolution resource toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, dump_path, inject_fault;
  bool json = false;
  std::vector<std::string> methods, operators;
  std::vector<int> nqs;
  std::vector<double> ts, epss;
  double phi_max = 0.0, m = 1.0, lambda = 32.0, g = 1.0, tol = 1e-8;
  int sites = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key=value scenario file");
    cmd->add_option("--out", out_path, "CSV/JSON output path (default stdout)");
    cmd->add_flag("--json", json, "emit JSON records instead of CSV");
    cmd->add_option("--dump-circuit", dump_path,
                    "write the first grid point's transpiled circuit");
    cmd->add_option("--method", methods, "method list");
    cmd->add_option("--operator", operators, "operator list (pi2 v1 diff2 cos)");
    cmd->add_option("--nq", nqs, "qubits per site");
    cmd->add_option("--t", ts, "evolution times");
    cmd->add_option("--eps", epss, "error targets");
    cmd->add_option("--phi-max", phi_max, "field cutoff (0 = per-operator default)");
    cmd->add_option("--m", m, "mass");
    cmd->add_option("--lambda", lambda, "quartic coupling");
    cmd->add_option("--g", g, "cosine coupling");
    cmd->add_option("--sites", sites, "lattice sites (1 or 2)");
    cmd->add_option("--tol", tol, "block-encoding tolerance override");
  };

  auto* cmd_be = app.add_subcommand("be", "block-encoding resource rows");
  auto* cmd_evolve = app.add_subcommand("evolve", "time-evolution rows");
  auto* cmd_sweep = app.add_subcommand("sweep", "combined grid");
  auto* cmd_verify = app.add_subcommand("verify", "run the invariant suite");
  add_common(cmd_be);
  add_common(cmd_evolve);
  add_common(cmd_sweep);
  cmd_verify->add_option("--inject-fault", inject_fault,
                         "perturb a named quantity (test plumbing)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_verify->parsed()) {
      int failures = bbenc::run_verify(std::cout, inject_fault);
      return failures == 0 ? 0 : 1;
    }

    bbenc::Scenario sc;
    if (!config_path.empty()) sc = bbenc::parse_config(read_file(config_path));
    if (!methods.empty()) sc.methods = methods;
    if (!operators.empty()) sc.operators = operators;
    if (!nqs.empty()) sc.n_qs = nqs;
    if (!ts.empty()) sc.ts = ts;
    if (!epss.empty()) sc.epss = epss;
    if (phi_max > 0.0) sc.phi_max = phi_max;
    if (sites != 1) sc.sites = sites;
    sc.m = m;
    sc.lambda = lambda;
    sc.g = g;
    sc.tol = tol;
    if (!out_path.empty()) sc.out_path = out_path;
    if (json) sc.json = true;
    if (!dump_path.empty()) sc.dump_circuit = dump_path;

    bbenc::PhaseCache cache(cache_path(sc, config_path));

    std::vector<bbenc::ReportRow> rows;
    if (cmd_be->parsed()) {
      sc.command = "be";
      rows = bbenc::run_be(sc, &cache);
    } else if (cmd_evolve->parsed()) {
      sc.command = "evolve";
      rows = bbenc::run_evolve(sc, &cache);
    } else {
      sc.command = "sweep";
      rows = bbenc::run_sweep(sc, &cache);
    }
    emit(sc, rows);
    maybe_dump_circuit(sc);
    return 0;
  } catch (const bbenc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
