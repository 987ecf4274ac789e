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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bbenc/bench.hpp"
#include "bbenc/verify.hpp"

using namespace bbenc;

namespace {

std::string cli_path() {
  const char* p = std::getenv("BBENC_CLI");
  return p ? p : "";
}

struct CmdResult {
  int exit_code;
  std::string out;
};

CmdResult run_cmd(const std::string& cmd) {
  std::string full = cmd + " 2>/dev/null";
  FILE* pipe = popen(full.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("config parsing") {
  auto sc = parse_config(
      "command = be\n"
      "method = love-lcu, qsvt\n"
      "operator = v1\n"
      "n_q = 2,3\n"
      "eps = 1e-4,1e-6  # trailing comment\n"
      "phi_max = 1.5\n"
      "json = true\n");
  CHECK(sc.command == "be");
  REQUIRE(sc.methods.size() == 2);
  CHECK(sc.methods[1] == "qsvt");
  CHECK(sc.n_qs == std::vector<int>{2, 3});
  CHECK(sc.epss.size() == 2);
  CHECK(sc.phi_max == 1.5);
  CHECK(sc.json);
  CHECK_THROWS_AS(parse_config("bogus_key = 3\n"), DomainError);
}

TEST_CASE("csv schema and determinism") {
  Scenario sc;
  sc.methods = {"love-lcu"};
  sc.operators = {"v1"};
  sc.n_qs = {2, 3};
  auto rows1 = run_be(sc);
  auto rows2 = run_be(sc);
  auto csv1 = rows_to_csv(rows1);
  auto csv2 = rows_to_csv(rows2);
  CHECK(csv1 == csv2);  // byte-identical
  std::istringstream in(csv1);
  std::string header;
  std::getline(in, header);
  CHECK(header == std::string(kCsvHeader));
  std::string line;
  int nlines = 0;
  while (std::getline(in, line)) {
    ++nlines;
    CHECK(std::count(line.begin(), line.end(), ',') == 11);
  }
  CHECK(nlines == 2);

  auto js = rows_to_json(rows1);
  CHECK(js.find("\"rotations\"") != std::string::npos);
}

TEST_CASE("run_be rows carry residuals and scale factors") {
  Scenario sc;
  sc.methods = {"love-lcu", "lcu"};
  sc.operators = {"v1", "cos"};
  sc.n_qs = {2};
  auto rows = run_be(sc);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    REQUIRE(r.residual.has_value());
    CHECK(*r.residual < 1e-8);
    CHECK(r.rotations.value_or(0) > 0);
    CHECK(r.scale_factor.value_or(0) > 0);
  }
}

TEST_CASE("verify registry catches an injected fault") {
  std::ostringstream sink;
  CHECK(run_verify(sink, "") == 0);
  std::ostringstream sink2;
  int failures = run_verify(sink2, "phase-perturb");
  CHECK(failures >= 1);
  CHECK(sink2.str().find("[FAIL] qsp.residual-deg64") != std::string::npos);
}

TEST_CASE("cli end to end") {
  auto cli = cli_path();
  if (cli.empty()) {
    MESSAGE("BBENC_CLI not set; skipping the process-level checks");
    return;
  }
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "bbenc_cli_test";
  fs::create_directories(dir);
  auto csv = (dir / "rows.csv").string();
  auto cache = (dir / "cache").string();

  auto r1 = run_cmd("BBENC_CACHE_DIR=" + cache + " " + cli +
                    " be --method love-lcu --operator v1 --nq 2 --out " + csv);
  CHECK(r1.exit_code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == std::string(kCsvHeader));

  auto r2 = run_cmd("BBENC_CACHE_DIR=" + cache + " " + cli +
                    " be --method love-lcu --operator v1 --nq 2 --json");
  CHECK(r2.exit_code == 0);
  CHECK(r2.out.find("\"method\"") != std::string::npos);

  // circuit dump: one gate per line in the fixed basis
  auto dump = (dir / "circ.txt").string();
  auto r3 = run_cmd("BBENC_CACHE_DIR=" + cache + " " + cli +
                    " be --method love-lcu --operator v1 --nq 2 --dump-circuit " +
                    dump);
  CHECK(r3.exit_code == 0);
  std::ifstream din(dump);
  std::string gline;
  int gates = 0;
  while (std::getline(din, gline)) {
    ++gates;
    bool ok = gline.rfind("CNOT ", 0) == 0 || gline.rfind("RZ ", 0) == 0 ||
              gline.rfind("RX ", 0) == 0 || gline.rfind("GLOBALPHASE ", 0) == 0;
    CHECK(ok);
  }
  CHECK(gates > 0);

  // usage error -> 2
  auto r4 = run_cmd(cli + " bogus-subcommand");
  CHECK(r4.exit_code == 2);

  // injected fault -> 1 with the named invariant
  auto r5 = run_cmd(cli + " verify --inject-fault phase-perturb");
  CHECK(r5.exit_code == 1);
  CHECK(r5.out.find("qsp.residual-deg64") != std::string::npos);

  fs::remove_all(dir);
}
