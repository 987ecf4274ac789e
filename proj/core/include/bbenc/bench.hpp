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

#include <optional>
#include <string>
#include <vector>

#include "bbenc/evolution.hpp"

namespace bbenc {

/// Flat scenario description (config file keys mirror the field names).
struct Scenario {
  std::string command = "be";  // be | evolve | sweep | verify
  std::vector<std::string> methods;
  std::vector<std::string> operators;
  std::vector<int> n_qs;
  double phi_max = 0.0;  // 0 = per-operator default
  double m = 1.0;
  double lambda = 32.0;
  double g = 1.0;
  int sites = 1;
  std::vector<double> ts;
  std::vector<double> epss;
  std::string out_path;
  bool json = false;
  std::string dump_circuit;
  double tol = 1e-8;
  std::string cache_dir;
};

/// One CSV row; absent fields serialize as empty cells.
struct ReportRow {
  std::string method;
  std::string op;
  std::optional<int> n_q;
  std::optional<double> t;
  std::optional<double> eps_target;
  std::optional<double> eps_measured;
  std::optional<long> rotations;
  std::optional<long> cnots;
  std::optional<int> ancillas;
  std::optional<long> queries;
  std::optional<double> scale_factor;
  std::optional<double> residual;
  std::string note;  // structure-only flags, error markers (stderr mirror)
};

inline constexpr const char* kCsvHeader =
    "method,operator,n_q,t,eps_target,eps_measured,rotations,cnots,ancillas,"
    "queries,scale_factor,residual";

std::string rows_to_csv(const std::vector<ReportRow>& rows);
std::string rows_to_json(const std::vector<ReportRow>& rows);

/// Default field cutoff per benchmark operator (cos uses pi).
double default_phi_max(const std::string& op);

/// Per-operator diagonal and scalar function at the scenario couplings.
std::pair<DiagonalOperator, std::function<double(double)>> bench_operator(
    const std::string& op, int n_q, const Scenario& sc);

std::vector<ReportRow> run_be(const Scenario& sc, PhaseCache* cache = nullptr);
std::vector<ReportRow> run_evolve(const Scenario& sc, PhaseCache* cache = nullptr);
std::vector<ReportRow> run_sweep(const Scenario& sc, PhaseCache* cache = nullptr);

/// Parse `key=value` lines (comma-separated lists); '#' starts a comment.
Scenario parse_config(const std::string& text);

}  // namespace bbenc
