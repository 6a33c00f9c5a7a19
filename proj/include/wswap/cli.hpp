// Copyright 2026 The wswap Authors
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

// Command-line front end: run pipelines, sweep parameters, verify the
// closed forms against simulation, emit CSV/JSON for plotting.
//
// Exit codes: 0 = all checks pass, 1 = invariant or tolerance failure,
// 2 = usage error.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wswap/protocol.hpp"

namespace wswap {

enum class SweepMode { kDamping, kPurify, kGateNoise };
enum class OutputFormat { kCsv, kJson };

struct SweepConfig {
  std::vector<double> r_grid;
  std::vector<double> q_grid;
  std::vector<double> y2_grid;
  std::vector<double> eta_grid;
  std::int64_t shots = 0;  // 0 = exact; sweeps are exact-only
  std::uint64_t seed = 12345;
  std::string output_path;
  OutputFormat format = OutputFormat::kCsv;
};

struct VerifyRow {
  double r = 0.0;
  double q = 0.0;
  // Simulated values; NaN where the post-selected branch has probability 0
  // (r = 1 or q = 1) and no conditional value exists.
  double g_eta_sim = 0.0;
  double fid_ad_sim = 0.0;
  double fid_wm_sim = 0.0;
  double p_wm_sim = 0.0;
  double p_total_sim = 0.0;
  OracleReport closed;
  double abs_error = 0.0;  // max over the comparable quantities of this row
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  double max_abs_error = 0.0;
  // Largest gap between the composed total probability and the alternative
  // closed form across the grid.
  struct Discrepancy {
    double r = 0.0;
    double q = 0.0;
    double p_total_composed = 0.0;
    double p_total_alt = 0.0;
    double difference = 0.0;
  } discrepancy;
};

VerifyReport verify_closed_forms(double grid_step);

// Entry point used by the binary and by the tests. Writes human output to
// `out` and returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace wswap
