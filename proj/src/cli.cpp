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

#include "wswap/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wswap/circuit.hpp"

namespace wswap {

namespace {

constexpr double kVerifyTol = 1e-9;

std::string fmt17(double v) {
  if (v == 0.0) v = 0.0;  // normalize negative zero
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> grid_from_step(double step) {
  std::vector<double> g;
  for (int i = 0;; ++i) {
    const double v = i * step;
    if (v > 1.0 + 1e-12) break;
    g.push_back(std::min(v, 1.0));
  }
  return g;
}

// A sweep/verify row as ordered (name, value) pairs, shared by the CSV and
// JSON writers so both carry identical values.
struct Row {
  std::vector<std::pair<std::string, double>> cells;
  void add(const std::string& name, double v) { cells.emplace_back(name, v); }
};

struct Table {
  std::vector<std::string> comments;  // without leading '#'
  std::vector<Row> rows;
};

void write_csv(const Table& t, std::ostream& out) {
  for (const auto& c : t.comments) out << "# " << c << "\n";
  if (t.rows.empty()) return;
  for (std::size_t i = 0; i < t.rows.front().cells.size(); ++i) {
    out << (i ? "," : "") << t.rows.front().cells[i].first;
  }
  out << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
      out << (i ? "," : "") << fmt17(r.cells[i].second);
    }
    out << "\n";
  }
}

void write_json(const Table& t, std::ostream& out) {
  nlohmann::ordered_json j;
  j["comments"] = t.comments;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json o;
    for (const auto& [k, v] : r.cells) {
      if (std::isnan(v)) {
        o[k] = nullptr;
      } else {
        o[k] = v;
      }
    }
    j["rows"].push_back(o);
  }
  out << j.dump(2) << "\n";
}

int write_table(const Table& t, const std::string& path, OutputFormat format,
                std::ostream& log) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!path.empty()) {
    file.open(path, std::ios::binary);  // LF line endings everywhere
    if (!file) {
      log << "error: cannot open output path: " << path << "\n";
      return 1;
    }
    out = &file;
  }
  if (format == OutputFormat::kCsv) {
    write_csv(t, *out);
  } else {
    write_json(t, *out);
  }
  return 0;
}

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

VerifyReport verify_closed_forms(double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.5)) {
    throw std::invalid_argument("grid step must lie in (0, 0.5]");
  }
  const std::vector<double> grid = grid_from_step(grid_step);
  VerifyReport report;
  for (double r : grid) {
    const SwapResult swapped = damped_swap(r);
    const SwapBranch& eta_p = swapped.named(CharlieOutcome::kEtaPlus);
    const SwapBranch& eta_m = swapped.named(CharlieOutcome::kEtaMinus);
    for (double q : grid) {
      VerifyRow row;
      row.r = r;
      row.q = q;
      row.closed = oracle(r, q);
      row.g_eta_sim = eta_p.branch.probability;
      double err = std::abs(row.g_eta_sim - row.closed.g_eta);
      if (eta_p.branch.empty()) {
        row.fid_ad_sim = nan_value();
        row.fid_wm_sim = nan_value();
        row.p_wm_sim = nan_value();
        row.p_total_sim = 0.0;
        err = std::max(err, std::abs(row.p_total_sim - row.closed.p_total_composed));
      } else {
        row.fid_ad_sim = eta_p.fidelity;
        err = std::max(err, std::abs(row.fid_ad_sim - row.closed.fid_ad));
        const Branch purified = purify(eta_p.branch, q);
        if (purified.empty()) {
          row.fid_wm_sim = nan_value();
          row.p_wm_sim = 0.0;
          row.p_total_sim = 0.0;
        } else {
          row.fid_wm_sim = pure_fidelity(w_state(), *purified.state);
          row.p_wm_sim = purified.probability;
          const Branch purified_m = purify(eta_m.branch, q);
          row.p_total_sim =
              eta_p.branch.probability * purified.probability +
              eta_m.branch.probability *
                  (purified_m.empty() ? 0.0 : purified_m.probability);
          err = std::max(err, std::abs(row.fid_wm_sim - row.closed.fid_wm));
        }
        err = std::max(err, std::abs(row.p_wm_sim - row.closed.p_wm));
        err = std::max(
            err, std::abs(row.p_total_sim - row.closed.p_total_composed));
      }
      row.abs_error = err;
      report.max_abs_error = std::max(report.max_abs_error, err);
      const double diff =
          std::abs(row.closed.p_total_composed - row.closed.p_total_alt);
      if (diff >= report.discrepancy.difference) {
        report.discrepancy = {r, q, row.closed.p_total_composed,
                              row.closed.p_total_alt, diff};
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

namespace {

// ---- subcommand: ideal -----------------------------------------------------

struct IdealOptions {
  std::int64_t shots = 0;
  std::uint64_t seed = 12345;
  std::string dump_circuit;
};

int cmd_ideal(const IdealOptions& opt, std::ostream& out) {
  const SwapResult res = ideal_swap();
  out << "ideal swap: outcome probability fidelity\n";
  bool ok = true;
  for (int i = 0; i < 4; ++i) {
    const auto o = static_cast<CharlieOutcome>(i);
    const SwapBranch& b = res.named(o);
    out << "  " << outcome_name(o) << "  " << fmt17(b.branch.probability)
        << "  " << fmt17(b.fidelity) << "\n";
    ok = ok && std::abs(b.branch.probability - 0.25) <= 1e-10 &&
         std::abs(b.fidelity - 1.0) <= 1e-10;
  }
  for (std::size_t i = 4; i < res.branches.size(); ++i) {
    ok = ok && res.branches[i].branch.probability < 1e-12;
  }
  const Branch& eta = res.named(CharlieOutcome::kEtaPlus).branch;
  out << "final state basis probabilities: |100> "
      << fmt17(eta.state->basis_probability(4)) << "  |010> "
      << fmt17(eta.state->basis_probability(2)) << "  |001> "
      << fmt17(eta.state->basis_probability(1)) << "\n";

  SwapCircuitOptions copts;
  copts.measure_final = opt.shots > 0;
  const SwapCircuit sc = swap_circuit(copts);
  if (!opt.dump_circuit.empty()) {
    std::ofstream f(opt.dump_circuit, std::ios::binary);
    if (!f) {
      out << "error: cannot open " << opt.dump_circuit << "\n";
      return 1;
    }
    f << sc.circuit.serialize();
    out << "circuit written to " << opt.dump_circuit << " (cnot count "
        << sc.cnot_count << ")\n";
  }
  if (opt.shots > 0) {
    const ShotResult shots = sample_shots(sc.circuit, opt.shots, opt.seed);
    std::map<std::string, std::int64_t> final_counts;
    for (const auto& [bits, count] : shots.counts) {
      final_counts[bits.substr(static_cast<std::size_t>(sc.final_cbit0), 3)] +=
          count;
    }
    out << "sampled final-state frequencies (" << opt.shots << " shots, seed "
        << opt.seed << ", rng " << shots.rng_name << "):\n";
    for (const auto& [bits, count] : final_counts) {
      out << "  |" << bits << "> "
          << fmt17(static_cast<double>(count) /
                   static_cast<double>(opt.shots))
          << "\n";
    }
  }
  out << (ok ? "ideal swap determinism: pass\n"
             : "ideal swap determinism: FAIL\n");
  return ok ? 0 : 1;
}

// ---- subcommand: sweep -----------------------------------------------------

int cmd_sweep(const SweepConfig& cfg, SweepMode mode, std::ostream& out) {
  if (cfg.shots != 0) {
    out << "error: sweeps are exact; --shots applies to ideal/circuit-run\n";
    return 2;
  }
  Table t;
  if (mode == SweepMode::kGateNoise) {
    const SwapCircuit probe = swap_circuit(GateNoiseParams{}, std::nullopt);
    t.comments = {
        "mode: gate-noise",
        "fidelity = probability-weighted fidelity of the corrected state "
        "over all outcomes",
        "cnot_count: " + std::to_string(probe.cnot_count),
    };
    for (double y2 : cfg.y2_grid) {
      for (double eta : cfg.eta_grid) {
        const SwapCircuit sc =
            swap_circuit(GateNoiseParams{y2, eta}, std::nullopt);
        const SwapAnalysis an = analyze_swap(sc);
        Row row;
        row.add("y2", y2);
        row.add("eta", eta);
        row.add("fidelity", an.average_fidelity);
        t.rows.push_back(std::move(row));
      }
    }
  } else {
    const std::vector<double> q_grid =
        mode == SweepMode::kDamping ? std::vector<double>{0.0} : cfg.q_grid;
    t.comments = {
        mode == SweepMode::kDamping ? "mode: damping" : "mode: purify",
        "fid_no_purification = 1/(1+r)",
        "fid_purified = 1/(1+r*(1-q))",
        "g_eta = (1-r^2)/4 per eta outcome",
        "p_wm = (1-q)^2*(r-q*r+1)/(1+r) conditional on an eta outcome",
        "p_total_one_outcome = g_eta*p_wm; p_total_composed = 2*g_eta*p_wm",
        "p_total_alt = (1-q^2)*(1-r)*(r-q*r+1)/2 (alternative closed form, "
        "disagrees with p_total_composed for 0 < q < 1)",
        "values below are simulated; closed forms above are their targets",
    };
    for (double r : cfg.r_grid) {
      const SwapResult swapped = damped_swap(r);
      const SwapBranch& eta_p = swapped.named(CharlieOutcome::kEtaPlus);
      const SwapBranch& eta_m = swapped.named(CharlieOutcome::kEtaMinus);
      for (double q : q_grid) {
        Row row;
        row.add("r", r);
        if (mode == SweepMode::kPurify) row.add("q", q);
        const OracleReport closed = oracle(r, q);
        if (eta_p.branch.empty()) {
          row.add("fid_no_purification", nan_value());
          row.add("fid_purified", nan_value());
          row.add("g_eta", eta_p.branch.probability);
          row.add("p_wm", nan_value());
          row.add("p_total_one_outcome", 0.0);
          row.add("p_total_composed", 0.0);
        } else {
          const Branch purified_p = purify(eta_p.branch, q);
          const Branch purified_m = purify(eta_m.branch, q);
          row.add("fid_no_purification", eta_p.fidelity);
          row.add("fid_purified",
                  purified_p.empty()
                      ? nan_value()
                      : pure_fidelity(w_state(), *purified_p.state));
          row.add("g_eta", eta_p.branch.probability);
          row.add("p_wm", purified_p.probability);
          const double total =
              eta_p.branch.probability * purified_p.probability +
              eta_m.branch.probability * purified_m.probability;
          row.add("p_total_one_outcome",
                  eta_p.branch.probability * purified_p.probability);
          row.add("p_total_composed", total);
        }
        row.add("p_total_alt", closed.p_total_alt);
        t.rows.push_back(std::move(row));
      }
    }
  }
  return write_table(t, cfg.output_path, cfg.format, out);
}

// ---- subcommand: verify ----------------------------------------------------

int cmd_verify(double grid_step, const std::string& out_path,
               OutputFormat format, std::ostream& out) {
  const VerifyReport report = verify_closed_forms(grid_step);
  Table t;
  t.comments = {
      "closed-form verification over the (r, q) grid, step " +
          fmt17(grid_step),
      "sim columns are density-matrix results; closed columns are the "
      "formulas",
      "conditional quantities are nan where the post-selected branch has "
      "probability 0",
  };
  for (const auto& row : report.rows) {
    Row r;
    r.add("r", row.r);
    r.add("q", row.q);
    r.add("g_eta_sim", row.g_eta_sim);
    r.add("g_eta_closed", row.closed.g_eta);
    r.add("fid_ad_sim", row.fid_ad_sim);
    r.add("fid_ad_closed", row.closed.fid_ad);
    r.add("fid_wm_sim", row.fid_wm_sim);
    r.add("fid_wm_closed", row.closed.fid_wm);
    r.add("p_wm_sim", row.p_wm_sim);
    r.add("p_wm_closed", row.closed.p_wm);
    r.add("p_total_sim", row.p_total_sim);
    r.add("p_total_composed", row.closed.p_total_composed);
    r.add("p_total_alt", row.closed.p_total_alt);
    r.add("abs_error", row.abs_error);
    t.rows.push_back(std::move(r));
  }
  if (!out_path.empty()) {
    const int rc = write_table(t, out_path, format, out);
    if (rc != 0) return rc;
  }

  out << "total-probability discrepancy table (composed vs alternative "
         "closed form):\n";
  out << "  r q p_total_composed p_total_alt difference\n";
  for (const auto& row : report.rows) {
    const double diff =
        std::abs(row.closed.p_total_composed - row.closed.p_total_alt);
    out << "  " << fmt17(row.r) << " " << fmt17(row.q) << " "
        << fmt17(row.closed.p_total_composed) << " "
        << fmt17(row.closed.p_total_alt) << " " << fmt17(diff) << "\n";
  }
  out << "largest discrepancy: " << fmt17(report.discrepancy.difference)
      << " at r=" << fmt17(report.discrepancy.r)
      << " q=" << fmt17(report.discrepancy.q) << "\n";
  out << "max |simulated - closed form| = " << fmt17(report.max_abs_error)
      << " over " << report.rows.size() << " grid points\n";
  const bool ok = report.max_abs_error < kVerifyTol;
  if (!ok) {
    for (const auto& row : report.rows) {
      if (row.abs_error >= kVerifyTol) {
        out << "tolerance breach at r=" << fmt17(row.r)
            << " q=" << fmt17(row.q) << " (error " << fmt17(row.abs_error)
            << ")\n";
        break;
      }
    }
  }
  out << (ok ? "verify: pass\n" : "verify: FAIL\n");
  return ok ? 0 : 1;
}

// ---- subcommand: circuit-run -----------------------------------------------

struct CircuitRunOptions {
  std::string config = "ideal";  // ideal | damped | purified | gate-noise
  double r = 0.3;
  double q = 0.64;
  double y2 = 1.0;
  double eta = 1.0;
  std::int64_t shots = 0;
  std::uint64_t seed = 12345;
  std::string dump_circuit;
};

int cmd_circuit_run(const CircuitRunOptions& opt, std::ostream& out) {
  SwapCircuit sc;
  if (opt.config == "ideal") {
    sc = swap_circuit(std::nullopt, std::nullopt);
  } else if (opt.config == "damped") {
    sc = swap_circuit(std::nullopt, opt.r);
  } else if (opt.config == "purified") {
    sc = purified_swap_circuit(opt.r, opt.q);
  } else if (opt.config == "gate-noise") {
    sc = swap_circuit(GateNoiseParams{opt.y2, opt.eta}, std::nullopt);
  } else {
    out << "error: unknown --config " << opt.config << "\n";
    return 2;
  }
  if (!opt.dump_circuit.empty()) {
    std::ofstream f(opt.dump_circuit, std::ios::binary);
    if (!f) {
      out << "error: cannot open " << opt.dump_circuit << "\n";
      return 1;
    }
    f << sc.circuit.serialize();
  }
  out << "config " << opt.config << ", cnot count " << sc.cnot_count << "\n";
  const SwapAnalysis an = analyze_swap(sc);
  out << "outcome probability fidelity\n";
  for (int i = 0; i < 4; ++i) {
    const auto o = static_cast<CharlieOutcome>(i);
    out << "  " << outcome_name(o) << "  "
        << fmt17(an.named[static_cast<std::size_t>(i)].probability) << "  "
        << fmt17(an.fidelity[static_cast<std::size_t>(i)]) << "\n";
  }
  out << "discarded/other probability: " << fmt17(an.other_probability)
      << "\n";
  out << "average fidelity over all outcomes: "
      << fmt17(an.average_fidelity) << "\n";
  if (opt.shots > 0) {
    const ShotResult shots =
        sample_shots(sc.circuit, opt.shots, opt.seed, sc.noise);
    out << "sampled outcomes (" << opt.shots << " shots, seed " << opt.seed
        << ", rng " << shots.rng_name << "):\n";
    for (const auto& [bits, count] : shots.counts) {
      out << "  " << bits << " " << count << "\n";
    }
  }
  return 0;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  for (double v : out) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw CLI::ValidationError("grid values must lie in [0, 1]");
    }
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"deterministic W-state entanglement swapping simulator"};
  app.require_subcommand(1);

  IdealOptions ideal_opt;
  CLI::App* ideal = app.add_subcommand("ideal", "run the noiseless protocol");
  ideal->add_option("--shots", ideal_opt.shots, "sample final-state counts");
  ideal->add_option("--seed", ideal_opt.seed, "sampler seed");
  ideal->add_option("--dump-circuit", ideal_opt.dump_circuit,
                    "write the circuit text form to this path");

  SweepConfig sweep_cfg;
  std::string mode_str = "purify";
  std::string format_str = "csv";
  std::string r_text, q_text, y2_text, eta_text;
  double sweep_step = 0.1;
  CLI::App* sweep =
      app.add_subcommand("sweep", "emit per-grid-point data for plotting");
  sweep->add_option("--mode", mode_str, "damping | purify | gate-noise");
  sweep->add_option("--r", r_text, "comma-separated r values");
  sweep->add_option("--q", q_text, "comma-separated q values");
  sweep->add_option("--y2", y2_text, "comma-separated y2 values");
  sweep->add_option("--eta", eta_text, "comma-separated eta values");
  sweep->add_option("--grid-step", sweep_step,
                    "step for default grids {0, step, ..., <= 0.95}");
  sweep->add_option("--shots", sweep_cfg.shots, "must stay 0 (exact)");
  sweep->add_option("--seed", sweep_cfg.seed, "recorded in output");
  sweep->add_option("--out", sweep_cfg.output_path, "output file path");
  sweep->add_option("--format", format_str, "csv | json");

  double verify_step = 0.1;
  std::string verify_out, verify_format = "csv";
  CLI::App* verify = app.add_subcommand(
      "verify", "compare simulation against the closed forms");
  verify->add_option("--grid-step", verify_step, "grid step in (0, 0.5]");
  verify->add_option("--out", verify_out, "also write per-point rows here");
  verify->add_option("--format", verify_format, "csv | json");

  CircuitRunOptions crun;
  CLI::App* circuit =
      app.add_subcommand("circuit-run", "run the gate-level executor");
  circuit->add_option("--config", crun.config,
                      "ideal | damped | purified | gate-noise");
  circuit->add_option("--r", crun.r, "decay rate");
  circuit->add_option("--q", crun.q, "weak measurement strength");
  circuit->add_option("--y2", crun.y2, "CNOT success probability");
  circuit->add_option("--eta", crun.eta, "readout accuracy");
  circuit->add_option("--shots", crun.shots, "sample outcome counts");
  circuit->add_option("--seed", crun.seed, "sampler seed");
  circuit->add_option("--dump-circuit", crun.dump_circuit,
                      "write the circuit text form to this path");

  std::vector<const char*> argv;
  argv.push_back("wswap");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    out << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*ideal) return cmd_ideal(ideal_opt, out);
    if (*sweep) {
      SweepMode mode;
      if (mode_str == "damping") {
        mode = SweepMode::kDamping;
      } else if (mode_str == "purify") {
        mode = SweepMode::kPurify;
      } else if (mode_str == "gate-noise") {
        mode = SweepMode::kGateNoise;
      } else {
        out << "usage error: unknown --mode " << mode_str << "\n";
        return 2;
      }
      if (format_str == "csv") {
        sweep_cfg.format = OutputFormat::kCsv;
      } else if (format_str == "json") {
        sweep_cfg.format = OutputFormat::kJson;
      } else {
        out << "usage error: unknown --format " << format_str << "\n";
        return 2;
      }
      // Default grids stop at 0.95: at r = 1 or q = 1 the post-selected
      // branch is empty.
      std::vector<double> def;
      for (int i = 0; i * sweep_step <= 0.95 + 1e-12; ++i) {
        def.push_back(i * sweep_step);
      }
      sweep_cfg.r_grid = r_text.empty() ? def : parse_grid(r_text);
      sweep_cfg.q_grid = q_text.empty() ? def : parse_grid(q_text);
      sweep_cfg.y2_grid = y2_text.empty() ? std::vector<double>{1.0, 0.98,
                                                                0.96, 0.94,
                                                                0.92, 0.9}
                                          : parse_grid(y2_text);
      sweep_cfg.eta_grid = eta_text.empty() ? std::vector<double>{1.0, 0.98,
                                                                  0.96, 0.94,
                                                                  0.92, 0.9}
                                            : parse_grid(eta_text);
      return cmd_sweep(sweep_cfg, mode, out);
    }
    if (*verify) {
      OutputFormat fmt =
          verify_format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
      return cmd_verify(verify_step, verify_out, fmt, out);
    }
    if (*circuit) return cmd_circuit_run(crun, out);
  } catch (const CLI::ValidationError& e) {
    out << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    out << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  }
  out << "usage error: no subcommand\n";
  return 2;
}

}  // namespace wswap
