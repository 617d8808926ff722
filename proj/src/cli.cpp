// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fmt/format.h>
#include <fstream>
#include <optional>

#include "vecoder/cli.hpp"
#include "vecoder/errors.hpp"
#include "vecoder/json_io.hpp"
#include "vecoder/montecarlo.hpp"
#include "vecoder/replica.hpp"
#include "vecoder/verify.hpp"

namespace vecoder::cli {

using io::json;

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

// Flags shared by solve, sweep and threshold.
struct SolverFlags {
  std::string family = "inverse-gramian";
  std::string lattice = "1d";
  std::size_t L = 2;
  std::vector<double> points;
  double tol = 1e-12;
  std::size_t max_iter = 200000;
  double damping = 0.5;
  int quad_order = 64;

  CLI::Option* L_opt = nullptr;

  void add_to(CLI::App& app) {
    app.add_option("--family", family, "Spectrum of J: mp or inverse-gramian")
        ->check(CLI::IsMember({"mp", "inverse-gramian"}));
    app.add_option("--lattice", lattice, "Relaxed alphabet")
        ->check(CLI::IsMember({"1d", "quadrature", "checkerboard", "semidiscrete"}));
    L_opt = app.add_option("--L", L, "Number of lattice points per dimension")->check(CLI::PositiveNumber);
    app.add_option("--points", points, "Comma-separated signed lattice points, e.g. 1,-3,5")->delimiter(',');
    app.add_option("--tol", tol, "Relative convergence tolerance")->check(CLI::PositiveNumber);
    app.add_option("--max-iter", max_iter, "Iteration limit")->check(CLI::PositiveNumber);
    app.add_option("--damping", damping, "Damping factor in (0, 1]");
    app.add_option("--quad-order", quad_order, "Outer panel count of the 2-D integration rule");
  }

  std::vector<double> resolved_points() const {
    if (points.empty()) return alternating_lattice(L);
    if (L_opt->count() > 0 && L != points.size()) throw InvalidArgument("--L disagrees with the length of --points");
    return points;
  }

  replica::SolverSpec spec() const {
    return replica::SolverSpec::for_lattice(alphabet_kind_from_string(lattice), resolved_points(),
                                            rmt::family_from_string(family));
  }

  replica::FixedPointConfig config() const {
    replica::FixedPointConfig cfg;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.damping = damping;
    cfg.quad_order = quad_order;
    cfg.validate();
    return cfg;
  }

  json to_json() const {
    return json{{"family", family}, {"lattice", lattice}, {"points", resolved_points()}, {"tol", tol},
                {"max_iter", max_iter}, {"damping", damping}, {"quad_order", quad_order}};
  }
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                     tm.tm_hour, tm.tm_min, tm.tm_sec);
}

// Deterministic part of a run manifest; the timestamp is added only to the
// sidecar files so that standard output stays reproducible.
json manifest(const std::string& command, const json& config, const std::vector<std::string>& outputs,
              std::optional<std::uint64_t> seed = std::nullopt) {
  return json{{"command", command},
              {"version", kVersion},
              {"seed", seed ? json(*seed) : json(nullptr)},
              {"config", config},
              {"config_hash", fmt::format("{:016x}", fnv1a(config.dump()))},
              {"outputs", outputs}};
}

void write_sidecar(const std::string& path, json m) {
  m["timestamp"] = utc_timestamp();
  std::ofstream f(path + ".manifest.json", std::ios::binary);
  f << m.dump(2) << '\n';
  if (!f) throw IoError("cannot write " + path + ".manifest.json");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  return f;
}

int cmd_solve(const SolverFlags& flags, double alpha, std::ostream& out) {
  const auto sol = replica::solve_at(flags.spec(), alpha, flags.config());
  out << io::solution_record(alpha, sol).dump(2) << '\n';
  return sol.converged ? kExitOk : kExitDiverged;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t steps) {
  if (steps == 0) throw InvalidArgument("--steps must be positive");
  if (!(lo > 0.0) || !(hi >= lo)) throw InvalidArgument("need 0 < --alpha-min <= --alpha-max");
  std::vector<double> grid(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    grid[i] = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return grid;
}

struct SweepFlags {
  double alpha_min = 0.1;
  double alpha_max = 2.0;
  std::size_t steps = 20;
  std::string out;
  std::string mode = "warm";
  unsigned threads = 0;
};

int cmd_sweep(const SolverFlags& flags, const SweepFlags& sf, std::ostream& out) {
  const auto grid = linear_grid(sf.alpha_min, sf.alpha_max, sf.steps);
  const auto mode = sf.mode == "warm" ? replica::SweepMode::WarmStart : replica::SweepMode::ParallelColdStart;
  const auto points = replica::sweep(flags.spec(), grid, flags.config(), mode, sf.threads);

  json config = flags.to_json();
  config["alpha_min"] = sf.alpha_min;
  config["alpha_max"] = sf.alpha_max;
  config["steps"] = sf.steps;
  config["mode"] = sf.mode;
  if (sf.out.empty() || sf.out == "-") {
    io::write_sweep_csv(out, points);
    return kExitOk;
  }
  {
    auto f = open_out(sf.out);
    io::write_sweep_csv(f, points);
  }
  const json m = manifest("sweep", config, {sf.out});
  write_sidecar(sf.out, m);
  json summary = m;
  summary["rows"] = points.size();
  std::size_t failed = 0;
  for (const auto& p : points) failed += p.error ? 1 : 0;
  summary["errors"] = failed;
  out << summary.dump(2) << '\n';
  return kExitOk;
}

struct SimFlags {
  std::size_t k = 8;
  std::size_t n = 16;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  std::string lattice = "1d";
  std::size_t L = 2;
  std::vector<double> points;
  std::string solver = "auto";
  std::string energies_csv;
  unsigned threads = 0;
};

int cmd_simulate(const SimFlags& sf, std::ostream& out) {
  mc::ChannelConfig cfg;
  cfg.k = sf.k;
  cfg.n = sf.n;
  cfg.samples = sf.samples;
  cfg.seed = sf.seed;
  cfg.solver = mc::exact_solver_from_string(sf.solver);
  cfg.validate();
  const auto kind = alphabet_kind_from_string(sf.lattice);
  const Alphabet a(kind, sf.points.empty() ? alternating_lattice(sf.L) : sf.points);

  std::optional<replica::ReplicaSolution> ref;
  try {
    ref = replica::solve_at(replica::SolverSpec::for_lattice(kind, a.points()), cfg.alpha());
  } catch (const MaxIterations&) {
  }

  const auto r = mc::run_experiment(cfg, a, ref, std::nullopt, sf.threads);
  json j = io::sim_result_to_json(r);
  if (!sf.energies_csv.empty()) {
    {
      auto f = open_out(sf.energies_csv);
      io::write_energies_csv(f, r);
    }
    json config = j["config"];
    const json m = manifest("simulate", config, {sf.energies_csv}, sf.seed);
    write_sidecar(sf.energies_csv, m);
    j["manifest"] = m;
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_table1(std::ostream& out) {
  // Published energies per symbol for the inverted square channel; the last
  // column is the infinite lattice, approximated here by 64 points.
  const std::size_t Ls[] = {1, 2, 3, 4, 64};
  const double published_es[] = {INFINITY, 2.6942, 2.6656, 2.6655, 2.6655};
  const double published_db[] = {INFINITY, 4.3043, 4.2579, 4.2578, 4.2578};

  json rows = json::array();
  bool all_ok = true;
  out << fmt::format("{:>8} {:>12} {:>12} {:>10}\n", "L", "E_s", "E_s [dB]", "status");
  for (std::size_t i = 0; i < std::size(Ls); ++i) {
    const auto sol = replica::solve_square_1d(alternating_lattice(Ls[i]));
    const double db = io::to_db(sol.es);
    bool ok;
    if (std::isinf(published_es[i])) {
      ok = sol.diverged;
    } else {
      ok = sol.converged && std::abs(sol.es - published_es[i]) <= 1e-3 && std::abs(db - published_db[i]) <= 1e-3;
    }
    all_ok = all_ok && ok;
    const std::string label = Ls[i] == 64 ? "64 (inf)" : std::to_string(Ls[i]);
    if (sol.converged) {
      out << fmt::format("{:>8} {:>12.4f} {:>12.4f} {:>10}\n", label, sol.es, db, ok ? "ok" : "DEVIATES");
    } else {
      out << fmt::format("{:>8} {:>12} {:>12} {:>10}\n", label, "inf", "inf", ok ? "ok" : "DEVIATES");
    }
    json row = io::solution_record(1.0, sol);
    row["L"] = Ls[i];
    row["reference_es"] = std::isinf(published_es[i]) ? json("inf") : json(published_es[i]);
    row["deviates"] = !ok;
    rows.push_back(row);
  }
  out << json{{"table", rows}, {"all_within_tolerance", all_ok}}.dump(2) << '\n';
  return all_ok ? kExitOk : kExitError;
}

int cmd_verify(bool inject_fault, std::ostream& out) {
  verify::Options opt;
  opt.inject_branch_fault = inject_fault;
  bool all = true;
  for (const auto& c : verify::run_all(opt)) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    all = all && c.passed;
  }
  out << (all ? "all checks passed" : "some checks failed") << '\n';
  return all ? kExitOk : kExitError;
}

int cmd_threshold(const SolverFlags& flags, double lo, double hi, double abs_tol, std::ostream& out) {
  const double t = replica::find_threshold(flags.spec(), flags.config(), lo, hi, abs_tol);
  json j = flags.to_json();
  j["threshold"] = t;
  j["abs_tol"] = abs_tol;
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Replica analysis and exact simulation of vector precoding", "vecoder"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SolverFlags solve_flags;
  double solve_alpha = 0.5;
  auto* solve = app.add_subcommand("solve", "Solve the replica fixed point at one load");
  solve_flags.add_to(*solve);
  solve->add_option("--alpha", solve_alpha, "Load k/n")->required();

  SolverFlags sweep_flags;
  SweepFlags sf;
  auto* sweep = app.add_subcommand("sweep", "Solve on a uniform grid of loads and write CSV");
  sweep_flags.add_to(*sweep);
  sweep->add_option("--alpha-min", sf.alpha_min, "Smallest load")->required();
  sweep->add_option("--alpha-max", sf.alpha_max, "Largest load")->required();
  sweep->add_option("--steps", sf.steps, "Number of grid points")->required();
  sweep->add_option("--out", sf.out, "CSV output path; standard output if omitted");
  sweep->add_option("--mode", sf.mode, "warm (sequential, warm-started) or parallel (cold starts)")
      ->check(CLI::IsMember({"warm", "parallel"}));
  sweep->add_option("--threads", sf.threads, "Worker threads for parallel mode (0 = automatic)");

  SimFlags sim;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo experiment with exact precoding");
  simulate->add_option("--k", sim.k, "Data length")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--n", sim.n, "Transmit antennas")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--samples", sim.samples, "Channel realisations")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--lattice", sim.lattice, "Relaxed alphabet")
      ->check(CLI::IsMember({"1d", "quadrature", "checkerboard", "semidiscrete"}));
  simulate->add_option("--L", sim.L, "Lattice points per dimension")->check(CLI::PositiveNumber);
  simulate->add_option("--points", sim.points, "Comma-separated signed lattice points")->delimiter(',');
  simulate->add_option("--solver", sim.solver, "Exact solver")->check(CLI::IsMember({"brute", "sphere", "auto"}));
  simulate->add_option("--energies-csv", sim.energies_csv, "Write per-sample energies here");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = automatic)");

  auto* table1 = app.add_subcommand("table1", "Energy per symbol of the inverted square channel");

  bool inject = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run the cross-module verification suite");
  verify_cmd->add_flag("--inject-branch-fault", inject)->group("");

  SolverFlags thr_flags;
  double lo = 0.5;
  double hi = 3.0;
  double abs_tol = 1e-3;
  auto* threshold = app.add_subcommand("threshold", "Bisect for the load at which the solution diverges");
  thr_flags.add_to(*threshold);
  threshold->add_option("--lo", lo, "Load known to converge");
  threshold->add_option("--hi", hi, "Load known to diverge");
  threshold->add_option("--abs-tol", abs_tol, "Width of the final bracket")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*solve) return cmd_solve(solve_flags, solve_alpha, out);
    if (*sweep) return cmd_sweep(sweep_flags, sf, out);
    if (*simulate) return cmd_simulate(sim, out);
    if (*table1) return cmd_table1(out);
    if (*verify_cmd) return cmd_verify(inject, out);
    if (*threshold) return cmd_threshold(thr_flags, lo, hi, abs_tol, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\nhint: the exact search enumerates |B|^k candidates; lower --k or --L, "
        << "or use --solver sphere\n";
    return kExitError;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace vecoder::cli
