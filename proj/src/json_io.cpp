// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#include <charconv>
#include <cmath>
#include <limits>

#include "vecoder/errors.hpp"
#include "vecoder/json_io.hpp"

namespace vecoder::io {

double to_db(double es) {
  if (!(es > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::isinf(es) ? es : 10.0 * std::log10(es);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_cell(double v) { return std::isfinite(v) ? format_number(v) : std::string(); }

}  // namespace

json solution_record(double alpha, const replica::ReplicaSolution& s) {
  return json{
      {"alpha", alpha},
      {"q", finite_or_null(s.q)},
      {"b", finite_or_null(s.b)},
      {"p", s.p ? finite_or_null(*s.p) : json(nullptr)},
      {"es", finite_or_null(s.es)},
      {"eb", finite_or_null(s.eb)},
      {"es_db", finite_or_null(to_db(s.es))},
      {"converged", s.converged},
      {"diverged", s.diverged},
      {"iterations", s.iterations},
  };
}

json alphabet_to_json(const Alphabet& a) {
  return json{{"kind", std::string(to_string(a.kind()))},
              {"L", a.L()},
              {"points", a.points()},
              {"symbols", a.symbols()}};
}

Alphabet alphabet_from_json(const json& j) {
  try {
    const auto kind = alphabet_kind_from_string(j.at("kind").get<std::string>());
    Alphabet a(kind, j.at("points").get<std::vector<double>>());
    if (j.contains("L") && j.at("L").get<std::size_t>() != a.L()) {
      throw InvalidArgument("alphabet L does not match the number of points");
    }
    return a;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed alphabet JSON: ") + e.what());
  }
}

json sim_result_to_json(const mc::SimResult& r) {
  json energies = json::array();
  for (double e : r.energies) energies.push_back(finite_or_null(e));
  json failures = json::array();
  for (const auto& [i, msg] : r.failures) failures.push_back({{"sample", i}, {"error", msg}});
  json out{
      {"mean_es", r.mean_es},
      {"stderr", r.stderr_es},
      {"replica_es", r.replica_es ? json(*r.replica_es) : json(nullptr)},
      {"ratio", r.replica_es ? json(r.mean_es / *r.replica_es) : json(nullptr)},
      {"seed", r.config.seed},
      {"config",
       {{"k", r.config.k},
        {"n", r.config.n},
        {"alpha", r.config.alpha()},
        {"samples", r.config.samples},
        {"seed", r.config.seed},
        {"solver", std::string(mc::to_string(r.config.solver))},
        {"lattice", std::string(to_string(r.lattice))},
        {"L", r.L}}},
      {"resamples", r.resamples},
      {"failures", failures},
      {"energies", energies},
  };
  return out;
}

void write_sweep_csv(std::ostream& os, std::span<const replica::SweepPoint> points) {
  os << kSweepHeader << '\n';
  for (const auto& pt : points) {
    const auto& s = pt.solution;
    os << format_number(pt.alpha) << ',' << csv_cell(s.q) << ',' << csv_cell(s.b) << ','
       << (s.p ? csv_cell(*s.p) : std::string()) << ',' << csv_cell(s.es) << ',' << csv_cell(s.eb) << ','
       << csv_cell(to_db(s.es)) << ',' << (s.converged ? "true" : "false") << ','
       << (s.diverged ? "true" : "false") << ',' << s.iterations << '\n';
  }
  if (!os) throw IoError("failed writing sweep CSV");
}

void write_energies_csv(std::ostream& os, const mc::SimResult& r) {
  os << "sample,energy\n";
  for (std::size_t i = 0; i < r.energies.size(); ++i) os << i << ',' << csv_cell(r.energies[i]) << '\n';
  if (!os) throw IoError("failed writing energies CSV");
}

}  // namespace vecoder::io
