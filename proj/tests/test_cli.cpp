// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "vecoder/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = vecoder::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / ("vecoder_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("solve reports converged and divergent runs") {
  auto r = run({"solve", "--family", "inverse-gramian", "--alpha", "1", "--lattice", "1d", "--L", "2"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(std::abs(j["es"].get<double>() - 2.6942) < 1e-3);
  CHECK(j["converged"] == true);

  r = run({"solve", "--alpha", "0.5", "--lattice", "1d", "--L", "1"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["es"].get<double>() == doctest::Approx(2.0));

  r = run({"solve", "--alpha", "1.0", "--lattice", "1d", "--L", "1"});
  CHECK(r.code == 2);
  j = json::parse(r.out);
  CHECK(j["diverged"] == true);
  CHECK(j["es"].is_null());
  for (const char* key : {"alpha", "q", "b", "p", "es", "eb", "es_db", "converged", "diverged", "iterations"}) {
    CHECK(j.contains(key));
  }
}

TEST_CASE("solve covers every lattice and both families") {
  for (const char* lattice : {"1d", "quadrature", "checkerboard", "semidiscrete"}) {
    for (const char* family : {"mp", "inverse-gramian"}) {
      const auto r = run({"solve", "--family", family, "--lattice", lattice, "--alpha", "0.5", "--L", "3"});
      CHECK(r.code == 0);
      CHECK(json::parse(r.out)["es"].get<double>() > 0.0);
    }
  }
  const auto r = run({"solve", "--alpha", "1", "--points", "1,-3"});
  CHECK(std::abs(json::parse(r.out)["es"].get<double>() - 2.6942) < 1e-3);
}

TEST_CASE("usage and library errors give nonzero exit codes") {
  CHECK(run({}).code != 0);
  CHECK(run({"solve"}).code != 0);
  CHECK(run({"solve", "--alpha", "0.5", "--lattice", "hexagonal"}).code != 0);
  CHECK(run({"bogus"}).code != 0);
  auto r = run({"solve", "--alpha", "-1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("error") != std::string::npos);
  r = run({"solve", "--alpha", "0.5", "--L", "2", "--points", "1,-3,5"});
  CHECK(r.code == 1);
}

TEST_CASE("sweep writes deterministic CSV with a manifest") {
  const auto dir = scratch_dir();
  const auto a = (dir / "l1.csv").string();
  const auto b = (dir / "l1b.csv").string();
  const std::vector<std::string> flags{"--alpha-min", "0.1", "--alpha-max", "0.9", "--steps", "9", "--L", "1"};
  auto args = flags;
  args.insert(args.begin(), "sweep");
  args.insert(args.end(), {"--out", a});
  auto r = run(args);
  CHECK(r.code == 0);
  args.back() = b;
  CHECK(run(args).code == 0);
  const auto text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.find('\r') == std::string::npos);

  const auto rows = csv_rows(text);
  REQUIRE(rows.size() == 10);
  CHECK(text.substr(0, text.find('\n')) == "alpha,q,b,p,es,eb,es_db,converged,diverged,iterations");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double alpha = std::stod(rows[i][0]);
    CHECK(std::stod(rows[i][4]) == doctest::Approx(1.0 / (1.0 - alpha)));
    CHECK(rows[i][7] == "true");
  }

  const auto m = json::parse(slurp(a + ".manifest.json"));
  CHECK(m["command"] == "sweep");
  CHECK(m["outputs"][0] == a);
  CHECK(m.contains("timestamp"));
  CHECK(m["config_hash"].get<std::string>().size() == 16);
  // Standard output carries the manifest without the timestamp.
  const auto summary = json::parse(r.out);
  CHECK_FALSE(summary.contains("timestamp"));
  CHECK(summary["config_hash"] == m["config_hash"]);
  fs::remove_all(dir);
}

TEST_CASE("quadrature sweep approaches 4/3 per bit") {
  const auto r = run({"sweep", "--lattice", "quadrature", "--L", "100", "--alpha-min", "0.5", "--alpha-max", "4",
                      "--steps", "8"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  const double eb_last = std::stod(rows.back()[5]);
  CHECK(std::abs(eb_last - 4.0 / 3.0) < 0.05 * 4.0 / 3.0);
}

TEST_CASE("parallel sweep matches warm sweep") {
  const std::vector<std::string> base{"sweep", "--alpha-min", "0.2", "--alpha-max", "2", "--steps", "10", "--L", "3"};
  auto par = base;
  par.insert(par.end(), {"--mode", "parallel", "--threads", "3"});
  const auto w = csv_rows(run(base).out), p = csv_rows(run(par).out);
  REQUIRE(w.size() == p.size());
  for (std::size_t i = 1; i < w.size(); ++i) {
    CHECK(w[i][7] == p[i][7]);
    if (w[i][7] == "true") CHECK(std::stod(w[i][4]) == doctest::Approx(std::stod(p[i][4])).epsilon(1e-9));
    else CHECK(w[i][4].empty());
  }
}

TEST_CASE("simulate compares against the replica prediction") {
  auto r = run({"simulate", "--k", "8", "--n", "16", "--samples", "200", "--seed", "42", "--lattice", "1d", "--L", "2"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  const double ratio = j["ratio"];
  CHECK(ratio >= 0.9);
  CHECK(ratio <= 1.1);
  CHECK(j["energies"].size() == 200);

  const std::vector<std::string> base{"simulate", "--k", "6", "--n", "12", "--samples", "30", "--seed", "3"};
  auto brute = base, sphere = base;
  brute.insert(brute.end(), {"--solver", "brute"});
  sphere.insert(sphere.end(), {"--solver", "sphere"});
  CHECK(json::parse(run(brute).out)["mean_es"] == json::parse(run(sphere).out)["mean_es"]);

  const std::vector<std::string> one{"simulate", "--k", "4", "--n", "8", "--samples", "1", "--seed", "7"};
  CHECK(run(one).out == run(one).out);
}

TEST_CASE("simulate writes per-sample energies") {
  const auto dir = scratch_dir();
  const auto path = (dir / "e.csv").string();
  const auto r = run({"simulate", "--k", "4", "--n", "8", "--samples", "5", "--seed", "1", "--energies-csv", path});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(slurp(path));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"sample", "energy"});
  CHECK(std::stod(rows[3][1]) == doctest::Approx(json::parse(r.out)["energies"][2].get<double>()));
  CHECK(json::parse(slurp(path + ".manifest.json"))["seed"] == 1);
  fs::remove_all(dir);
}

TEST_CASE("simulate explains budget failures") {
  const auto r = run({"simulate", "--k", "30", "--n", "40", "--samples", "2", "--solver", "brute"});
  CHECK(r.code == 1);
  CHECK(r.err.find("reduce k or L") != std::string::npos);
}

TEST_CASE("table1") {
  const auto r = run({"table1"});
  CHECK(r.code == 0);
  const auto json_start = r.out.find('{');
  const auto j = json::parse(r.out.substr(json_start));
  const auto& t = j["table"];
  CHECK(t[0]["diverged"] == true);
  CHECK(std::abs(t[1]["es"].get<double>() - 2.6942) < 1e-4);
  CHECK(std::abs(t[1]["es_db"].get<double>() - 4.3043) < 1e-4);
  CHECK(std::abs(t[4]["es"].get<double>() - 2.6655) < 1e-3);
  CHECK(j["all_within_tolerance"] == true);
  CHECK(r.out.find("inf") != std::string::npos);
}

TEST_CASE("verify and fault injection") {
  auto r = run({"verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("0.479") != std::string::npos);
  r = run({"verify", "--inject-branch-fault"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL inverse lemma") != std::string::npos);
}

TEST_CASE("threshold") {
  auto r = run({"threshold", "--L", "1", "--lo", "0.5", "--hi", "1.5"});
  REQUIRE(r.code == 0);
  CHECK(std::abs(json::parse(r.out)["threshold"].get<double>() - 1.0) <= 1e-3);
  r = run({"threshold", "--L", "2", "--lo", "2", "--hi", "3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("BadBracket") != std::string::npos);
}

TEST_CASE("config fingerprint") {
  CHECK(vecoder::cli::fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(vecoder::cli::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}
