// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#pragma once

#include <json.hpp>
#include <ostream>
#include <span>
#include <string>

#include "vecoder/alphabet.hpp"
#include "vecoder/montecarlo.hpp"
#include "vecoder/replica.hpp"

namespace vecoder::io {

using nlohmann::json;

/// Column order of sweep CSV files.
inline constexpr const char* kSweepHeader = "alpha,q,b,p,es,eb,es_db,converged,diverged,iterations";

/// 10 log10(es); +inf for divergent solutions.
double to_db(double es);

/// Shortest round-trip decimal form with '.' as separator; "inf", "-inf", "nan" otherwise.
std::string format_number(double v);

/// {alpha, q, b, p, es, eb, es_db, converged, diverged, iterations}; values
/// that are not finite or not defined are null.
json solution_record(double alpha, const replica::ReplicaSolution& s);

/// {kind, L, points, symbols}.
json alphabet_to_json(const Alphabet& a);
Alphabet alphabet_from_json(const json& j);

json sim_result_to_json(const mc::SimResult& r);

/// Header line plus one row per point. Undefined values are left empty.
void write_sweep_csv(std::ostream& os, std::span<const replica::SweepPoint> points);

/// Columns: sample,energy.
void write_energies_csv(std::ostream& os, const mc::SimResult& r);

}  // namespace vecoder::io
