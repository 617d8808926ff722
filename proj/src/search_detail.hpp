// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#pragma once

#include <vector>

#include "vecoder/montecarlo.hpp"

namespace vecoder::mc::detail {

/// Candidate values of every coordinate, in tie-break order.
using Candidates = std::vector<std::vector<cplx>>;

/// Energies closer than this count as equal and fall back to the index order.
inline constexpr double kTieTolerance = 1e-12;

Candidates candidates_for(const Alphabet& a, std::span<const std::size_t> s);

Precoded exhaustive(const CMatrix& J, const Candidates& sets, std::size_t budget);
Precoded branch_and_bound(const CMatrix& J, const Candidates& sets);

}  // namespace vecoder::mc::detail
