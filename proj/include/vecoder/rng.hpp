// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#pragma once

#include <cstdint>
#include <random>

namespace vecoder::mc {

/// One SplitMix64 step; advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

/// Independent generator for sample `index` of a run seeded with `seed`.
/// The stream depends only on (seed, index), so the set of samples does not
/// change with the number of worker threads.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index);

}  // namespace vecoder::mc
