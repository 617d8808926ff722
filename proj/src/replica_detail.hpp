// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#pragma once

#include <span>
#include <vector>

#include "vecoder/replica.hpp"

namespace vecoder::replica::detail {

/// P(a < Z < b) for a standard normal Z, accurate in both tails.
double gaussian_mass(double a, double b);

/// Moments of the nearest-point map of a sorted real set, x(t) = nearest(t)
/// for t = sigma z, against z ~ N(0, 1):
///   second_moment = E[x^2], correlation = E[x z].
struct LineMoments {
  double second_moment = 0.0;
  double correlation = 0.0;
};
LineMoments line_moments(std::span<const double> sorted_points, double sigma);

std::vector<double> sorted_copy(std::span<const double> points);
ReplicaSolution divergent(std::size_t iterations);

}  // namespace vecoder::replica::detail
