// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#pragma once

#include <span>
#include <utility>
#include <vector>

namespace vecoder {

/// Standard normal tail probability Q(x) = P(Z > x).
double gaussian_q(double x);

/// Standard normal density.
double gaussian_pdf(double x);

/// Nodes and weights of a composite 8-point Gauss-Legendre rule on [lo, hi],
/// with panel edges at every breakpoint inside the interval and no panel
/// wider than `max_width`.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule composite_gauss_legendre(double lo, double hi, std::span<const double> breakpoints,
                                        double max_width);

}  // namespace vecoder
