// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#include "vecoder/gaussian.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

namespace vecoder {

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double gaussian_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

QuadratureRule composite_gauss_legendre(double lo, double hi, std::span<const double> breakpoints,
                                        double max_width) {
  using Rule = boost::math::quadrature::gauss<double, 8>;
  std::vector<double> edges{lo, hi};
  for (double b : breakpoints) {
    if (b > lo && b < hi) edges.push_back(b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  // Boost stores the non-negative half of the symmetric abscissae.
  const auto& absc = Rule::abscissa();
  const auto& wts = Rule::weights();

  QuadratureRule rule;
  for (std::size_t e = 1; e < edges.size(); ++e) {
    const double a = edges[e - 1];
    const double b = edges[e];
    const auto pieces = static_cast<int>(std::max(1.0, std::ceil((b - a) / max_width)));
    const double width = (b - a) / pieces;
    for (int k = 0; k < pieces; ++k) {
      const double pa = a + k * width;
      const double half = 0.5 * width;
      const double mid = pa + half;
      for (std::size_t i = 0; i < absc.size(); ++i) {
        if (absc[i] == 0.0) {
          rule.nodes.push_back(mid);
          rule.weights.push_back(half * wts[i]);
          continue;
        }
        rule.nodes.push_back(mid - half * absc[i]);
        rule.weights.push_back(half * wts[i]);
        rule.nodes.push_back(mid + half * absc[i]);
        rule.weights.push_back(half * wts[i]);
      }
    }
  }
  return rule;
}

}  // namespace vecoder
