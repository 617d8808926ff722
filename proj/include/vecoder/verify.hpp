// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vecoder::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Options {
  /// Evaluate the inverse-Gramian R-transform on the wrong square-root branch.
  /// Used to confirm that the lemma check actually detects a broken transform.
  bool inject_branch_fault = false;
  std::size_t exact_instances = 200;
  std::uint64_t seed = 20260101;
};

/// Residual of the R-transform inversion identity on the grid
/// alpha in {0.25, 0.5, 0.75} x 20 values of w in [-2, -0.01].
double max_lemma_residual(bool inject_branch_fault = false);

CheckResult check_inverse_lemma(const Options& opt = {});
/// General replica solver against the closed forms, 1-D L in {2, 3}, alpha in {0.25, 0.5, 1}.
CheckResult check_specialization(const Options& opt = {});
/// No precoding: E_s = 1/(1 - alpha), and scaling the lattice by g scales E_s by g^2.
CheckResult check_scaling(const Options& opt = {});
/// Sphere search against brute force, plus nesting and scaling on the same instances.
CheckResult check_exact_solvers(const Options& opt = {});
/// Checkerboard and quadrature lattices give the same E_b.
CheckResult check_checkerboard(const Options& opt = {});
/// Load where semi-discrete L=1 and quadrature L=100 E_b curves cross.
CheckResult check_crossover(const Options& opt = {});

std::vector<CheckResult> run_all(const Options& opt = {});

}  // namespace vecoder::verify
