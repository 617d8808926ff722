// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vecoder/alphabet.hpp"
#include "vecoder/gaussian.hpp"
#include "vecoder/rmt.hpp"

namespace vecoder::replica {

using vecoder::gaussian_q;

struct FixedPointConfig {
  double damping = 0.5;              ///< in (0, 1]; 1 is plain Picard iteration
  double tol = 1e-12;                ///< relative change per iteration at convergence
  std::size_t max_iter = 200000;
  int quad_order = 64;               ///< outer-panel count of the 2-D integration rule
  std::optional<double> init_q;      ///< defaults to the smallest |c|^2 (x2 for quadrature)
  std::optional<double> init_b;      ///< defaults: b = 1 (general), p = max(1 - alpha, 0.1) (closed forms)
  double divergence_cap = 1e6;       ///< energy per symbol above which a run is divergent
  double fd_step = 1e-6;             ///< relative step of the R' finite difference

  void validate() const;
};

/// Converged macroscopic parameters. `es` is +inf for divergent runs.
struct ReplicaSolution {
  double q = 0.0;
  double b = 0.0;
  std::optional<double> p;
  double es = 0.0;
  double eb = 0.0;
  bool converged = false;
  bool diverged = false;
  std::size_t iterations = 0;
};

/// q * d/db [b R(-b)] = q (R(-b) - b R'(-b)).
double energy_from_qb(double q, double b, const rmt::RTransformSpec& spec, double fd_step = 1e-6);

/// Damped iteration of the general replica-symmetric pair (q, b) for an
/// arbitrary R-transform and relaxed alphabet.
ReplicaSolution solve_general(const rmt::RTransformSpec& spec, const Alphabet& a,
                              const DataPrior& prior, const FixedPointConfig& cfg = {});

// Closed forms for channel inversion (inverse-Gramian spectrum). `points` is
// the signed representation set of one data symbol, e.g. {1, -3, 5}; order
// does not matter.

/// One-dimensional lattice, rectangular channel, iterated in (q, p).
ReplicaSolution solve_1d(double alpha, std::span<const double> points, const FixedPointConfig& cfg = {});
/// One-dimensional lattice, square channel (alpha = 1), scalar iteration in E_s.
ReplicaSolution solve_square_1d(std::span<const double> points, const FixedPointConfig& cfg = {});
/// Gray-mapped quadrature lattice. eb = es / 2.
ReplicaSolution solve_quadrature(double alpha, std::span<const double> points,
                                 const FixedPointConfig& cfg = {});
/// Semi-discrete lattice (discrete real part, free imaginary part). eb = es.
ReplicaSolution solve_semidiscrete(double alpha, std::span<const double> points,
                                   const FixedPointConfig& cfg = {});

enum class SolverKind { OneDim, SquareOneDim, Quadrature, SemiDiscrete, General };

/// Everything needed to solve at a given load besides the load itself.
struct SolverSpec {
  SolverKind kind = SolverKind::OneDim;
  std::vector<double> points = alternating_lattice(2);
  // Used by SolverKind::General only.
  AlphabetKind lattice = AlphabetKind::OneDimLattice;
  rmt::Family family = rmt::Family::InverseGramian;

  /// Closed form when one exists for (lattice, family), the general solver otherwise.
  static SolverSpec for_lattice(AlphabetKind lattice, std::vector<double> points,
                                rmt::Family family = rmt::Family::InverseGramian);
};

ReplicaSolution solve_at(const SolverSpec& spec, double alpha, const FixedPointConfig& cfg = {});

enum class SweepMode { WarmStart, ParallelColdStart };

struct SweepPoint {
  double alpha = 0.0;
  ReplicaSolution solution;
  std::optional<std::string> error;
};

/// One solve per grid point; never throws for per-point failures.
/// `threads` = 0 picks the hardware concurrency (capped by VECODER_THREADS).
std::vector<SweepPoint> sweep(const SolverSpec& spec, std::span<const double> alpha_grid,
                              const FixedPointConfig& cfg = {}, SweepMode mode = SweepMode::WarmStart,
                              unsigned threads = 0);

/// Bisection on the load for the onset of divergence, to `abs_tol`.
/// Throws BadBracket unless the solve converges at lo and fails at hi.
double find_threshold(const SolverSpec& spec, const FixedPointConfig& cfg, double lo, double hi,
                      double abs_tol = 1e-3);

/// Load at which f(alpha) - g(alpha) changes sign, by bisection to `abs_tol`.
double find_crossover(const std::function<double(double)>& f, const std::function<double(double)>& g,
                      double lo, double hi, double abs_tol = 1e-4);

/// Worker count honouring VECODER_THREADS.
unsigned default_thread_count();

}  // namespace vecoder::replica
