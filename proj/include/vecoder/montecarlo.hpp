// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vecoder/alphabet.hpp"
#include "vecoder/replica.hpp"

namespace vecoder::mc {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Enumeration budget of the brute-force search, in candidate vectors.
inline constexpr std::size_t kDefaultBudget = std::size_t{1} << 24;
/// Channels with cond(H H^H) above this are discarded and redrawn.
inline constexpr double kMaxCondition = 1e12;

enum class ExactSolver { BruteForce, Sphere, Auto };

std::string_view to_string(ExactSolver s);
ExactSolver exact_solver_from_string(std::string_view s);

struct ChannelConfig {
  std::size_t k = 8;        ///< data length (rows of H)
  std::size_t n = 16;       ///< transmit antennas (columns of H)
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  ExactSolver solver = ExactSolver::Auto;

  double alpha() const { return static_cast<double>(k) / static_cast<double>(n); }
  void validate() const;
};

/// Minimiser of x^H J x over the product set and the energy (1/k) x^H J x.
struct Precoded {
  CVector x;
  double energy = 0.0;
  std::size_t nodes = 0;  ///< candidates (brute force) or tree nodes (sphere) visited
};

/// k x n matrix with i.i.d. CN(0, 1/n) entries.
CMatrix sample_channel(std::size_t k, std::size_t n, std::mt19937_64& rng);

/// (H H^H)^{-1}, Hermitian by construction. Throws SingularChannel when the
/// condition number of H H^H exceeds `max_condition`.
CMatrix gramian_inverse(const CMatrix& H, double max_condition = kMaxCondition);

/// (1/k) Re x^H J x.
double quadratic_energy(const CMatrix& J, const CVector& x);

/// Exhaustive search over B_{s_1} x ... x B_{s_k}. Among minimisers within
/// 1e-12 the lexicographically smallest index vector (positions as returned by
/// enumerate_points) wins.
Precoded precode_exact(const CMatrix& J, std::span<const std::size_t> s, const Alphabet& a,
                       std::size_t budget = kDefaultBudget);

/// Depth-first branch and bound on the Cholesky factor of J. Same minimiser
/// and tie rule as precode_exact.
Precoded precode_sphere(const CMatrix& J, std::span<const std::size_t> s, const Alphabet& a);

/// Semi-discrete alphabet: the imaginary parts are eliminated in closed form,
/// leaving a real quadratic program over the discrete real parts, solved with
/// `inner` (Auto picks the sphere search).
Precoded precode_semidiscrete(const CMatrix& J, std::span<const std::size_t> s, const Alphabet& a,
                              ExactSolver inner = ExactSolver::Auto, std::size_t budget = kDefaultBudget);

/// Dispatches on the alphabet kind and solver choice.
Precoded precode(const CMatrix& J, std::span<const std::size_t> s, const Alphabet& a,
                 ExactSolver solver = ExactSolver::Auto);

struct SimResult {
  double mean_es = 0.0;
  double stderr_es = 0.0;
  std::vector<double> energies;  ///< by sample index; NaN for failed samples
  std::optional<double> replica_es;
  ChannelConfig config;
  AlphabetKind lattice = AlphabetKind::OneDimLattice;
  std::size_t L = 0;
  std::size_t resamples = 0;  ///< singular channels redrawn
  std::vector<std::pair<std::size_t, std::string>> failures;  ///< sample index, message
};

/// Draws `samples` channels and data vectors, solves each instance exactly and
/// aggregates the energies. Throws NumericalFailure if more than 10% of the
/// samples fail. `threads` = 0 picks default_thread_count().
SimResult run_experiment(const ChannelConfig& cfg, const Alphabet& a,
                         const std::optional<replica::ReplicaSolution>& replica_ref = std::nullopt,
                         const std::optional<DataPrior>& prior = std::nullopt, unsigned threads = 0);

}  // namespace vecoder::mc
