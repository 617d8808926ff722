// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "search_detail.hpp"
#include "vecoder/errors.hpp"
#include "vecoder/montecarlo.hpp"
#include "vecoder/rng.hpp"

namespace vecoder::mc {

std::string_view to_string(ExactSolver s) {
  switch (s) {
    case ExactSolver::BruteForce: return "brute";
    case ExactSolver::Sphere: return "sphere";
    case ExactSolver::Auto: return "auto";
  }
  return "?";
}

ExactSolver exact_solver_from_string(std::string_view s) {
  if (s == "brute") return ExactSolver::BruteForce;
  if (s == "sphere") return ExactSolver::Sphere;
  if (s == "auto") return ExactSolver::Auto;
  throw InvalidArgument("unknown solver '" + std::string(s) + "' (expected brute, sphere or auto)");
}

void ChannelConfig::validate() const {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (n < k) throw InvalidArgument("n must be at least k for H H^H to be invertible");
  if (samples < 1) throw InvalidArgument("samples must be at least 1");
}

CMatrix sample_channel(std::size_t k, std::size_t n, std::mt19937_64& rng) {
  if (k < 1 || n < 1) throw InvalidArgument("channel dimensions must be positive");
  std::normal_distribution<double> g(0.0, std::sqrt(0.5 / static_cast<double>(n)));
  CMatrix H(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < H.rows(); ++i) {
    for (Eigen::Index j = 0; j < H.cols(); ++j) {
      const double re = g(rng);
      const double im = g(rng);
      H(i, j) = cplx(re, im);
    }
  }
  return H;
}

CMatrix gramian_inverse(const CMatrix& H, double max_condition) {
  const CMatrix G = H * H.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(G);
  if (eig.info() != Eigen::Success) throw SingularChannel("eigendecomposition of H H^H failed");
  const auto& ev = eig.eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (!(lo > 0.0) || hi / lo > max_condition) {
    throw SingularChannel("H H^H is singular or too ill-conditioned");
  }
  const CMatrix& V = eig.eigenvectors();
  CMatrix J = V * ev.cwiseInverse().asDiagonal() * V.adjoint();
  return 0.5 * (J + J.adjoint());
}

double quadratic_energy(const CMatrix& J, const CVector& x) {
  return x.dot(J * x).real() / static_cast<double>(x.size());
}

namespace detail {

Candidates candidates_for(const Alphabet& a, std::span<const std::size_t> s) {
  if (s.empty()) throw InvalidArgument("empty data vector");
  Candidates sets;
  sets.reserve(s.size());
  for (std::size_t sym : s) sets.push_back(enumerate_points(a, sym));
  return sets;
}

Precoded exhaustive(const CMatrix& J, const Candidates& sets, std::size_t budget) {
  const std::size_t k = sets.size();
  if (k == 0) throw InvalidArgument("empty data vector");
  if (J.rows() != static_cast<Eigen::Index>(k) || J.cols() != J.rows()) {
    throw InvalidArgument("J does not match the data length");
  }
  std::size_t total = 1;
  for (const auto& c : sets) {
    if (c.empty()) throw InvalidArgument("empty candidate set");
    if (total > budget / c.size()) {
      throw BudgetExceeded("product set exceeds the enumeration budget of " + std::to_string(budget) +
                           " candidates; reduce k or L, or use the sphere search");
    }
    total *= c.size();
  }

  // Odometer over index vectors, last coordinate fastest, i.e. lexicographic
  // order; keeping the first of tied minima implements the tie rule.
  std::vector<std::size_t> idx(k, 0);
  CVector x(static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) x[static_cast<Eigen::Index>(i)] = sets[i][0];
  CVector Jx = J * x;
  const auto last = static_cast<Eigen::Index>(k - 1);
  const double scale = static_cast<double>(k);

  std::vector<std::size_t> best_idx = idx;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t count = 0; count < total; ++count) {
    const double e = x.dot(Jx).real() / scale;
    if (e < best - kTieTolerance) {
      best = e;
      best_idx = idx;
    }
    if (count + 1 == total) break;
    std::size_t pos = k - 1;
    while (idx[pos] + 1 == sets[pos].size()) {
      idx[pos] = 0;
      --pos;
    }
    ++idx[pos];
    if (pos == k - 1) {
      const cplx before = x[last];
      x[last] = sets[pos][idx[pos]];
      Jx += J.col(last) * (x[last] - before);
    } else {
      for (std::size_t i = pos; i < k; ++i) x[static_cast<Eigen::Index>(i)] = sets[i][idx[i]];
      Jx.noalias() = J * x;
    }
  }

  Precoded out;
  out.x = CVector(static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) out.x[static_cast<Eigen::Index>(i)] = sets[i][best_idx[i]];
  out.energy = quadratic_energy(J, out.x);
  out.nodes = total;
  return out;
}

}  // namespace detail

Precoded precode_exact(const CMatrix& J, std::span<const std::size_t> s, const Alphabet& a, std::size_t budget) {
  if (!a.is_finite()) throw UnsupportedKind("precode_exact needs a finite alphabet; use precode_semidiscrete");
  return detail::exhaustive(J, detail::candidates_for(a, s), budget);
}

Precoded precode_semidiscrete(const CMatrix& J, std::span<const std::size_t> s, const Alphabet& a,
                              ExactSolver inner, std::size_t budget) {
  if (a.kind() != AlphabetKind::SemiDiscrete) throw UnsupportedKind("precode_semidiscrete needs a semi-discrete alphabet");
  const auto k = static_cast<Eigen::Index>(s.size());
  if (k == 0 || J.rows() != k || J.cols() != k) throw InvalidArgument("J does not match the data length");

  // x = r + j y with J = A + jB (A symmetric, B antisymmetric) gives
  // x^H J x = r'Ar + y'Ay + 2 y'Br, minimised over y at y = -A^{-1} B r,
  // leaving r' (A + B A^{-1} B) r.
  const Eigen::MatrixXd A = J.real();
  const Eigen::MatrixXd B = J.imag();
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) throw NumericalFailure("real part of J is not positive definite");
  Eigen::MatrixXd M = A + B * llt.solve(B);
  M = 0.5 * (M + M.transpose());

  detail::Candidates sets;
  for (std::size_t sym : s) {
    const auto re = a.real_points(sym);
    sets.emplace_back(re.begin(), re.end());
  }
  const CMatrix Mc = M.cast<cplx>();
  Precoded reduced = inner == ExactSolver::BruteForce ? detail::exhaustive(Mc, sets, budget)
                                                      : detail::branch_and_bound(Mc, sets);
  const Eigen::VectorXd r = reduced.x.real();
  const Eigen::VectorXd y = -llt.solve(B * r);
  Precoded out;
  out.x = r.cast<cplx>() + cplx(0.0, 1.0) * y.cast<cplx>();
  out.energy = quadratic_energy(J, out.x);
  out.nodes = reduced.nodes;
  return out;
}

Precoded precode(const CMatrix& J, std::span<const std::size_t> s, const Alphabet& a, ExactSolver solver) {
  if (a.kind() == AlphabetKind::SemiDiscrete) return precode_semidiscrete(J, s, a, solver);
  if (solver == ExactSolver::BruteForce) return precode_exact(J, s, a);
  return precode_sphere(J, s, a);
}

namespace {

constexpr std::size_t kMaxRedraws = 1000;

struct SampleOutcome {
  double energy = std::numeric_limits<double>::quiet_NaN();
  std::size_t redraws = 0;
  std::exception_ptr error;
};

SampleOutcome run_sample(const ChannelConfig& cfg, const Alphabet& a, const DataPrior& prior, std::size_t index) {
  SampleOutcome out;
  try {
    auto rng = make_stream(cfg.seed, index);
    CMatrix J;
    for (;;) {
      const CMatrix H = sample_channel(cfg.k, cfg.n, rng);
      try {
        J = gramian_inverse(H);
        break;
      } catch (const SingularChannel&) {
        if (++out.redraws > kMaxRedraws) throw;
      }
    }
    std::vector<double> weights;
    for (const auto& e : prior.entries) weights.push_back(e.second);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::vector<std::size_t> s(cfg.k);
    for (auto& sym : s) sym = prior.entries[pick(rng)].first;
    out.energy = precode(J, s, a, cfg.solver).energy;
  } catch (...) {
    out.error = std::current_exception();
  }
  return out;
}

}  // namespace

SimResult run_experiment(const ChannelConfig& cfg, const Alphabet& a,
                         const std::optional<replica::ReplicaSolution>& replica_ref,
                         const std::optional<DataPrior>& prior, unsigned threads) {
  cfg.validate();
  const DataPrior pr = prior.value_or(DataPrior::uniform(a));
  pr.validate(a);

  std::vector<SampleOutcome> outcomes(cfg.samples);
  if (threads == 0) threads = replica::default_thread_count();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cfg.samples)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cfg.samples; i = next++) outcomes[i] = run_sample(cfg, a, pr, i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  SimResult r;
  r.config = cfg;
  r.lattice = a.kind();
  r.L = a.L();
  if (replica_ref && replica_ref->converged) r.replica_es = replica_ref->es;
  std::exception_ptr first_error;
  double sum = 0.0;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const auto& o = outcomes[i];
    r.resamples += o.redraws;
    r.energies.push_back(o.energy);
    if (o.error) {
      if (!first_error) first_error = o.error;
      try {
        std::rethrow_exception(o.error);
      } catch (const std::exception& e) {
        r.failures.emplace_back(i, e.what());
      }
      continue;
    }
    sum += o.energy;
    ++ok;
  }
  if (r.failures.size() * 10 > cfg.samples || ok == 0) {
    try {
      std::rethrow_exception(first_error);
    } catch (const BudgetExceeded&) {
      throw;
    } catch (const std::exception& e) {
      throw NumericalFailure(std::to_string(r.failures.size()) + " of " + std::to_string(cfg.samples) +
                             " samples failed; first failure at sample " + std::to_string(r.failures[0].first) +
                             ": " + e.what());
    }
  }
  r.mean_es = sum / static_cast<double>(ok);
  if (ok > 1) {
    double ss = 0.0;
    for (double e : r.energies) {
      if (!std::isnan(e)) ss += (e - r.mean_es) * (e - r.mean_es);
    }
    r.stderr_es = std::sqrt(ss / static_cast<double>(ok - 1) / static_cast<double>(ok));
  }
  return r;
}

}  // namespace vecoder::mc
