// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "vecoder/errors.hpp"
#include "vecoder/replica.hpp"

namespace vecoder::replica {

SolverSpec SolverSpec::for_lattice(AlphabetKind lattice, std::vector<double> points, rmt::Family family) {
  SolverSpec s;
  s.points = std::move(points);
  s.lattice = lattice;
  s.family = family;
  s.kind = SolverKind::General;
  if (family == rmt::Family::InverseGramian) {
    switch (lattice) {
      case AlphabetKind::OneDimLattice: s.kind = SolverKind::OneDim; break;
      case AlphabetKind::QuadratureLattice: s.kind = SolverKind::Quadrature; break;
      case AlphabetKind::SemiDiscrete: s.kind = SolverKind::SemiDiscrete; break;
      case AlphabetKind::CheckerboardLattice: break;
    }
  }
  return s;
}

ReplicaSolution solve_at(const SolverSpec& spec, double alpha, const FixedPointConfig& cfg) {
  switch (spec.kind) {
    case SolverKind::OneDim: return solve_1d(alpha, spec.points, cfg);
    case SolverKind::SquareOneDim:
      if (alpha != 1.0) throw InvalidArgument("the square-channel solver requires alpha = 1");
      return solve_square_1d(spec.points, cfg);
    case SolverKind::Quadrature: return solve_quadrature(alpha, spec.points, cfg);
    case SolverKind::SemiDiscrete: return solve_semidiscrete(alpha, spec.points, cfg);
    case SolverKind::General: break;
  }
  rmt::RTransformSpec r;
  switch (spec.family) {
    case rmt::Family::MarchenkoPastur: r = rmt::RTransformSpec::marchenko_pastur(alpha); break;
    case rmt::Family::InverseGramian: r = rmt::RTransformSpec::inverse_gramian(alpha); break;
    case rmt::Family::Tabulated:
      throw UnsupportedKind("a tabulated spectrum has no load parameter to sweep");
  }
  const Alphabet a(spec.lattice, spec.points);
  return solve_general(r, a, DataPrior::uniform(a), cfg);
}

unsigned default_thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("VECODER_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

namespace {

SweepPoint solve_point(const SolverSpec& spec, double alpha, const FixedPointConfig& cfg) {
  SweepPoint pt;
  pt.alpha = alpha;
  try {
    pt.solution = solve_at(spec, alpha, cfg);
  } catch (const std::exception& e) {
    pt.solution.diverged = false;
    pt.solution.converged = false;
    pt.error = e.what();
  }
  return pt;
}

bool converges(const SolverSpec& spec, double alpha, const FixedPointConfig& cfg) {
  try {
    return solve_at(spec, alpha, cfg).converged;
  } catch (const MaxIterations&) {
    return false;
  }
}

}  // namespace

std::vector<SweepPoint> sweep(const SolverSpec& spec, std::span<const double> alpha_grid,
                              const FixedPointConfig& cfg, SweepMode mode, unsigned threads) {
  cfg.validate();
  std::vector<SweepPoint> out(alpha_grid.size());
  if (mode == SweepMode::WarmStart) {
    FixedPointConfig local = cfg;
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
      out[i] = solve_point(spec, alpha_grid[i], local);
      const auto& s = out[i].solution;
      if (s.converged && s.q > 0.0) {
        local.init_q = s.q;
        local.init_b = s.b;
      } else {
        local.init_q = cfg.init_q;
        local.init_b = cfg.init_b;
      }
    }
    return out;
  }

  if (threads == 0) threads = default_thread_count();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(alpha_grid.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < alpha_grid.size(); i = next++) {
      out[i] = solve_point(spec, alpha_grid[i], cfg);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

double find_threshold(const SolverSpec& spec, const FixedPointConfig& cfg, double lo, double hi,
                      double abs_tol) {
  if (!(lo < hi) || !(abs_tol > 0.0)) throw InvalidArgument("threshold search needs lo < hi and abs_tol > 0");
  if (!converges(spec, lo, cfg)) throw BadBracket("solver does not converge at the lower end " + std::to_string(lo));
  if (converges(spec, hi, cfg)) throw BadBracket("solver still converges at the upper end " + std::to_string(hi));
  while (hi - lo > abs_tol) {
    const double mid = 0.5 * (lo + hi);
    (converges(spec, mid, cfg) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double find_crossover(const std::function<double(double)>& f, const std::function<double(double)>& g,
                      double lo, double hi, double abs_tol) {
  if (!(lo < hi) || !(abs_tol > 0.0)) throw InvalidArgument("crossover search needs lo < hi and abs_tol > 0");
  const auto h = [&](double x) { return f(x) - g(x); };
  double hlo = h(lo);
  const double hhi = h(hi);
  if (!std::isfinite(hlo) || !std::isfinite(hhi) || (hlo > 0.0) == (hhi > 0.0)) {
    throw BadBracket("the two curves do not cross inside the bracket");
  }
  while (hi - lo > abs_tol) {
    const double mid = 0.5 * (lo + hi);
    const double hm = h(mid);
    if ((hm > 0.0) == (hlo > 0.0)) {
      lo = mid;
      hlo = hm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace vecoder::replica
