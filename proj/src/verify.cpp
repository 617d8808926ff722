// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <sstream>

#include "vecoder/montecarlo.hpp"
#include "vecoder/replica.hpp"
#include "vecoder/rmt.hpp"
#include "vecoder/rng.hpp"
#include "vecoder/verify.hpp"

namespace vecoder::verify {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

template <class F>
CheckResult guarded(const std::string& name, F body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::string("error: ") + e.what()};
  }
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

double max_lemma_residual(bool inject_branch_fault) {
  double worst = 0.0;
  for (double alpha : {0.25, 0.5, 0.75}) {
    const auto mp = rmt::RTransformSpec::marchenko_pastur(alpha);
    auto ig = rmt::RTransformSpec::inverse_gramian(alpha);
    if (inject_branch_fault) ig.branch = rmt::SqrtBranch::Conjugate;
    for (int i = 0; i < 20; ++i) {
      const double w = -2.0 + (2.0 - 0.01) * i / 19.0;
      double r = 0.0;
      try {
        r = rmt::verify_inverse_lemma(mp, ig, w);
      } catch (const std::exception&) {
        r = std::numeric_limits<double>::infinity();
      }
      worst = std::max(worst, std::isnan(r) ? std::numeric_limits<double>::infinity() : r);
    }
  }
  return worst;
}

CheckResult check_inverse_lemma(const Options& opt) {
  const std::string name = "inverse lemma residual";
  return guarded(name, [&] {
    const double r = max_lemma_residual(opt.inject_branch_fault);
    return CheckResult{name, r < 1e-10, "max residual " + fmt_double(r) + " (limit 1e-10)"};
  });
}

CheckResult check_specialization(const Options&) {
  const std::string name = "general solver vs closed forms";
  return guarded(name, [&] {
    double worst = 0.0;
    for (std::size_t L : {2, 3}) {
      const Alphabet a = Alphabet::standard(AlphabetKind::OneDimLattice, L);
      for (double alpha : {0.25, 0.5, 1.0}) {
        const auto closed = replica::solve_1d(alpha, a.points());
        const auto general =
            replica::solve_general(rmt::RTransformSpec::inverse_gramian(alpha), a, DataPrior::uniform(a));
        worst = std::max(worst, rel(general.es, closed.es));
      }
    }
    return CheckResult{name, worst < 1e-4, "max relative deviation " + fmt_double(worst) + " (limit 1e-4)"};
  });
}

CheckResult check_scaling(const Options&) {
  const std::string name = "scaling laws";
  return guarded(name, [&] {
    double worst = 0.0;
    const std::vector<double> one{1.0};
    for (double alpha : {0.25, 0.5, 0.75}) {
      worst = std::max(worst, std::abs(replica::solve_1d(alpha, one).es - 1.0 / (1.0 - alpha)));
    }
    const bool divergent = replica::solve_1d(1.0, one).diverged;
    double scale_dev = 0.0;
    const double g = 1.7;
    const auto base = alternating_lattice(3);
    std::vector<double> scaled;
    for (double c : base) scaled.push_back(g * c);
    for (double alpha : {0.5, 1.0}) {
      const double e0 = replica::solve_1d(alpha, base).es;
      const double e1 = replica::solve_1d(alpha, scaled).es;
      scale_dev = std::max(scale_dev, rel(e1, g * g * e0));
    }
    const bool ok = worst < 1e-6 && divergent && scale_dev < 1e-8;
    return CheckResult{name, ok,
                       "no-precoding deviation " + fmt_double(worst) + ", alpha=1 divergent " +
                           (divergent ? "yes" : "no") + ", lattice-scaling deviation " + fmt_double(scale_dev)};
  });
}

CheckResult check_exact_solvers(const Options& opt) {
  const std::string name = "sphere search vs brute force";
  return guarded(name, [&] {
    double worst = 0.0;
    std::size_t monotone_fail = 0;
    std::size_t scaling_fail = 0;
    for (std::size_t inst = 0; inst < opt.exact_instances; ++inst) {
      auto rng = mc::make_stream(opt.seed, inst);
      const std::size_t k = 2 + inst % 9;  // 2..10
      const std::size_t n = k + 1 + inst % 7;
      const mc::CMatrix J = mc::gramian_inverse(mc::sample_channel(k, n, rng));
      const bool planar = inst % 5 == 4 && k <= 5;
      const auto kind = planar ? AlphabetKind::QuadratureLattice : AlphabetKind::OneDimLattice;
      const std::size_t L_max = planar ? 2 : 3;
      const Alphabet a0(kind, alternating_lattice(1));
      std::uniform_int_distribution<std::size_t> pick(0, a0.symbol_count() - 1);
      std::vector<std::size_t> s(k);
      for (auto& v : s) v = pick(rng);

      double previous = std::numeric_limits<double>::infinity();
      for (std::size_t L = 1; L <= L_max; ++L) {
        const Alphabet a(kind, alternating_lattice(L));
        const auto brute = mc::precode_exact(J, s, a);
        const auto sphere = mc::precode_sphere(J, s, a);
        worst = std::max(worst, std::abs(brute.energy - sphere.energy));
        if (brute.energy > previous + 1e-12) ++monotone_fail;
        previous = brute.energy;

        const double g = 3.0;
        std::vector<double> pts;
        for (double c : a.points()) pts.push_back(g * c);
        const auto big = mc::precode_sphere(J, s, Alphabet(kind, pts));
        if (std::abs(big.energy - g * g * sphere.energy) > 1e-9 * std::max(1.0, big.energy)) ++scaling_fail;
        const auto scaled_j = mc::precode_sphere(g * J, s, a);
        if (std::abs(scaled_j.energy - g * sphere.energy) > 1e-9 * std::max(1.0, scaled_j.energy)) ++scaling_fail;
      }
    }
    const bool ok = worst < 1e-10 && monotone_fail == 0 && scaling_fail == 0;
    return CheckResult{name, ok,
                       std::to_string(opt.exact_instances) + " instances, max energy gap " + fmt_double(worst) +
                           ", nesting violations " + std::to_string(monotone_fail) + ", scaling violations " +
                           std::to_string(scaling_fail)};
  });
}

CheckResult check_checkerboard(const Options&) {
  const std::string name = "checkerboard vs quadrature E_b";
  return guarded(name, [&] {
    double worst = 0.0;
    const auto pts = alternating_lattice(8);
    const Alphabet cb(AlphabetKind::CheckerboardLattice, pts);
    for (double alpha : {0.5, 1.5}) {
      const auto quad = replica::solve_quadrature(alpha, pts);
      const auto chk =
          replica::solve_general(rmt::RTransformSpec::inverse_gramian(alpha), cb, DataPrior::uniform(cb));
      worst = std::max(worst, rel(chk.eb, quad.eb));
    }
    return CheckResult{name, worst < 0.01, "L=8, max relative gap " + fmt_double(worst) + " (limit 0.01)"};
  });
}

CheckResult check_crossover(const Options&) {
  const std::string name = "semi-discrete / quadrature crossover";
  return guarded(name, [&] {
    const auto quad_pts = alternating_lattice(100);
    const std::vector<double> one{1.0};
    const double x = replica::find_crossover(
        [&](double a) { return replica::solve_quadrature(a, quad_pts).eb; },
        [&](double a) { return replica::solve_semidiscrete(a, one).eb; }, 0.3, 0.7, 1e-4);
    return CheckResult{name, std::abs(x - 0.479) <= 0.01, "crossover at alpha = " + fmt_double(x) + " (expected 0.479 +- 0.01)"};
  });
}

std::vector<CheckResult> run_all(const Options& opt) {
  return {check_inverse_lemma(opt), check_specialization(opt), check_scaling(opt),
          check_exact_solvers(opt), check_checkerboard(opt),   check_crossover(opt)};
}

}  // namespace vecoder::verify
