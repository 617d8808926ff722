// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#include <doctest.h>

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <random>

#include "vecoder/errors.hpp"
#include "vecoder/replica.hpp"

using namespace vecoder;
using namespace vecoder::replica;

namespace {

std::vector<double> lattice(std::size_t L) { return alternating_lattice(L); }

// Independent oracle for the one-dimensional fixed point: Picard iteration in
// (q, b) with the Gaussian expectations taken by a dense midpoint rule and the
// nearest point found by linear search. The R-transform is written out here
// from its quadratic R = 1 + alpha R (1 + w R).
double dense_grid_energy(double alpha, const std::vector<double>& pts) {
  const auto R = [&](double w) {
    const double s = std::sqrt((1 - alpha) * (1 - alpha) - 4 * alpha * w);
    return (1 - alpha - s) / (2 * alpha * w);
  };
  const auto Rp = [&](double w) {
    const double h = 1e-6 * std::max(1.0, std::abs(w));
    return (R(w + h) - R(w - h)) / (2 * h);
  };
  double q = 1.0, b = 1.0;
  const int n = 400000;
  const double lo = -12.0, h = 24.0 / n;
  for (int it = 0; it < 400; ++it) {
    const double r = R(-b), rp = Rp(-b);
    const double sigma = std::sqrt(q * rp / (2 * r * r));
    double m2 = 0, mz = 0;
    for (int i = 0; i < n; ++i) {
      const double z = lo + (i + 0.5) * h;
      double best = pts[0];
      for (double c : pts)
        if (std::abs(sigma * z - c) < std::abs(sigma * z - best)) best = c;
      const double w = h * std::exp(-0.5 * z * z) / std::sqrt(2 * M_PI);
      m2 += w * best * best;
      mz += w * best * z;
    }
    q = 0.5 * q + 0.5 * m2;
    b = 0.5 * b + 0.5 * mz / std::sqrt(2 * q * rp);
  }
  return q * (R(-b) - b * Rp(-b));
}

}  // namespace

TEST_CASE("energy from (q, b)") {
  CHECK(energy_from_qb(3.0, 0.7, rmt::RTransformSpec::point_mass(2.0)) == doctest::Approx(6.0));
  CHECK(energy_from_qb(1.0, 1.0, rmt::RTransformSpec::inverse_gramian(1.0)) == doctest::Approx(0.5));
  const auto s = solve_1d(0.5, lattice(2));
  CHECK(energy_from_qb(s.q, s.b, rmt::RTransformSpec::inverse_gramian(0.5)) == doctest::Approx(s.q / *s.p).epsilon(1e-8));
  CHECK_THROWS_AS(energy_from_qb(1.0, -1.0, rmt::RTransformSpec::inverse_gramian(0.5)), DomainError);
}

TEST_CASE("square channel reproduces the published energies") {
  const auto t0 = std::chrono::steady_clock::now();
  CHECK(solve_square_1d(lattice(1)).diverged);
  CHECK(std::abs(solve_square_1d(lattice(2)).es - 2.6942) < 1e-4);
  CHECK(std::abs(solve_square_1d(lattice(3)).es - 2.6656) < 1e-4);
  CHECK(std::abs(solve_square_1d(lattice(4)).es - 2.6655) < 1e-4);
  CHECK(std::abs(solve_square_1d(lattice(64)).es - 2.6655) < 1e-3);
  // Values of an independent prototype implementation, eight digits.
  CHECK(solve_square_1d(lattice(2)).es == doctest::Approx(2.69417974).epsilon(1e-8));
  CHECK(solve_square_1d(lattice(3)).es == doctest::Approx(2.66556730).epsilon(1e-8));
  CHECK(solve_square_1d(lattice(4)).es == doctest::Approx(2.66553829).epsilon(1e-8));
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 1.0);
}

TEST_CASE("square-channel back-filled parameters are consistent") {
  const auto s = solve_square_1d(lattice(3));
  // E_s = q / (2 sqrt b) at alpha = 1.
  CHECK(s.q / (2.0 * std::sqrt(s.b)) == doctest::Approx(s.es).epsilon(1e-10));
  CHECK(energy_from_qb(s.q, s.b, rmt::RTransformSpec::inverse_gramian(1.0)) == doctest::Approx(s.es).epsilon(1e-10));
}

TEST_CASE("rectangular one-dimensional closed form") {
  const auto s = solve_1d(0.5, lattice(2));
  CHECK(s.converged);
  CHECK(s.q == doctest::Approx(1.50572).epsilon(1e-5));
  CHECK(*s.p == doctest::Approx(0.87927).epsilon(1e-5));
  CHECK(s.es == doctest::Approx(1.7124704).epsilon(1e-7));
  CHECK(solve_1d(1.0, lattice(2)).es == doctest::Approx(2.69417974).epsilon(1e-8));
  CHECK(solve_1d(1.2, lattice(3)).es == doctest::Approx(3.3347229).epsilon(1e-7));
}

TEST_CASE("closed form agrees with a dense-grid oracle") {
  CHECK(solve_1d(0.5, lattice(2)).es == doctest::Approx(dense_grid_energy(0.5, lattice(2))).epsilon(1e-4));
  CHECK(solve_1d(1.2, lattice(3)).es == doctest::Approx(dense_grid_energy(1.2, lattice(3))).epsilon(1e-4));
}

TEST_CASE("no precoding") {
  const std::vector<double> one{1.0};
  for (double alpha : {0.25, 0.5, 0.75}) {
    const auto s = solve_1d(alpha, one);
    CHECK(s.converged);
    CHECK(std::abs(s.es - 1.0 / (1.0 - alpha)) < 1e-6);
    CHECK(s.b == 0.0);
    CHECK(s.q == 1.0);
  }
  CHECK(solve_1d(1.0, one).diverged);
  CHECK(solve_1d(1.0, one).converged == false);
  const auto a = Alphabet::standard(AlphabetKind::OneDimLattice, 1);
  const auto g = solve_general(rmt::RTransformSpec::inverse_gramian(0.5), a, DataPrior::uniform(a));
  CHECK(g.converged);
  CHECK(g.es == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(solve_general(rmt::RTransformSpec::inverse_gramian(1.0), a, DataPrior::uniform(a)).diverged);
}

TEST_CASE("substitution identities at converged rectangular solutions") {
  for (double alpha : {0.25, 0.5, 0.9, 1.0, 1.3}) {
    for (std::size_t L : {2, 3, 5}) {
      const auto s = solve_1d(alpha, lattice(L));
      REQUIRE(s.converged);
      const double p = *s.p;
      CHECK(p * p == doctest::Approx((1 - alpha) * (1 - alpha) + 4 * alpha * s.b).epsilon(1e-8));
      CHECK(s.es * p == doctest::Approx(s.q).epsilon(1e-8));
      CHECK(p >= std::abs(1 - alpha));
    }
  }
}

TEST_CASE("general solver matches the closed forms") {
  for (std::size_t L : {2, 3}) {
    const auto a = Alphabet::standard(AlphabetKind::OneDimLattice, L);
    for (double alpha : {0.25, 0.5, 1.0}) {
      const auto g = solve_general(rmt::RTransformSpec::inverse_gramian(alpha), a, DataPrior::uniform(a));
      CHECK(g.es == doctest::Approx(solve_1d(alpha, lattice(L)).es).epsilon(1e-4));
    }
  }
  const auto q2 = Alphabet::standard(AlphabetKind::QuadratureLattice, 2);
  const auto gq = solve_general(rmt::RTransformSpec::inverse_gramian(1.0), q2, DataPrior::uniform(q2));
  CHECK(gq.es == doctest::Approx(solve_quadrature(1.0, lattice(2)).es).epsilon(1e-4));
  // Without precoding each quadrature component carries the one-dimensional energy.
  CHECK(solve_quadrature(0.5, lattice(1)).es == doctest::Approx(2.0 * solve_1d(0.5, lattice(1)).es).epsilon(1e-12));
  const auto sd = Alphabet::standard(AlphabetKind::SemiDiscrete, 2);
  const auto gs = solve_general(rmt::RTransformSpec::inverse_gramian(1.0), sd, DataPrior::uniform(sd));
  CHECK(gs.es == doctest::Approx(solve_semidiscrete(1.0, lattice(2)).es).epsilon(1e-4));
}

TEST_CASE("scaling the lattice scales the energy quadratically") {
  const double g = 2.0;
  std::vector<double> big;
  for (double c : lattice(3)) big.push_back(g * c);
  const auto a = Alphabet(AlphabetKind::OneDimLattice, lattice(3));
  const auto ab = Alphabet(AlphabetKind::OneDimLattice, big);
  const auto spec = rmt::RTransformSpec::inverse_gramian(0.7);
  const auto s = solve_general(spec, a, DataPrior::uniform(a));
  const auto sb = solve_general(spec, ab, DataPrior::uniform(ab));
  CHECK(sb.q == doctest::Approx(4.0 * s.q).epsilon(1e-8));
  CHECK(sb.b == doctest::Approx(s.b).epsilon(1e-8));
  CHECK(sb.es == doctest::Approx(4.0 * s.es).epsilon(1e-6));
  for (double alpha : {0.3, 1.1}) {
    CHECK(solve_1d(alpha, big).es == doctest::Approx(4.0 * solve_1d(alpha, lattice(3)).es).epsilon(1e-6));
  }
}

TEST_CASE("larger nested lattices never cost energy") {
  for (double alpha : {0.25, 0.6, 1.0, 1.3}) {
    double previous = INFINITY;
    for (std::size_t L = 1; L <= 6; ++L) {
      const auto s = solve_1d(alpha, lattice(L));
      if (s.diverged) continue;
      CHECK(s.es <= previous + 1e-9);
      previous = s.es;
    }
  }
}

TEST_CASE("quadrature lattice limits") {
  const auto small = solve_quadrature(1e-3, lattice(2));
  CHECK(small.q == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(*small.p == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(small.eb == doctest::Approx(1.0).epsilon(2e-3));
  const auto big = solve_quadrature(4.0, lattice(100));
  CHECK(std::abs(big.eb - 4.0 / 3.0) < 0.05 * 4.0 / 3.0);
  CHECK(big.eb == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
  CHECK(big.eb == doctest::Approx(big.es / 2.0));
}

TEST_CASE("semi-discrete lattice") {
  // L = 1: p = 1 and E_s = c^2 / (1 - alpha/2).
  const std::vector<double> one{1.0};
  CHECK(solve_semidiscrete(0.5, one).es == doctest::Approx(1.0 / 0.75).epsilon(1e-12));
  CHECK(solve_semidiscrete(2.0, one).diverged);
  CHECK(solve_semidiscrete(0.05, one).eb < solve_quadrature(0.05, lattice(100)).eb);
  CHECK(solve_semidiscrete(0.7, one).eb > solve_quadrature(0.7, lattice(100)).eb);
  const auto s = solve_semidiscrete(16.0, lattice(100));
  CHECK(std::abs(s.eb - 4.0 / 3.0) < 0.05 * 4.0 / 3.0);
  // The semi-discrete lattice at load alpha behaves like quadrature at alpha / 2.
  CHECK(solve_semidiscrete(3.0, lattice(50)).eb == doctest::Approx(solve_quadrature(1.5, lattice(50)).eb).epsilon(1e-6));
}

TEST_CASE("crossover of semi-discrete and quadrature energies") {
  const auto big = lattice(100);
  const std::vector<double> one{1.0};
  const double x = find_crossover([&](double a) { return solve_quadrature(a, big).eb; },
                                  [&](double a) { return solve_semidiscrete(a, one).eb; }, 0.3, 0.7);
  CHECK(std::abs(x - 0.479) <= 0.01);
  CHECK_THROWS_AS(find_crossover([](double) { return 1.0; }, [](double) { return 2.0; }, 0.1, 0.2), BadBracket);
}

TEST_CASE("checkerboard and quadrature give the same bit energy") {
  const auto cb = Alphabet::standard(AlphabetKind::CheckerboardLattice, 8);
  for (double alpha : {0.5, 1.5}) {
    const auto c = solve_general(rmt::RTransformSpec::inverse_gramian(alpha), cb, DataPrior::uniform(cb));
    CHECK(c.eb == doctest::Approx(solve_quadrature(alpha, lattice(8)).eb).epsilon(0.01));
  }
}

TEST_CASE("other spectra") {
  // J = H H^H: R(0) = 1 is finite, so the unprecoded energy is c^2.
  const auto a1 = Alphabet::standard(AlphabetKind::OneDimLattice, 1);
  CHECK(solve_general(rmt::RTransformSpec::marchenko_pastur(0.5), a1, DataPrior::uniform(a1)).es ==
        doctest::Approx(1.0));
  const auto a2 = Alphabet::standard(AlphabetKind::OneDimLattice, 2);
  const auto mp = solve_general(rmt::RTransformSpec::marchenko_pastur(0.5), a2, DataPrior::uniform(a2));
  CHECK(mp.converged);
  CHECK(mp.es < 1.0);

  // Tabulated spectrum: inverse eigenvalues of one sampled Gramian.
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, std::sqrt(0.5 / 800));
  Eigen::MatrixXcd H(400, 800);
  for (Eigen::Index i = 0; i < H.rows(); ++i)
    for (Eigen::Index j = 0; j < H.cols(); ++j) H(i, j) = {g(rng), g(rng)};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H * H.adjoint(), Eigen::EigenvaluesOnly);
  std::vector<double> inv;
  for (double e : eig.eigenvalues()) inv.push_back(1.0 / e);
  const auto tab = solve_general(rmt::RTransformSpec::tabulated(inv), a2, DataPrior::uniform(a2));
  CHECK(tab.converged);
  CHECK(tab.es == doctest::Approx(solve_1d(0.5, lattice(2)).es).epsilon(0.03));
}

TEST_CASE("divergence beyond the threshold") {
  CHECK(solve_1d(2.0, lattice(2)).diverged);
  CHECK(std::isinf(solve_1d(2.0, lattice(2)).es));
  const auto a = Alphabet::standard(AlphabetKind::OneDimLattice, 2);
  CHECK(solve_general(rmt::RTransformSpec::inverse_gramian(2.0), a, DataPrior::uniform(a)).diverged);
  FixedPointConfig tiny;
  tiny.max_iter = 3;
  CHECK_THROWS_AS(solve_1d(0.5, lattice(3), tiny), MaxIterations);
}

TEST_CASE("configuration validation") {
  FixedPointConfig c;
  c.quad_order = 4;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.damping = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.tol = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  CHECK_THROWS_AS(solve_1d(-1.0, lattice(2)), InvalidArgument);
}

TEST_CASE("sweeps") {
  SolverSpec one;
  one.points = {1.0};
  const std::vector<double> grid{0.25, 0.5, 0.75};
  const auto pts = sweep(one, grid);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].solution.es == doctest::Approx(4.0 / 3.0));
  CHECK(pts[1].solution.es == doctest::Approx(2.0));
  CHECK(pts[2].solution.es == doctest::Approx(4.0));

  const std::vector<double> single{1.0};
  CHECK(sweep(SolverSpec{}, single)[0].solution.es == doctest::Approx(2.69417974).epsilon(1e-8));

  // Through the transition: converged prefix, then only divergent points.
  std::vector<double> across;
  for (int i = 1; i <= 30; ++i) across.push_back(0.1 * i);
  const auto warm = sweep(SolverSpec{}, across);
  std::size_t first_bad = warm.size();
  for (std::size_t i = 0; i < warm.size(); ++i) {
    if (!warm[i].solution.converged) {
      first_bad = i;
      break;
    }
  }
  CHECK(first_bad > 0);
  CHECK(first_bad < warm.size());
  for (std::size_t i = first_bad; i < warm.size(); ++i) CHECK(warm[i].solution.diverged);

  // Warm-started and parallel cold-started sweeps agree.
  const auto cold = sweep(SolverSpec{}, across, {}, SweepMode::ParallelColdStart, 3);
  for (std::size_t i = 0; i < warm.size(); ++i) {
    CHECK(warm[i].solution.converged == cold[i].solution.converged);
    if (warm[i].solution.converged) CHECK(warm[i].solution.es == doctest::Approx(cold[i].solution.es).epsilon(1e-9));
  }
}

TEST_CASE("sweep records per-point errors") {
  SolverSpec sq;
  sq.kind = SolverKind::SquareOneDim;
  const std::vector<double> grid{0.5, 1.0};
  const auto pts = sweep(sq, grid);
  CHECK(pts[0].error.has_value());
  CHECK_FALSE(pts[1].error.has_value());
}

TEST_CASE("thresholds") {
  SolverSpec one;
  one.points = {1.0};
  CHECK(std::abs(find_threshold(one, {}, 0.5, 1.5) - 1.0) <= 1e-3);
  const double t2 = find_threshold(SolverSpec{}, {}, 0.5, 3.0);
  CHECK(t2 > 1.0);
  // Regression value from this implementation (bisection to 1e-3).
  CHECK(std::abs(t2 - 1.4056) < 2e-3);
  SolverSpec three;
  three.points = lattice(3);
  CHECK(find_threshold(three, {}, 0.5, 3.0) >= t2 - 1e-3);
  CHECK_THROWS_AS(find_threshold(SolverSpec{}, {}, 2.0, 3.0), BadBracket);
  CHECK_THROWS_AS(find_threshold(SolverSpec{}, {}, 0.2, 0.5), BadBracket);
}

TEST_CASE("solver selection") {
  CHECK(SolverSpec::for_lattice(AlphabetKind::OneDimLattice, lattice(2)).kind == SolverKind::OneDim);
  CHECK(SolverSpec::for_lattice(AlphabetKind::QuadratureLattice, lattice(2)).kind == SolverKind::Quadrature);
  CHECK(SolverSpec::for_lattice(AlphabetKind::SemiDiscrete, lattice(2)).kind == SolverKind::SemiDiscrete);
  CHECK(SolverSpec::for_lattice(AlphabetKind::CheckerboardLattice, lattice(2)).kind == SolverKind::General);
  CHECK(SolverSpec::for_lattice(AlphabetKind::OneDimLattice, lattice(2), rmt::Family::MarchenkoPastur).kind ==
        SolverKind::General);
}
