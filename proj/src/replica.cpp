// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "replica_detail.hpp"
#include "vecoder/errors.hpp"
#include "vecoder/gaussian.hpp"
#include "vecoder/replica.hpp"

namespace vecoder::replica {

namespace detail {

double gaussian_mass(double a, double b) {
  if (!(b > a)) return 0.0;
  if (b <= 0.0) return gaussian_q(-b) - gaussian_q(-a);
  if (a >= 0.0) return gaussian_q(a) - gaussian_q(b);
  return 1.0 - gaussian_q(-a) - gaussian_q(b);
}

LineMoments line_moments(std::span<const double> c, double sigma) {
  LineMoments m;
  const double inf = std::numeric_limits<double>::infinity();
  double lower = -inf;
  double pdf_lower = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double upper = i + 1 < c.size() ? 0.5 * (c[i] + c[i + 1]) / sigma : inf;
    const double pdf_upper = std::isinf(upper) ? 0.0 : gaussian_pdf(upper);
    m.second_moment += c[i] * c[i] * gaussian_mass(lower, upper);
    m.correlation += c[i] * (pdf_lower - pdf_upper);
    lower = upper;
    pdf_lower = pdf_upper;
  }
  return m;
}

std::vector<double> sorted_copy(std::span<const double> points) {
  if (points.empty()) throw InvalidArgument("lattice needs at least one point");
  std::vector<double> c(points.begin(), points.end());
  std::sort(c.begin(), c.end());
  if (std::adjacent_find(c.begin(), c.end()) != c.end()) {
    throw InvalidArgument("lattice points must be distinct");
  }
  return c;
}

ReplicaSolution divergent(std::size_t iterations) {
  ReplicaSolution s;
  s.q = std::numeric_limits<double>::quiet_NaN();
  s.b = std::numeric_limits<double>::quiet_NaN();
  s.es = std::numeric_limits<double>::infinity();
  s.eb = std::numeric_limits<double>::infinity();
  s.diverged = true;
  s.iterations = iterations;
  return s;
}

}  // namespace detail

namespace {

using detail::divergent;
using detail::sorted_copy;

// Sums shared by the closed forms, written with t = sqrt(p / (2 q alpha)):
//   second = c_1^2 + sum_i (c_i^2 - c_{i-1}^2) Q(t (c_i + c_{i-1}))
//   edges  = sum_i (c_i - c_{i-1}) exp(-t^2 (c_i + c_{i-1})^2 / 2)
// The first is evaluated cell by cell to avoid cancelling c_1^2 for wide lattices.
struct LatticeSums {
  double second = 0.0;
  double edges = 0.0;
};

LatticeSums lattice_sums(std::span<const double> c, double t) {
  LatticeSums s;
  s.second = detail::line_moments(c, 1.0 / (2.0 * t)).second_moment;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double v = t * (c[i] + c[i - 1]);
    s.edges += (c[i] - c[i - 1]) * std::exp(-0.5 * v * v);
  }
  return s;
}

double min_square(std::span<const double> c) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : c) m = std::min(m, x * x);
  return m;
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be positive");
}

// Iterates (q, p) under one of the closed-form maps. `step` returns the
// undamped image or false once p has left the admissible region.
template <class Step>
ReplicaSolution iterate_qp(double q, double p, const FixedPointConfig& cfg, Step step) {
  const double d = cfg.damping;
  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    double q1 = 0.0;
    double p1 = 0.0;
    if (!step(q, p, q1, p1) || !(p1 > 1e-8) || !std::isfinite(q1)) return divergent(it);
    const double qn = q + d * (q1 - q);
    const double pn = p + d * (p1 - p);
    if (!(qn / pn <= cfg.divergence_cap)) return divergent(it);
    const bool done = std::abs(qn - q) <= cfg.tol * qn && std::abs(pn - p) <= cfg.tol * pn;
    q = qn;
    p = pn;
    if (done) {
      ReplicaSolution s;
      s.q = q;
      s.p = p;
      s.converged = true;
      s.iterations = it;
      return s;
    }
  }
  throw MaxIterations("fixed-point iteration did not settle within " + std::to_string(cfg.max_iter) +
                      " iterations");
}

double initial_p(double alpha, const FixedPointConfig& cfg, double fallback) {
  if (cfg.init_b) return std::sqrt((1.0 - alpha) * (1.0 - alpha) + 4.0 * alpha * *cfg.init_b);
  return fallback;
}

// Fills b, es, eb from (q, p) for the inverse-Gramian closed forms and
// rejects fixed points with b < 0, which have no preimage under the substitution.
ReplicaSolution finish_rectangular(ReplicaSolution s, double alpha, double bits, const FixedPointConfig& cfg) {
  if (!s.converged) return s;
  const double p = *s.p;
  s.b = (p * p - (1.0 - alpha) * (1.0 - alpha)) / (4.0 * alpha);
  if (s.b < -1e-12 * std::max(1.0, p * p)) return divergent(s.iterations);
  s.b = std::max(s.b, 0.0);
  s.es = s.q / p;
  if (!(s.es <= cfg.divergence_cap)) return divergent(s.iterations);
  s.eb = s.es / bits;
  return s;
}

}  // namespace

void FixedPointConfig::validate() const {
  if (!(damping > 0.0 && damping <= 1.0)) throw InvalidArgument("damping must lie in (0, 1]");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (max_iter == 0) throw InvalidArgument("max_iter must be positive");
  if (quad_order < 8) throw InvalidArgument("quad_order must be at least 8");
  if (!(divergence_cap > 0.0)) throw InvalidArgument("divergence cap must be positive");
  if (!(fd_step > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  if (init_q && !(*init_q > 0.0)) throw InvalidArgument("init_q must be positive");
  if (init_b && !(*init_b >= 0.0)) throw InvalidArgument("init_b must be nonnegative");
}

double energy_from_qb(double q, double b, const rmt::RTransformSpec& spec, double fd_step) {
  if (!(b >= 0.0)) throw DomainError("energy requires b >= 0");
  const double r = rmt::r_transform(spec, -b);
  if (b == 0.0) return q * r;
  double rp = 0.0;
  if (spec.has_analytic_derivative()) {
    rp = rmt::r_prime(spec, -b);
  } else {
    const double h = fd_step * std::max(1.0, b);
    rp = (rmt::r_transform(spec, -b + h) - rmt::r_transform(spec, -b - h)) / (2.0 * h);
  }
  return q * (r - b * rp);
}

ReplicaSolution solve_1d(double alpha, std::span<const double> points, const FixedPointConfig& cfg) {
  require_alpha(alpha);
  cfg.validate();
  const auto c = sorted_copy(points);
  if (c.size() == 1) {
    // No precoding freedom: b = 0, q = c_1^2, E_s = c_1^2 R(0).
    if (alpha >= 1.0) return divergent(0);
    ReplicaSolution s;
    s.q = c[0] * c[0];
    s.b = 0.0;
    s.p = 1.0 - alpha;
    s.es = s.q / (1.0 - alpha);
    s.eb = s.es;
    s.converged = s.es <= cfg.divergence_cap;
    s.diverged = !s.converged;
    return s.diverged ? divergent(0) : s;
  }
  const double q0 = cfg.init_q.value_or(min_square(c));
  const double p0 = initial_p(alpha, cfg, std::max(1.0 - alpha, 0.1));
  auto s = iterate_qp(q0, p0, cfg, [&](double q, double p, double& q1, double& p1) {
    const auto sums = lattice_sums(c, std::sqrt(p / (2.0 * q * alpha)));
    q1 = sums.second;
    p1 = 1.0 - alpha + std::sqrt(alpha * p / (std::numbers::pi * q)) * sums.edges;
    return true;
  });
  return finish_rectangular(s, alpha, 1.0, cfg);
}

ReplicaSolution solve_square_1d(std::span<const double> points, const FixedPointConfig& cfg) {
  cfg.validate();
  const auto c = sorted_copy(points);
  if (c.size() == 1) return divergent(0);

  double es = 2.0;
  if (cfg.init_q && cfg.init_b && *cfg.init_b > 0.0) es = *cfg.init_q / (2.0 * std::sqrt(*cfg.init_b));
  const double d = cfg.damping;
  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    const auto sums = lattice_sums(c, 1.0 / std::sqrt(2.0 * es));
    if (!(sums.edges > 0.0)) return divergent(it);
    const double ratio = sums.second / sums.edges;
    const double next = es + d * (std::numbers::pi * ratio * ratio - es);
    if (!(next <= cfg.divergence_cap)) return divergent(it);
    const bool done = std::abs(next - es) <= cfg.tol * next;
    es = next;
    if (done) {
      ReplicaSolution s;
      s.q = lattice_sums(c, 1.0 / std::sqrt(2.0 * es)).second;
      s.b = std::pow(s.q / (2.0 * es), 2);
      s.p = s.q / es;
      s.es = es;
      s.eb = es;
      s.converged = true;
      s.iterations = it;
      return s;
    }
  }
  throw MaxIterations("square-channel iteration did not settle");
}

ReplicaSolution solve_quadrature(double alpha, std::span<const double> points, const FixedPointConfig& cfg) {
  require_alpha(alpha);
  cfg.validate();
  const auto c = sorted_copy(points);
  if (c.size() == 1) {
    if (alpha >= 1.0) return divergent(0);
    ReplicaSolution s;
    s.q = 2.0 * c[0] * c[0];
    s.b = 0.0;
    s.p = 1.0 - alpha;
    s.es = s.q / (1.0 - alpha);
    s.eb = s.es / 2.0;
    s.converged = s.es <= cfg.divergence_cap;
    return s.converged ? s : divergent(0);
  }
  const double q0 = cfg.init_q.value_or(2.0 * min_square(c));
  const double p0 = initial_p(alpha, cfg, std::max(1.0 - alpha, 0.1));
  auto s = iterate_qp(q0, p0, cfg, [&](double q, double p, double& q1, double& p1) {
    const auto sums = lattice_sums(c, std::sqrt(p / (2.0 * q * alpha)));
    q1 = 2.0 * sums.second;
    p1 = 1.0 - alpha + std::sqrt(4.0 * alpha * p / (std::numbers::pi * q)) * sums.edges;
    return true;
  });
  return finish_rectangular(s, alpha, 2.0, cfg);
}

ReplicaSolution solve_semidiscrete(double alpha, std::span<const double> points, const FixedPointConfig& cfg) {
  require_alpha(alpha);
  cfg.validate();
  const auto c = sorted_copy(points);
  const auto spec = rmt::RTransformSpec::inverse_gramian(alpha);

  ReplicaSolution s;
  if (c.size() == 1) {
    // p = 1 exactly; the free imaginary part contributes q alpha / 2.
    if (alpha >= 2.0) return divergent(0);
    s.q = c[0] * c[0] / (1.0 - 0.5 * alpha);
    s.p = 1.0;
    s.converged = true;
  } else {
    const double q0 = cfg.init_q.value_or(min_square(c));
    const double p0 = initial_p(alpha, cfg, 1.0);
    s = iterate_qp(q0, p0, cfg, [&](double q, double p, double& q1, double& p1) {
      const auto sums = lattice_sums(c, std::sqrt(p / (2.0 * q * alpha)));
      // R'/R^2 = alpha / p for channel inversion.
      q1 = q * alpha / (2.0 * p) + sums.second;
      p1 = 1.0 + std::sqrt(alpha * p / (std::numbers::pi * q)) * sums.edges;
      return true;
    });
    if (!s.converged) return s;
  }
  const double p = *s.p;
  s.b = (p * p - (1.0 - alpha) * (1.0 - alpha)) / (4.0 * alpha);
  s.es = energy_from_qb(s.q, s.b, spec, cfg.fd_step);
  if (!(s.es > 0.0 && s.es <= cfg.divergence_cap)) return divergent(s.iterations);
  s.eb = s.es;
  return s;
}

}  // namespace vecoder::replica
