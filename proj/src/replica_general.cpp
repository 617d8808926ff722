// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "replica_detail.hpp"
#include "vecoder/errors.hpp"
#include "vecoder/gaussian.hpp"
#include "vecoder/replica.hpp"

namespace vecoder::replica {

namespace {

// Beyond this many standard deviations the outer Gaussian weight is ignored.
constexpr double kOuterRange = 10.0;

struct Moments {
  double second = 0.0;       // E|x|^2
  double correlation = 0.0;  // E Re(x z*)
};

// One line of the lower envelope: over t in [lo, hi] the nearest point is x.
struct Piece {
  double lo;
  double hi;
  cplx x;
};

// Representation points of one symbol, pre-sorted by imaginary part so that
// the lines |Y|^2 - 2 u Re Y - 2 t Im Y arrive with decreasing slope.
struct PlanarSet {
  std::vector<cplx> by_imag;
  std::vector<double> real_parts;  // unique, ascending
};

PlanarSet make_planar(std::vector<cplx> pts) {
  PlanarSet ps;
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
  });
  ps.by_imag = std::move(pts);
  for (cplx x : ps.by_imag) ps.real_parts.push_back(x.real());
  std::sort(ps.real_parts.begin(), ps.real_parts.end());
  ps.real_parts.erase(std::unique(ps.real_parts.begin(), ps.real_parts.end()), ps.real_parts.end());
  return ps;
}

// Lower envelope over t of f_k(t) = c_k + m_k t with slopes m_k = -2 Im Y_k
// non-increasing in k. `pieces` receives the minimising point per interval.
void lower_envelope(const PlanarSet& ps, double sigma, double u, std::vector<Piece>& pieces,
                    std::vector<std::size_t>& hull) {
  const auto slope = [&](std::size_t k) { return -2.0 * ps.by_imag[k].imag() / sigma; };
  const auto icpt = [&](std::size_t k) {
    const cplx y = ps.by_imag[k] / sigma;
    return std::norm(y) - 2.0 * u * y.real();
  };
  // x-coordinate where line j overtakes line i (slope_j < slope_i).
  const auto cross = [&](std::size_t i, std::size_t j) {
    return (icpt(j) - icpt(i)) / (slope(i) - slope(j));
  };
  hull.clear();
  for (std::size_t k = 0; k < ps.by_imag.size(); ++k) {
    if (!hull.empty() && slope(hull.back()) == slope(k)) {
      if (icpt(k) >= icpt(hull.back())) continue;
      hull.pop_back();
    }
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back()) >= cross(hull.back(), k)) {
      hull.pop_back();
    }
    hull.push_back(k);
  }
  pieces.clear();
  double lo = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const double hi = i + 1 < hull.size() ? cross(hull[i], hull[i + 1])
                                          : std::numeric_limits<double>::infinity();
    if (hi > lo) pieces.push_back({lo, hi, ps.by_imag[hull[i]]});
    lo = std::max(lo, hi);
  }
}

Moments planar_moments(const PlanarSet& ps, double sigma, int panels) {
  std::vector<double> breaks;
  for (std::size_t i = 1; i < ps.real_parts.size(); ++i) {
    breaks.push_back(0.5 * (ps.real_parts[i] + ps.real_parts[i - 1]) / sigma);
  }
  const auto rule = composite_gauss_legendre(-kOuterRange, kOuterRange, breaks,
                                             2.0 * kOuterRange / panels);
  Moments m;
  std::vector<Piece> pieces;
  std::vector<std::size_t> hull;
  for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
    const double u = rule.nodes[n];
    const double w = rule.weights[n] * gaussian_pdf(u);
    lower_envelope(ps, sigma, u, pieces, hull);
    for (const Piece& pc : pieces) {
      const double mass = detail::gaussian_mass(pc.lo, pc.hi);
      const double pdf_lo = std::isinf(pc.lo) ? 0.0 : gaussian_pdf(pc.lo);
      const double pdf_hi = std::isinf(pc.hi) ? 0.0 : gaussian_pdf(pc.hi);
      m.second += w * std::norm(pc.x) * mass;
      m.correlation += w * (pc.x.real() * u * mass + pc.x.imag() * (pdf_lo - pdf_hi));
    }
  }
  return m;
}

// Per-symbol state reused across iterations.
struct SymbolSet {
  double weight;
  std::vector<double> line;  // OneDimLattice / SemiDiscrete
  PlanarSet plane;           // Quadrature / Checkerboard
};

Moments alphabet_moments(const Alphabet& a, const std::vector<SymbolSet>& sets, double sigma, int panels) {
  Moments total;
  for (const auto& s : sets) {
    Moments m;
    if (a.is_finite() && !a.is_real()) {
      m = planar_moments(s.plane, sigma, panels);
    } else {
      const auto lm = detail::line_moments(s.line, sigma);
      m.second = lm.second_moment;
      m.correlation = lm.correlation;
      if (a.kind() == AlphabetKind::SemiDiscrete) {
        // Imaginary part follows the unit-variance Gaussian exactly.
        m.second += sigma * sigma;
        m.correlation += sigma;
      }
    }
    total.second += s.weight * m.second;
    total.correlation += s.weight * m.correlation;
  }
  return total;
}

bool pole_at_origin(const rmt::RTransformSpec& spec) {
  try {
    const double r0 = rmt::r_transform(spec, 0.0);
    return !std::isfinite(r0);
  } catch (const DivergentMoment&) {
    return true;
  }
}

ReplicaSolution finish(ReplicaSolution s, const rmt::RTransformSpec& spec, const Alphabet& a,
                       const FixedPointConfig& cfg) {
  s.es = energy_from_qb(s.q, s.b, spec, cfg.fd_step);
  if (!(s.es > 0.0 && s.es <= cfg.divergence_cap)) return detail::divergent(s.iterations);
  s.eb = s.es / a.bits_per_symbol();
  if (spec.family == rmt::Family::InverseGramian) {
    const double al = spec.alpha;
    s.p = std::sqrt((1.0 - al) * (1.0 - al) + 4.0 * al * s.b);
  }
  s.converged = true;
  return s;
}

}  // namespace

ReplicaSolution solve_general(const rmt::RTransformSpec& spec, const Alphabet& a, const DataPrior& prior,
                              const FixedPointConfig& cfg) {
  spec.validate();
  prior.validate(a);
  cfg.validate();

  std::vector<SymbolSet> sets;
  double min_sq = std::numeric_limits<double>::infinity();
  for (const auto& [s, w] : prior.entries) {
    if (w == 0.0) continue;
    SymbolSet set{w, {}, {}};
    if (a.is_finite() && !a.is_real()) {
      auto pts = enumerate_points(a, s);
      for (cplx x : pts) min_sq = std::min(min_sq, std::norm(x));
      set.plane = make_planar(std::move(pts));
    } else {
      set.line = a.real_points(s);
      for (double x : set.line) min_sq = std::min(min_sq, x * x);
    }
    sets.push_back(std::move(set));
  }

  double q = cfg.init_q.value_or(min_sq);
  double b = cfg.init_b.value_or(1.0);
  const double d = cfg.damping;
  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    if (b < 1e-12) {
      // No correlation left between precoded point and noise: the energy is
      // q R(0), finite only if the spectrum has a finite inverse moment.
      if (pole_at_origin(spec)) return detail::divergent(it);
      ReplicaSolution s;
      s.q = q;
      s.b = 0.0;
      s.iterations = it;
      return finish(s, spec, a, cfg);
    }
    double r = 0.0;
    double rp = 0.0;
    try {
      r = rmt::r_transform(spec, -b);
      rp = rmt::r_prime(spec, -b);
    } catch (const DomainError&) {
      return detail::divergent(it);
    }
    if (!(rp > 0.0) || !(r != 0.0)) return detail::divergent(it);
    const double sigma = std::sqrt(q * rp / (2.0 * r * r));
    const Moments m = alphabet_moments(a, sets, sigma, cfg.quad_order);
    const double q1 = m.second;
    const double b1 = m.correlation / std::sqrt(2.0 * q * rp);
    if (!std::isfinite(q1) || !std::isfinite(b1)) return detail::divergent(it);

    const double qn = q + d * (q1 - q);
    const double bn = b + d * (b1 - b);
    if (qn > cfg.divergence_cap) return detail::divergent(it);
    const bool done = std::abs(qn - q) <= cfg.tol * qn && std::abs(bn - b) <= cfg.tol * std::max(bn, 1e-300);
    q = qn;
    b = bn;
    if (done && b >= 1e-12) {
      ReplicaSolution s;
      s.q = q;
      s.b = b;
      s.iterations = it;
      return finish(s, spec, a, cfg);
    }
  }
  throw MaxIterations("general replica iteration did not settle within " + std::to_string(cfg.max_iter) +
                      " iterations");
}

}  // namespace vecoder::replica
