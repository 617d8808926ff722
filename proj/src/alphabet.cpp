// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#include "vecoder/alphabet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vecoder/errors.hpp"

namespace vecoder {

namespace {

// Preference among equidistant candidates.
bool preferred(cplx a, cplx b) {
  const double na = std::norm(a);
  const double nb = std::norm(b);
  if (na != nb) return na < nb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

double nearest_on_line(std::span<const double> sorted, double y) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), y);
  if (it == sorted.begin()) return *it;
  if (it == sorted.end()) return sorted.back();
  const double hi = *it;
  const double lo = *(it - 1);
  const double dhi = hi - y;
  const double dlo = y - lo;
  if (dlo < dhi) return lo;
  if (dhi < dlo) return hi;
  return preferred(cplx{lo, 0.0}, cplx{hi, 0.0}) ? lo : hi;
}

std::vector<double> negated(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  std::transform(v.rbegin(), v.rend(), out.begin(), [](double x) { return -x; });
  return out;
}

}  // namespace

std::string_view to_string(AlphabetKind kind) {
  switch (kind) {
    case AlphabetKind::OneDimLattice: return "1d";
    case AlphabetKind::QuadratureLattice: return "quadrature";
    case AlphabetKind::CheckerboardLattice: return "checkerboard";
    case AlphabetKind::SemiDiscrete: return "semidiscrete";
  }
  return "?";
}

AlphabetKind alphabet_kind_from_string(std::string_view s) {
  if (s == "1d" || s == "one-dim") return AlphabetKind::OneDimLattice;
  if (s == "quadrature") return AlphabetKind::QuadratureLattice;
  if (s == "checkerboard") return AlphabetKind::CheckerboardLattice;
  if (s == "semidiscrete" || s == "semi-discrete") return AlphabetKind::SemiDiscrete;
  throw InvalidArgument("unknown lattice kind '" + std::string(s) + "'");
}

std::vector<double> alternating_lattice(std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double mag = static_cast<double>(2 * i + 1);
    out.push_back(i % 2 == 0 ? mag : -mag);
  }
  return out;
}

Alphabet::Alphabet(AlphabetKind kind, std::vector<double> points)
    : kind_(kind), points_(std::move(points)) {
  if (points_.empty()) throw InvalidArgument("alphabet needs at least one point");
  for (double p : points_) {
    if (!std::isfinite(p)) throw InvalidArgument("alphabet points must be finite");
  }
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end()) {
    throw InvalidArgument("alphabet points must be distinct");
  }
  if (kind_ == AlphabetKind::QuadratureLattice) {
    symbols_ = {"00", "01", "10", "11"};
  } else {
    symbols_ = {"0", "1"};
  }
  // The sets of different symbols must not intersect. For the sign-flip
  // families this means P and -P are disjoint.
  for (double p : points_) {
    if (std::binary_search(points_.begin(), points_.end(), -p)) {
      throw InvalidArgument("base point set intersects its own negation; sets would overlap");
    }
  }
}

Alphabet Alphabet::standard(AlphabetKind kind, std::size_t L) {
  if (L == 0) throw InvalidArgument("L must be positive");
  return Alphabet(kind, alternating_lattice(L));
}

std::size_t Alphabet::symbol_index(std::string_view label) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] == label) return i;
  }
  throw InvalidArgument("unknown data symbol '" + std::string(label) + "'");
}

double Alphabet::bits_per_symbol() const { return std::log2(static_cast<double>(symbols_.size())); }

std::vector<double> Alphabet::real_points(std::size_t s) const {
  if (kind_ != AlphabetKind::OneDimLattice && kind_ != AlphabetKind::SemiDiscrete) {
    throw UnsupportedKind("real_points is defined for one-dimensional relaxations only");
  }
  if (s >= symbols_.size()) throw InvalidArgument("data symbol out of range");
  return s == 0 ? points_ : negated(points_);
}

std::size_t Alphabet::set_size() const {
  switch (kind_) {
    case AlphabetKind::OneDimLattice: return points_.size();
    case AlphabetKind::QuadratureLattice:
    case AlphabetKind::CheckerboardLattice: return points_.size() * points_.size();
    case AlphabetKind::SemiDiscrete: break;
  }
  throw UnsupportedKind("semi-discrete sets are not finite");
}

DataPrior DataPrior::uniform(const Alphabet& a) {
  DataPrior p;
  const double w = 1.0 / static_cast<double>(a.symbol_count());
  for (std::size_t s = 0; s < a.symbol_count(); ++s) p.entries.emplace_back(s, w);
  return p;
}

void DataPrior::validate(const Alphabet& a) const {
  if (entries.empty()) throw InvalidArgument("data prior is empty");
  double total = 0.0;
  for (const auto& [s, prob] : entries) {
    if (s >= a.symbol_count()) throw InvalidArgument("data prior references an unknown symbol");
    if (!(prob >= 0.0)) throw InvalidArgument("data prior has a negative probability");
    total += prob;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("data prior does not sum to one");
}

std::vector<cplx> enumerate_points(const Alphabet& a, std::size_t s) {
  if (s >= a.symbol_count()) throw InvalidArgument("data symbol out of range");
  const auto& p = a.points();
  std::vector<cplx> out;
  switch (a.kind()) {
    case AlphabetKind::SemiDiscrete:
      throw UnsupportedKind("semi-discrete sets have a continuous imaginary part");
    case AlphabetKind::OneDimLattice: {
      const double sign = s == 0 ? 1.0 : -1.0;
      for (double c : p) out.emplace_back(sign * c, 0.0);
      break;
    }
    case AlphabetKind::QuadratureLattice: {
      const double re_sign = (s >> 1) == 0 ? 1.0 : -1.0;
      const double im_sign = (s & 1) == 0 ? 1.0 : -1.0;
      out.reserve(p.size() * p.size());
      for (double re : p) {
        for (double im : p) out.emplace_back(re_sign * re, im_sign * im);
      }
      break;
    }
    case AlphabetKind::CheckerboardLattice: {
      // (1+j)/2 * (re + j im); exact in binary for integer lattices.
      out.reserve(p.size() * p.size());
      for (double re : p) {
        for (double im : p) {
          const cplx x{0.5 * (re - im), 0.5 * (re + im)};
          out.push_back(s == 0 ? x : cplx{-x.imag(), x.real()});
        }
      }
      break;
    }
  }
  return out;
}

std::vector<double> voronoi_boundaries(std::span<const double> sorted_points) {
  if (sorted_points.size() < 2) throw TooFewPoints("Voronoi boundaries need at least two points");
  std::vector<double> out;
  out.reserve(sorted_points.size() - 1);
  for (std::size_t i = 1; i < sorted_points.size(); ++i) {
    if (!(sorted_points[i] > sorted_points[i - 1])) {
      throw InvalidArgument("points must be strictly increasing");
    }
    out.push_back(0.5 * (sorted_points[i] + sorted_points[i - 1]));
  }
  return out;
}

cplx nearest_point(const Alphabet& a, std::size_t s, cplx y) {
  if (s >= a.symbol_count()) throw InvalidArgument("data symbol out of range");
  switch (a.kind()) {
    case AlphabetKind::OneDimLattice: {
      const auto pts = a.real_points(s);
      return {nearest_on_line(pts, y.real()), 0.0};
    }
    case AlphabetKind::SemiDiscrete: {
      const auto pts = a.real_points(s);
      return {nearest_on_line(pts, y.real()), y.imag()};
    }
    case AlphabetKind::QuadratureLattice:
    case AlphabetKind::CheckerboardLattice: break;
  }
  const auto pts = enumerate_points(a, s);
  cplx best = pts.front();
  double best_d = std::norm(y - best);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double d = std::norm(y - pts[i]);
    if (d < best_d || (d == best_d && preferred(pts[i], best))) {
      best = pts[i];
      best_d = d;
    }
  }
  return best;
}

}  // namespace vecoder
