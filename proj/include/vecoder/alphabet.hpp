// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vecoder {

using cplx = std::complex<double>;

enum class AlphabetKind {
  OneDimLattice,        ///< BPSK relaxed on the real line, B_1 = -B_0.
  QuadratureLattice,    ///< Gray-mapped QPSK, independent 1-D relaxation per quadrature component.
  CheckerboardLattice,  ///< BPSK relaxed in the plane, B_1 = j B_0.
  SemiDiscrete,         ///< Discrete real part as for OneDimLattice, free imaginary part.
};

std::string_view to_string(AlphabetKind kind);
AlphabetKind alphabet_kind_from_string(std::string_view s);

/// The first `count` points of the alternating odd-integer sequence
/// +1, -3, +5, -7, ... i.e. the smallest-magnitude part of 4Z + 1.
std::vector<double> alternating_lattice(std::size_t count);

/// A relaxed signal set {B_s : s in S}.
///
/// `points` holds the real base set P (sorted ascending) from which every
/// B_s is derived:
///   - OneDimLattice / SemiDiscrete: B_0 = P (+ jR), B_1 = -P (+ jR)
///   - QuadratureLattice: B_xy = (+-P) + j(+-P), first bit flips the real
///     sign, second bit the imaginary sign
///   - CheckerboardLattice: B_0 = ((1+j)/2) B_00, B_1 = j B_0, i.e. the
///     quadrature sets B_00 and B_10 rotated by 45 degrees and scaled by 1/sqrt 2
class Alphabet {
 public:
  Alphabet(AlphabetKind kind, std::vector<double> points);

  /// Alphabet built on the alternating integer lattice truncated to L points.
  static Alphabet standard(AlphabetKind kind, std::size_t L);

  AlphabetKind kind() const { return kind_; }
  std::size_t L() const { return points_.size(); }
  const std::vector<double>& points() const { return points_; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::size_t symbol_count() const { return symbols_.size(); }
  std::size_t symbol_index(std::string_view label) const;
  double bits_per_symbol() const;

  bool is_finite() const { return kind_ != AlphabetKind::SemiDiscrete; }
  bool is_real() const { return kind_ == AlphabetKind::OneDimLattice; }

  /// Real parts available to symbol s (OneDimLattice / SemiDiscrete), sorted ascending.
  std::vector<double> real_points(std::size_t s) const;

  /// Number of representation points of B_s (finite kinds).
  std::size_t set_size() const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  AlphabetKind kind_;
  std::vector<double> points_;
  std::vector<std::string> symbols_;
};

/// Distribution of the data symbols.
struct DataPrior {
  std::vector<std::pair<std::size_t, double>> entries;

  static DataPrior uniform(const Alphabet& a);
  /// Throws InvalidArgument unless probabilities are nonnegative, sum to one
  /// within 1e-12 and reference symbols of `a`.
  void validate(const Alphabet& a) const;
};

/// All representation points of B_s. Throws UnsupportedKind for SemiDiscrete.
std::vector<cplx> enumerate_points(const Alphabet& a, std::size_t s);

/// Voronoi cell boundaries (c_i + c_{i-1}) / 2 of a strictly increasing list.
std::vector<double> voronoi_boundaries(std::span<const double> sorted_points);

/// Point of B_s closest to y. Ties go to the smallest |x|, then positive real
/// part, then positive imaginary part.
cplx nearest_point(const Alphabet& a, std::size_t s, cplx y);

}  // namespace vecoder
