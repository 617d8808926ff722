// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace vecoder::rmt {

enum class Family {
  MarchenkoPastur,  ///< Gramian H H^H of a k x n matrix with CN(0, 1/n) entries, load alpha = k/n.
  InverseGramian,   ///< (H H^H)^{-1}, the matrix J seen by a channel-inverting precoder.
  Tabulated,        ///< Empirical spectrum given by a list of eigenvalues.
};

std::string_view to_string(Family f);
Family family_from_string(std::string_view s);

/// Which root of the quadratic R = 1 + alpha R (1 + w R) is returned for the
/// inverse Gramian. Only `Principal` is a valid R-transform; the other root
/// exists so that verification code can check that a wrong branch is caught.
enum class SqrtBranch { Principal, Conjugate };

/// Description of a limiting eigenvalue distribution through its R-transform.
struct RTransformSpec {
  Family family = Family::InverseGramian;
  double alpha = 0.5;
  std::vector<double> eigenvalues;  // Tabulated only
  SqrtBranch branch = SqrtBranch::Principal;

  static RTransformSpec marchenko_pastur(double alpha);
  static RTransformSpec inverse_gramian(double alpha);
  static RTransformSpec tabulated(std::vector<double> eigenvalues);
  /// Degenerate spectrum with all mass at `c`; R(w) = c for every w.
  static RTransformSpec point_mass(double c) { return tabulated({c}); }

  bool has_analytic_derivative() const { return family != Family::Tabulated; }
  /// Throws DomainError if the invariants of the chosen family are violated.
  void validate() const;
};

/// R(w). Throws DomainError outside the real branch and DivergentMoment when
/// the inverse Gramian with alpha >= 1 is evaluated at w = 0.
double r_transform(const RTransformSpec& spec, double w);

/// R'(w). Requires w strictly inside the real branch.
double r_prime(const RTransformSpec& spec, double w);

/// R(w)^2 / R'(w).
double r_ratio(const RTransformSpec& spec, double w);

/// m(s) = (1/n) sum 1/(x_i - s).
std::complex<double> stieltjes(std::span<const double> eigenvalues, std::complex<double> s);

/// Numeric R-transform of an empirical spectrum: solves m(s) = -w on the real
/// axis outside the spectrum and returns s - 1/w. At w = 0 returns the mean.
double r_from_stieltjes(std::span<const double> eigenvalues, double w);

/// Residual |1/R_X(w) - R_{X^-1}(-R_X(w)(1 + w R_X(w)))| of the inversion
/// identity linking the R-transforms of a matrix and of its inverse.
double verify_inverse_lemma(const RTransformSpec& x, const RTransformSpec& x_inverse, double w);

}  // namespace vecoder::rmt
