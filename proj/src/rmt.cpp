// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#include "vecoder/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "vecoder/errors.hpp"

namespace vecoder::rmt {

namespace {

constexpr int kMaxExpansions = 200;
constexpr int kMaxBisections = 400;

double mean_resolvent(std::span<const double> eigenvalues, double s) {
  double acc = 0.0;
  for (double x : eigenvalues) acc += 1.0 / (x - s);
  return acc / static_cast<double>(eigenvalues.size());
}

// Discriminant (1-a)^2 - 4 a w of the inverse-Gramian quadratic.
double ig_discriminant(double alpha, double w) {
  const double d = (1.0 - alpha) * (1.0 - alpha) - 4.0 * alpha * w;
  if (d < 0.0) {
    throw DomainError("inverse Gramian R-transform: w = " + std::to_string(w) +
                      " is outside the real branch for alpha = " + std::to_string(alpha));
  }
  return d;
}

// 1 - alpha + S, evaluated without cancellation. R(w) = 2 / (1 - alpha + S)
// is the principal branch with the removable singularity at w = 0 divided out.
double ig_principal_denominator(double alpha, double w, double root) {
  if (alpha <= 1.0) return (1.0 - alpha) + root;
  return -4.0 * alpha * w / (root + alpha - 1.0);
}

double ig_r(const RTransformSpec& spec, double w) {
  const double a = spec.alpha;
  const double root = std::sqrt(ig_discriminant(a, w));
  if (spec.branch == SqrtBranch::Conjugate) {
    if (w == 0.0) throw DivergentMoment("conjugate branch has a pole at w = 0");
    return (1.0 - a + root) / (2.0 * a * w);
  }
  const double den = ig_principal_denominator(a, w, root);
  if (w == 0.0 && a >= 1.0) {
    throw DivergentMoment("inverse Gramian with alpha >= 1 has a diverging mean (pole at w = 0)");
  }
  if (den == 0.0) throw DivergentMoment("inverse Gramian R-transform pole");
  return 2.0 / den;
}

double ig_r_prime(const RTransformSpec& spec, double w) {
  const double a = spec.alpha;
  const double root = std::sqrt(ig_discriminant(a, w));
  if (root == 0.0) {
    throw DomainError("inverse Gramian R'(w) requires w strictly inside the real branch");
  }
  if (spec.branch == SqrtBranch::Conjugate) {
    const double r = ig_r(spec, w);
    return -a * r * r / root;
  }
  if (w == 0.0 && a >= 1.0) {
    throw DivergentMoment("inverse Gramian with alpha >= 1 has a pole at w = 0");
  }
  // (1 - a - S)^2 / (4 a w^2 S) with (1 - a - S) = 4 a w / (1 - a + S).
  const double den = ig_principal_denominator(a, w, root);
  if (den == 0.0) throw DivergentMoment("inverse Gramian R-transform pole");
  return 4.0 * a / (den * den * root);
}

double mp_r(const RTransformSpec& spec, double w) {
  const double den = 1.0 - spec.alpha * w;
  if (den == 0.0) throw DomainError("Marchenko-Pastur R-transform has a pole at w = 1/alpha");
  return 1.0 / den;
}

double mp_r_prime(const RTransformSpec& spec, double w) {
  const double den = 1.0 - spec.alpha * w;
  if (den == 0.0) throw DomainError("Marchenko-Pastur R-transform has a pole at w = 1/alpha");
  return spec.alpha / (den * den);
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::MarchenkoPastur: return "mp";
    case Family::InverseGramian: return "inverse-gramian";
    case Family::Tabulated: return "tabulated";
  }
  return "?";
}

Family family_from_string(std::string_view s) {
  if (s == "mp" || s == "marchenko-pastur") return Family::MarchenkoPastur;
  if (s == "inverse-gramian" || s == "ig") return Family::InverseGramian;
  if (s == "tabulated") return Family::Tabulated;
  throw InvalidArgument("unknown R-transform family '" + std::string(s) + "'");
}

RTransformSpec RTransformSpec::marchenko_pastur(double alpha) {
  RTransformSpec s;
  s.family = Family::MarchenkoPastur;
  s.alpha = alpha;
  s.validate();
  return s;
}

RTransformSpec RTransformSpec::inverse_gramian(double alpha) {
  RTransformSpec s;
  s.family = Family::InverseGramian;
  s.alpha = alpha;
  s.validate();
  return s;
}

RTransformSpec RTransformSpec::tabulated(std::vector<double> eigenvalues) {
  RTransformSpec s;
  s.family = Family::Tabulated;
  s.alpha = 0.0;
  s.eigenvalues = std::move(eigenvalues);
  s.validate();
  return s;
}

void RTransformSpec::validate() const {
  switch (family) {
    case Family::MarchenkoPastur:
    case Family::InverseGramian:
      if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("load alpha must be a positive finite number");
      }
      break;
    case Family::Tabulated:
      if (eigenvalues.empty()) throw DomainError("tabulated spectrum must not be empty");
      for (double x : eigenvalues) {
        if (!std::isfinite(x)) throw DomainError("tabulated spectrum contains a non-finite value");
      }
      break;
  }
}

double r_transform(const RTransformSpec& spec, double w) {
  spec.validate();
  switch (spec.family) {
    case Family::MarchenkoPastur: return mp_r(spec, w);
    case Family::InverseGramian: return ig_r(spec, w);
    case Family::Tabulated: return r_from_stieltjes(spec.eigenvalues, w);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double r_prime(const RTransformSpec& spec, double w) {
  spec.validate();
  switch (spec.family) {
    case Family::MarchenkoPastur: return mp_r_prime(spec, w);
    case Family::InverseGramian: return ig_r_prime(spec, w);
    case Family::Tabulated: {
      const double h = std::max(1e-6, 1e-6 * std::abs(w));
      return (r_from_stieltjes(spec.eigenvalues, w + h) - r_from_stieltjes(spec.eigenvalues, w - h)) /
             (2.0 * h);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double r_ratio(const RTransformSpec& spec, double w) {
  spec.validate();
  if (spec.family == Family::InverseGramian) {
    const double root = std::sqrt(ig_discriminant(spec.alpha, w));
    // Same pole structure as R itself.
    (void)ig_r(spec, w);
    const double ratio = root / spec.alpha;
    return spec.branch == SqrtBranch::Principal ? ratio : -ratio;
  }
  const double r = r_transform(spec, w);
  const double rp = r_prime(spec, w);
  if (rp == 0.0) throw DivisionByZero("R'(w) vanishes; R^2/R' undefined");
  return r * r / rp;
}

std::complex<double> stieltjes(std::span<const double> eigenvalues, std::complex<double> s) {
  if (eigenvalues.empty()) throw DomainError("Stieltjes transform of an empty spectrum");
  std::complex<double> acc{0.0, 0.0};
  for (double x : eigenvalues) {
    const std::complex<double> d = x - s;
    if (d == std::complex<double>{0.0, 0.0}) {
      throw DomainError("Stieltjes transform evaluated at an eigenvalue");
    }
    acc += 1.0 / d;
  }
  return acc / static_cast<double>(eigenvalues.size());
}

double r_from_stieltjes(std::span<const double> eigenvalues, double w) {
  if (eigenvalues.empty()) throw DomainError("R-transform of an empty spectrum");
  const auto n = static_cast<double>(eigenvalues.size());
  if (w == 0.0) return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0) / n;

  const auto [min_it, max_it] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
  const double lo_eig = *min_it;
  const double hi_eig = *max_it;
  const double scale = std::max({1.0, std::abs(lo_eig), std::abs(hi_eig)});
  const double gap = 1e-12 * scale;
  const double target = -w;

  // m is increasing on both real half-lines outside the spectrum. Left of the
  // spectrum it runs through (0, +inf), right of it through (-inf, 0).
  double lo = 0.0;
  double hi = 0.0;
  if (w < 0.0) {
    hi = lo_eig - gap;
    if (mean_resolvent(eigenvalues, hi) <= target) {
      throw NoBracket("R-transform inversion: w too far from 0 for this spectrum");
    }
    double step = 1.0;
    lo = lo_eig - step;
    int k = 0;
    while (mean_resolvent(eigenvalues, lo) >= target) {
      if (++k > kMaxExpansions) throw NoBracket("R-transform inversion: no lower bracket");
      step *= 2.0;
      lo = lo_eig - step;
    }
  } else {
    lo = hi_eig + gap;
    if (mean_resolvent(eigenvalues, lo) >= target) {
      throw NoBracket("R-transform inversion: w too far from 0 for this spectrum");
    }
    double step = 1.0;
    hi = hi_eig + step;
    int k = 0;
    while (mean_resolvent(eigenvalues, hi) <= target) {
      if (++k > kMaxExpansions) throw NoBracket("R-transform inversion: no upper bracket");
      step *= 2.0;
      hi = hi_eig + step;
    }
  }

  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mean_resolvent(eigenvalues, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double s = 0.5 * (lo + hi);
  return s - 1.0 / w;
}

double verify_inverse_lemma(const RTransformSpec& x, const RTransformSpec& x_inverse, double w) {
  const double rx = r_transform(x, w);
  if (rx == 0.0) throw DivisionByZero("R_X(w) = 0 in inversion identity");
  const double arg = -rx * (1.0 + w * rx);
  return std::abs(1.0 / rx - r_transform(x_inverse, arg));
}

}  // namespace vecoder::rmt
