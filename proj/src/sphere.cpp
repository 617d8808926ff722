// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "search_detail.hpp"
#include "vecoder/errors.hpp"

namespace vecoder::mc {

namespace detail {

namespace {

class Search {
 public:
  Search(const CMatrix& J, const Candidates& sets) : J_(J), sets_(sets), k_(sets.size()) {
    Eigen::LLT<CMatrix> llt(J);
    if (llt.info() != Eigen::Success) throw NumericalFailure("Cholesky factorisation of J failed");
    U_ = llt.matrixU();
    idx_.assign(k_, 0);
    best_idx_.assign(k_, 0);
    x_ = CVector::Zero(static_cast<Eigen::Index>(k_));
  }

  Precoded run() {
    descend(k_, 0.0);
    Precoded out;
    out.x = CVector(static_cast<Eigen::Index>(k_));
    for (std::size_t i = 0; i < k_; ++i) out.x[static_cast<Eigen::Index>(i)] = sets_[i][best_idx_[i]];
    out.energy = quadratic_energy(J_, out.x);
    out.nodes = nodes_;
    return out;
  }

 private:
  // Assigns coordinate level - 1 given coordinates level .. k-1.
  void descend(std::size_t level, double partial) {
    if (level == 0) {
      const double e = quadratic_energy(J_, x_);
      const bool smaller_index = std::lexicographical_compare(idx_.begin(), idx_.end(), best_idx_.begin(),
                                                              best_idx_.end());
      if (e < best_ - kTieTolerance || (e <= best_ + kTieTolerance && smaller_index)) {
        best_ = e;
        best_idx_ = idx_;
      }
      return;
    }
    const auto i = static_cast<Eigen::Index>(level - 1);
    cplx centre = 0.0;
    for (Eigen::Index j = i + 1; j < static_cast<Eigen::Index>(k_); ++j) centre += U_(i, j) * x_[j];

    const auto& cand = sets_[level - 1];
    std::vector<std::pair<double, std::size_t>> order(cand.size());
    for (std::size_t c = 0; c < cand.size(); ++c) order[c] = {std::norm(U_(i, i) * cand[c] + centre), c};
    std::sort(order.begin(), order.end());

    const double scale = static_cast<double>(k_);
    for (const auto& [inc, c] : order) {
      const double next = partial + inc;
      if (next / scale > best_ + kTieTolerance) break;
      ++nodes_;
      idx_[level - 1] = c;
      x_[i] = cand[c];
      descend(level - 1, next);
    }
    x_[i] = 0.0;
  }

  const CMatrix& J_;
  const Candidates& sets_;
  std::size_t k_;
  CMatrix U_;
  CVector x_;
  std::vector<std::size_t> idx_;
  std::vector<std::size_t> best_idx_;
  double best_ = std::numeric_limits<double>::infinity();
  std::size_t nodes_ = 0;
};

}  // namespace

Precoded branch_and_bound(const CMatrix& J, const Candidates& sets) {
  if (sets.empty()) throw InvalidArgument("empty data vector");
  return Search(J, sets).run();
}

}  // namespace detail

Precoded precode_sphere(const CMatrix& J, std::span<const std::size_t> s, const Alphabet& a) {
  if (!a.is_finite()) throw UnsupportedKind("precode_sphere needs a finite alphabet; use precode_semidiscrete");
  return detail::branch_and_bound(J, detail::candidates_for(a, s));
}

}  // namespace vecoder::mc
