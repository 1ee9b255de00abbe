#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pathforest/path.hpp"

namespace pathforest {

// Two-level range-minimum index over a path's knot values: per-block minima
// with a sparse table on top. O(n) memory, O(block) query; for piecewise
// linear paths the infimum over [s,t] is the minimum of the interior knot
// values and the two interpolated endpoint values, which this returns
// exactly.
class RangeMinIndex {
 public:
  explicit RangeMinIndex(const SampledPath& path, std::size_t block = 64)
      : path_(&path), block_(block) {
    const std::size_t n = path.size();
    const std::size_t nb = (n + block_ - 1) / block_;
    block_min_.assign(nb, path.value(0));
    for (std::size_t b = 0; b < nb; ++b) {
      double m = path.value(b * block_);
      const std::size_t end = std::min(n, (b + 1) * block_);
      for (std::size_t i = b * block_; i < end; ++i)
        m = std::min(m, path.value(i));
      block_min_[b] = m;
    }
    // sparse table over block minima
    std::size_t levels = 1;
    while ((std::size_t{1} << levels) <= nb) ++levels;
    table_.assign(levels, block_min_);
    for (std::size_t k = 1; k < levels; ++k) {
      const std::size_t span = std::size_t{1} << k;
      for (std::size_t b = 0; b + span <= nb; ++b)
        table_[k][b] =
            std::min(table_[k - 1][b], table_[k - 1][b + span / 2]);
    }
  }

  /// Exact min of knot values over the closed index range [i,j].
  double knot_min(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    const std::size_t bi = i / block_, bj = j / block_;
    double m = path_->value(i);
    if (bi == bj) {
      for (std::size_t k = i; k <= j; ++k) m = std::min(m, path_->value(k));
      return m;
    }
    const std::size_t ei = std::min((bi + 1) * block_ - 1, j);
    for (std::size_t k = i; k <= ei; ++k) m = std::min(m, path_->value(k));
    for (std::size_t k = bj * block_; k <= j; ++k)
      m = std::min(m, path_->value(k));
    if (bj > bi + 1) {
      const std::size_t lo = bi + 1, hi = bj - 1;
      std::size_t level = 0;
      while ((std::size_t{2} << level) <= hi - lo + 1) ++level;
      const std::size_t span = std::size_t{1} << level;
      m = std::min({m, table_[level][lo], table_[level][hi + 1 - span]});
    }
    return m;
  }

  /// Exact infimum of the piecewise-linear interpolant over [s,t].
  double infimum(double s, double t) const {
    if (s > t) std::swap(s, t);
    double m = std::min((*path_)(s), (*path_)(t));
    const std::size_t is = path_->segment_index(s);
    const std::size_t it = path_->segment_index(t);
    std::size_t lo = is + 1;
    std::size_t hi = it;
    while (lo <= hi && !(path_->time(lo) > s)) ++lo;
    while (hi >= lo && !(path_->time(hi) < t)) --hi;
    if (lo <= hi) m = std::min(m, knot_min(lo, hi));
    return m;
  }

  double delta(double s, double t) const {
    return (*path_)(s) + (*path_)(t) - 2.0 * infimum(s, t);
  }

 private:
  const SampledPath* path_;
  std::size_t block_;
  std::vector<double> block_min_;
  std::vector<std::vector<double>> table_;
};

}  // namespace pathforest
