#pragma once

#include <optional>
#include <vector>

#include "pathforest/merge_tree.hpp"
#include "pathforest/path.hpp"

namespace pathforest {

// Per-scale stopping-time record. Interleaving S_0=0 <= T_1 <= S_1 <= ... ;
// the final S is undefined exactly when the sweep stops there, so S has one
// entry less than T in that case. U holds the interior argmin times U_1..
// U_{N-1}. Times are reported in original [0,1] coordinates, clipped when
// the internal extension places a stopping time outside; level_T/level_S
// keep the exact path values at the unclipped times.
struct TrimEvents {
  double scale = 0;
  int count = 0;  // N^a
  std::vector<double> T, S, U;
  std::vector<double> level_T, level_S;
  bool used_extension = false;
  bool last_t_beyond_end = false;  // final T fell on the appended ramp
};

TrimEvents trim_events(const SampledPath& path, double a);

struct LeafPair {
  double tau_up = 0;    // start of the excursion
  double tau_down = 0;  // end of the excursion (= T_i)
  double level = 0;
  bool boundary = false;  // an endpoint fell outside [0,1] before clipping
};

/// Leaf excursion pairs of the trimmed tree at scale a, in time order.
std::vector<LeafPair> leaf_pairs(const SampledPath& path, double a);

/// Flattened path w^a: excursions of height < a collapse; piecewise
/// monotone between the stopping times, 0 <= w - w^a <= a everywhere.
SampledPath flatten(const SampledPath& path, double a);

struct ScaleGrid {
  std::vector<double> scales;        // strictly decreasing, positive
  double discretization_floor = 0;   // 4x largest knot increment

  static ScaleGrid geometric(double a_max, double a_min, int count);
  /// Default grid: a_max = sup-inf, ratio 2^{-1/4}, floored near the
  /// sampling resolution.
  static ScaleGrid auto_for(const SampledPath& path, int count = 40,
                            double ratio = 0.8408964152537145);
};

// Scale profile a -> (N^a, L^a). Lengths are computed by two independent
// routes: the leaf-sum formula from the stopping times and the integral of
// the exact step function N(.) (equivalently sum of (persistence - a)+);
// both are stored and must agree.
struct TrimProfile {
  std::vector<double> scales;
  std::vector<int> counts;
  std::vector<double> lengths;       // leaf-sum route
  std::vector<double> lengths_step;  // step-function route
  std::vector<double> persistence;   // sorted descending; exact breakpoints
  double discretization_floor = 0;

  int count_at(double a) const { return count_at_scale(persistence, a); }
  double length_at(double a) const { return length_at_scale(persistence, a); }
};

TrimProfile trim_profile(const SampledPath& path, const ScaleGrid& grid);

}  // namespace pathforest
