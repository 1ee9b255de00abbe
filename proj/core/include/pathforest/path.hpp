#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pathforest/errors.hpp"

namespace pathforest {

// Piecewise-linear continuous path on [0,1]. Immutable after construction;
// knot times are either stored explicitly or implied by a uniform grid.
// Constant paths are rejected (the whole machinery assumes a nonconstant
// path); constant sub-segments are fine.
class SampledPath {
 public:
  /// Empty placeholder; use the factories for a real path.
  SampledPath() = default;

  static SampledPath from_knots(std::vector<double> times,
                                std::vector<double> values);
  /// Values on the uniform grid k/(n-1).
  static SampledPath uniform(std::vector<double> values);
  /// Like from_knots but accepts a constant path (needed for valley floors).
  static SampledPath from_knots_allow_constant(std::vector<double> times,
                                               std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  bool is_uniform() const { return times_.empty(); }

  double time(std::size_t i) const {
    return times_.empty()
               ? static_cast<double>(i) / static_cast<double>(values_.size() - 1)
               : times_[i];
  }
  double value(std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double> times_vector() const;

  /// Linear-interpolated evaluation; t must lie in [0,1].
  double operator()(double t) const;

  /// Largest i with time(i) <= t (and i < size()-1).
  std::size_t segment_index(double t) const;

  /// Exact infimum of the interpolant over [s,t].
  double infimum(double s, double t) const;
  double supremum(double s, double t) const;

  /// Semi-distance w(s)+w(t)-2*inf over [s^t, svt]; symmetric in (s,t).
  double delta(double s, double t) const;

  double min_value() const { return min_value_; }
  double max_value() const { return max_value_; }
  double value_range() const { return max_value_ - min_value_; }
  double total_variation() const { return total_variation_; }
  /// Largest |v_{i+1}-v_i| over knots; the discretization floor is 4x this.
  double max_knot_increment() const { return max_increment_; }

  double first_value() const { return values_.front(); }
  double last_value() const { return values_.back(); }

 private:
  void finalize();

  std::vector<double> times_;  // empty means uniform grid
  std::vector<double> values_;
  double min_value_ = 0, max_value_ = 0;
  double total_variation_ = 0, max_increment_ = 0;
};

/// Affine time rescale of raw samples onto [0,1]; values unchanged.
SampledPath normalize(const std::vector<std::pair<double, double>>& raw_knots);

struct ExtensionResult {
  SampledPath path;      // extended path, renormalized onto [0,1]
  double original_start; // location of original t=0 in the new domain
  double original_end;   // location of original t=1
  bool extended_left = false;
  bool extended_right = false;
};

/// Minimal extension: monotone ramps so both endpoint values equal inf w.
/// Returns the input unchanged (identity window) when w(0)=w(1)=inf already.
ExtensionResult extend(const SampledPath& path);

/// True when w(0)=w(1)=inf w (the rooted-tree normalization).
bool om01_holds(const SampledPath& path, double tol = 1e-12);

/// t -> inf_{[0,t]} w  v  inf_{[t,1]} w; finite variation, lies below w.
SampledPath valley_floor(const SampledPath& path);

/// Restriction of the path to [s,t], renormalized onto [0,1].
SampledPath restrict_to(const SampledPath& path, double s, double t);

}  // namespace pathforest
