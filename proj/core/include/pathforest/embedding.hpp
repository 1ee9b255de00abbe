#pragma once

#include <vector>

#include "pathforest/path.hpp"

namespace pathforest {

// Cadlag path on [0,1]: right-continuous with left limits, linear between
// knots (from rightValue_i to leftLimit_{i+1}), jumping at knots where
// leftLimit != rightValue. A pure-jump path is the special case where each
// leftLimit_{i+1} equals rightValue_i.
class CadlagPath {
 public:
  static CadlagPath from_knots(std::vector<double> times,
                               std::vector<double> left_limits,
                               std::vector<double> right_values);

  std::size_t size() const { return times_.size(); }
  double time(std::size_t i) const { return times_[i]; }
  double left(std::size_t i) const { return left_[i]; }
  double right(std::size_t i) const { return right_[i]; }
  bool jumps_at(std::size_t i) const { return left_[i] != right_[i]; }
  std::size_t jump_count() const;

  /// Right-continuous evaluation.
  double operator()(double t) const;

  /// Jumps counted as |left - right|.
  double total_variation() const;

  /// Interleaved value sequence r_0, l_1, r_1, ..., consecutive duplicates
  /// removed; p-variation of the path is the p-variation of this sequence.
  std::vector<double> interleaved_values() const;

 private:
  std::vector<double> times_, left_, right_;
};

enum class JumpWeightRule { proportional, equal };

// Continuous reparametrization of the cadlag graph: every jump gets a
// temporal window carrying a linear segment from the left limit to the right
// value. The tree and all variation quantities are invariant under the
// window-width choice.
struct GraphEmbedding {
  SampledPath continuous;
  struct MappedKnot {
    double original_time;
    double embedded_start;  // window start (== end when no jump)
    double embedded_end;
  };
  std::vector<MappedKnot> time_map;
  std::vector<double> jump_weights;  // one per jump, in knot order

  /// Embedded position of the post-jump point (t, w(t)).
  double forward(double t) const;
};

GraphEmbedding embed_cadlag(const CadlagPath& path,
                            JumpWeightRule rule = JumpWeightRule::proportional);

}  // namespace pathforest
