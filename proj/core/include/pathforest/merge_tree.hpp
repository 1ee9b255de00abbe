#pragma once

#include <vector>

#include "pathforest/path.hpp"

namespace pathforest {

namespace detail {

/// Knot sequence with plateaus (exactly equal adjacent values) collapsed to
/// single entries carrying their time span. No two adjacent values are equal.
struct Condensed {
  std::vector<double> t_start, t_end, value;
  static Condensed from(const SampledPath& path);
  std::size_t size() const { return value.size(); }
};

}  // namespace detail

enum class NodeKind { root, branch, leaf };

struct TreeNode {
  int id = -1;
  double level = 0;        // l(tau)
  int parent = -1;         // -1 for the root
  NodeKind kind = NodeKind::leaf;
  double t_start = 0;      // anchor interval [tau_up, tau_down]
  double t_end = 0;
  double height = 0;       // h(tau), 0 for leaves
  double persistence = 0;  // leaves: level at which the branch merges away
  int peak_index = -1;     // leaves: condensed knot index of the maximum
  std::vector<int> children;
};

// Explicit finite real tree of a piecewise-linear path. Leaves are the
// strict local maxima (boundary maxima included), branch nodes the interior
// local minima after plateau collapse, the root sits at inf w. Edge lengths
// are level differences, so total_length() is the length measure of the
// whole tree.
class MergeTree {
 public:
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  int root_id() const { return root_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  const std::vector<int>& leaves() const { return leaves_; }
  double total_length() const { return total_length_; }
  const detail::Condensed& condensed() const { return cond_; }

  friend MergeTree build_merge_tree(const SampledPath& path);

 private:
  std::vector<TreeNode> nodes_;
  std::vector<int> leaves_;
  int root_ = -1;
  double total_length_ = 0;
  detail::Condensed cond_;
};

/// Sorted sweep over local minima with union-find merging (elder rule: the
/// component with the higher running maximum survives; ties go to the earlier
/// maximum).
MergeTree build_merge_tree(const SampledPath& path);

/// One height per leaf (elder-rule pairing), sorted descending; the global
/// maximum is paired with the root. #{heights >= a} is the exact leaf count
/// of the trimmed tree at scale a.
std::vector<double> persistence_pairs(const MergeTree& tree);

/// Exact leaf count / total length of the trimmed tree at scale a, from the
/// sorted persistence multiset.
int count_at_scale(const std::vector<double>& sorted_persistence, double a);
double length_at_scale(const std::vector<double>& sorted_persistence, double a);

/// Exact integral of h^{p-1} against the length measure: h is affine with
/// unit slope along each edge, so an edge of length L below a node of height
/// h contributes ((h+L)^p - h^p)/p.
double height_integral(const MergeTree& tree, double p);

}  // namespace pathforest
