#include "pathforest/merge_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pathforest {

namespace detail {

Condensed Condensed::from(const SampledPath& path) {
  Condensed c;
  const std::size_t n = path.size();
  c.t_start.reserve(n);
  c.t_end.reserve(n);
  c.value.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = path.value(i);
    if (!c.value.empty() && c.value.back() == v) {
      c.t_end.back() = path.time(i);
    } else {
      c.t_start.push_back(path.time(i));
      c.t_end.push_back(path.time(i));
      c.value.push_back(v);
    }
  }
  return c;
}

}  // namespace detail

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
};

struct Component {
  double peak_value;
  double peak_time;  // plateau start of the running maximum
  int peak_leaf;     // leaf node carrying that maximum
  int bottom_node;   // current lowest tree node of this component
  int left_ptr;      // condensed index bounding the excursion on the left
  int right_ptr;
};

}  // namespace

MergeTree build_merge_tree(const SampledPath& path) {
  MergeTree tree;
  tree.cond_ = detail::Condensed::from(path);
  const auto& c = tree.cond_;
  const std::size_t m = c.size();
  if (m < 2) fail(Errc::constant_path, "path is constant");
  const auto& v = c.value;

  // extrema of the condensed sequence (adjacent values are distinct)
  std::vector<int> maxima, minima;
  for (std::size_t k = 0; k < m; ++k) {
    const bool up_left = (k == 0) || v[k] > v[k - 1];
    const bool up_right = (k + 1 == m) || v[k] > v[k + 1];
    if (up_left && up_right) maxima.push_back(static_cast<int>(k));
    if (!up_left && !up_right) minima.push_back(static_cast<int>(k));
  }

  std::vector<Component> comps(maxima.size());
  std::vector<int> comp_of_max(m, -1);
  Dsu dsu(maxima.size());
  for (std::size_t j = 0; j < maxima.size(); ++j) {
    const int k = maxima[j];
    TreeNode leaf;
    leaf.id = static_cast<int>(tree.nodes_.size());
    leaf.level = v[static_cast<std::size_t>(k)];
    leaf.kind = NodeKind::leaf;
    leaf.t_start = c.t_start[static_cast<std::size_t>(k)];
    leaf.t_end = c.t_end[static_cast<std::size_t>(k)];
    leaf.peak_index = k;
    tree.nodes_.push_back(leaf);
    tree.leaves_.push_back(leaf.id);
    comps[j] = {leaf.level, leaf.t_start, leaf.id, leaf.id, k, k};
    comp_of_max[static_cast<std::size_t>(k)] = static_cast<int>(j);
  }

  // nearest maxima around each knot (extrema alternate along the line)
  std::vector<int> left_max(m, -1), right_max(m, -1);
  {
    int last = -1;
    for (int k = 0; k < static_cast<int>(m); ++k) {
      left_max[static_cast<std::size_t>(k)] = last;
      if (comp_of_max[static_cast<std::size_t>(k)] >= 0) last = k;
    }
    last = -1;
    for (int k = static_cast<int>(m) - 1; k >= 0; --k) {
      right_max[static_cast<std::size_t>(k)] = last;
      if (comp_of_max[static_cast<std::size_t>(k)] >= 0) last = k;
    }
  }

  std::vector<int> interior_minima;
  for (int k : minima)
    if (k != 0 && k + 1 != static_cast<int>(m)) interior_minima.push_back(k);
  // descending level; equal-level minima in time order, which guarantees the
  // only component whose bottom can already sit at the merge level is the
  // left one
  std::sort(interior_minima.begin(), interior_minima.end(),
            [&](int a, int b) {
              const double va = v[static_cast<std::size_t>(a)];
              const double vb = v[static_cast<std::size_t>(b)];
              if (va != vb) return va > vb;
              return a < b;
            });

  // crossing time of level x between condensed knots a (at or below x) and b
  // (above x); a may be left or right of b
  auto cross = [&](int a, int b, double x) {
    const double va = v[static_cast<std::size_t>(a)];
    const double vb = v[static_cast<std::size_t>(b)];
    const double ta = a < b ? c.t_end[static_cast<std::size_t>(a)]
                            : c.t_start[static_cast<std::size_t>(a)];
    if (va == x) return ta;
    const double tb = a < b ? c.t_start[static_cast<std::size_t>(b)]
                            : c.t_end[static_cast<std::size_t>(b)];
    return ta + (x - va) / (vb - va) * (tb - ta);
  };

  auto attach = [&](int child, int parent_id) {
    tree.nodes_[static_cast<std::size_t>(child)].parent = parent_id;
    tree.nodes_[static_cast<std::size_t>(parent_id)].children.push_back(child);
    auto& pn = tree.nodes_[static_cast<std::size_t>(parent_id)];
    const auto& cn = tree.nodes_[static_cast<std::size_t>(child)];
    tree.total_length_ += cn.level - pn.level;
    pn.height = std::max(pn.height, cn.level - pn.level + cn.height);
  };

  for (int k : interior_minima) {
    const double x = v[static_cast<std::size_t>(k)];
    const int jl = dsu.find(
        comp_of_max[static_cast<std::size_t>(left_max[static_cast<std::size_t>(k)])]);
    const int jr = dsu.find(
        comp_of_max[static_cast<std::size_t>(right_max[static_cast<std::size_t>(k)])]);
    Component cl = comps[static_cast<std::size_t>(jl)];
    Component cr = comps[static_cast<std::size_t>(jr)];
    const bool left_elder =
        cl.peak_value > cr.peak_value ||
        (cl.peak_value == cr.peak_value && cl.peak_time <= cr.peak_time);
    const Component& elder = left_elder ? cl : cr;
    const Component& younger = left_elder ? cr : cl;
    tree.nodes_[static_cast<std::size_t>(younger.peak_leaf)].persistence =
        younger.peak_value - x;

    int merged_bottom;
    const auto& lb = tree.nodes_[static_cast<std::size_t>(cl.bottom_node)];
    if (lb.kind == NodeKind::branch && lb.level == x) {
      attach(cr.bottom_node, lb.id);
      merged_bottom = lb.id;
    } else {
      TreeNode node;
      node.id = static_cast<int>(tree.nodes_.size());
      node.level = x;
      node.kind = NodeKind::branch;
      tree.nodes_.push_back(node);
      attach(cl.bottom_node, node.id);
      attach(cr.bottom_node, node.id);
      merged_bottom = node.id;
    }

    int lp = cl.left_ptr;
    while (lp > 0 && v[static_cast<std::size_t>(lp - 1)] > x) --lp;
    int rp = cr.right_ptr;
    while (rp + 1 < static_cast<int>(m) &&
           v[static_cast<std::size_t>(rp + 1)] > x)
      ++rp;
    auto& nb = tree.nodes_[static_cast<std::size_t>(merged_bottom)];
    nb.t_start = (lp > 0) ? cross(lp - 1, lp, x)
                          : c.t_start[static_cast<std::size_t>(k)];
    nb.t_end = (rp + 1 < static_cast<int>(m))
                   ? cross(rp + 1, rp, x)
                   : c.t_end[static_cast<std::size_t>(k)];

    dsu.parent[jl] = jr;  // either direction; state lives in comps[root]
    comps[static_cast<std::size_t>(dsu.find(jr))] = {
        elder.peak_value, elder.peak_time, elder.peak_leaf,
        merged_bottom,    lp,              rp};
  }

  // root at the global infimum level
  const double inf = path.min_value();
  const Component final_comp = comps[static_cast<std::size_t>(dsu.find(0))];
  double first_att = 0, last_att = 0;
  for (std::size_t k = 0; k < m; ++k)
    if (v[k] == inf) {
      first_att = c.t_start[k];
      break;
    }
  for (std::size_t k = m; k-- > 0;)
    if (v[k] == inf) {
      last_att = c.t_end[k];
      break;
    }

  auto& bottom = tree.nodes_[static_cast<std::size_t>(final_comp.bottom_node)];
  if (bottom.kind == NodeKind::branch && bottom.level == inf) {
    bottom.kind = NodeKind::root;
    bottom.t_start = first_att;
    bottom.t_end = last_att;
    tree.root_ = bottom.id;
  } else {
    TreeNode root;
    root.id = static_cast<int>(tree.nodes_.size());
    root.level = inf;
    root.kind = NodeKind::root;
    root.t_start = first_att;
    root.t_end = last_att;
    tree.nodes_.push_back(root);
    attach(final_comp.bottom_node, root.id);
    tree.root_ = root.id;
  }
  tree.nodes_[static_cast<std::size_t>(final_comp.peak_leaf)].persistence =
      final_comp.peak_value - inf;

  return tree;
}

std::vector<double> persistence_pairs(const MergeTree& tree) {
  std::vector<double> out;
  out.reserve(tree.leaf_count());
  for (int id : tree.leaves()) out.push_back(tree.node(id).persistence);
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

int count_at_scale(const std::vector<double>& sorted_persistence, double a) {
  auto it = std::lower_bound(sorted_persistence.begin(),
                             sorted_persistence.end(), a,
                             [](double h, double s) { return h >= s; });
  return static_cast<int>(it - sorted_persistence.begin());
}

double length_at_scale(const std::vector<double>& sorted_persistence,
                       double a) {
  double total = 0;
  for (double h : sorted_persistence) {
    if (h <= a) break;
    total += h - a;
  }
  return total;
}

double height_integral(const MergeTree& tree, double p) {
  if (p < 1.0) fail(Errc::invalid_exponent, "p must be >= 1");
  double total = 0;
  for (const auto& n : tree.nodes()) {
    if (n.parent < 0) continue;
    const double len = n.level - tree.node(n.parent).level;
    const double h = n.height;
    total += (std::pow(h + len, p) - std::pow(h, p)) / p;
  }
  return total;
}

}  // namespace pathforest
