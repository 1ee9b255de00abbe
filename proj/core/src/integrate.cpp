#include "pathforest/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "pathforest/merge_tree.hpp"

namespace pathforest {

namespace {

constexpr double kGaussX[5] = {0.0, -0.5384693101056831, 0.5384693101056831,
                               -0.9061798459386640, 0.9061798459386640};
constexpr double kGaussW[5] = {0.5688888888888889, 0.4786286704993665,
                               0.4786286704993665, 0.2369268850561891,
                               0.2369268850561891};

template <typename Fn>
double gauss5(Fn&& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  double acc = 0;
  for (int i = 0; i < 5; ++i) acc += kGaussW[i] * f(c + h * kGaussX[i]);
  return acc * h;
}

}  // namespace

double stieltjes(const Integrand& rho, const SampledPath& path,
                 int subdivisions) {
  const auto& brk = rho.breakpoints();
  double total = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double t0 = path.time(i), t1 = path.time(i + 1);
    const double slope = (path.value(i + 1) - path.value(i)) / (t1 - t0);
    if (slope == 0.0) continue;
    // split at integrand breakpoints inside the segment
    double lo = t0;
    auto it = std::upper_bound(brk.begin(), brk.end(), t0);
    double seg = 0;
    while (lo < t1) {
      double hi = t1;
      while (it != brk.end() && *it <= lo) ++it;
      if (it != brk.end() && *it < t1) hi = *it;
      const double h = (hi - lo) / subdivisions;
      for (int s = 0; s < subdivisions; ++s)
        seg += gauss5(rho, lo + s * h, lo + (s + 1) * h);
      lo = hi;
      if (it != brk.end() && *it == hi) ++it;
    }
    total += slope * seg;
  }
  return total;
}

namespace {

struct SweepResult {
  double interior = 0;   // both pair times inside the original window
  double boundary = 0;   // zero-extended contribution of boundary arcs
  double tail = 0;       // signed mass below the discretization floor
};

// Exact integral of the leaf-pair differences over the trimming scale:
// along each elder branch the trimmed-tree leaf at level x has its pair
// times on fixed path segments between consecutive skyline knots, where the
// crossing times are affine in x. Integrating branch by branch realizes
// int I^a da with no grid error.
SweepResult branch_sweep(const Integrand& rho, const ExtensionResult& ext,
                         const MergeTree& tree, double floor_a) {
  const auto& c = tree.condensed();
  const auto& v = c.value;
  const double os = ext.original_start, oe = ext.original_end;
  const double width = oe - os;
  auto to_orig = [&](double t) { return (t - os) / width; };

  SweepResult res;
  for (int leaf_id : tree.leaves()) {
    const TreeNode& leaf = tree.node(leaf_id);
    const int k = leaf.peak_index;
    const double peak = leaf.level;
    const double merge_level = peak - leaf.persistence;
    int l = k - 1;
    int r = k + 1;
    double x_hi = peak;
    while (x_hi > merge_level) {
      const double x_lo =
          std::max({v[static_cast<std::size_t>(l)],
                    v[static_cast<std::size_t>(r)], merge_level});
      if (x_lo < x_hi) {
        // crossing times, affine in the level x
        const double ul_t = c.t_end[static_cast<std::size_t>(l)];
        const double ul_v = v[static_cast<std::size_t>(l)];
        const double ur_t = c.t_start[static_cast<std::size_t>(l + 1)];
        const double ur_v = v[static_cast<std::size_t>(l + 1)];
        const double du = (ur_t - ul_t) / (ur_v - ul_v);
        auto up_at = [&](double x) { return ul_t + (x - ul_v) * du; };

        const double dl_t = c.t_end[static_cast<std::size_t>(r - 1)];
        const double dl_v = v[static_cast<std::size_t>(r - 1)];
        const double dr_t = c.t_start[static_cast<std::size_t>(r)];
        const double dr_v = v[static_cast<std::size_t>(r)];
        const double dd = (dr_t - dl_t) / (dr_v - dl_v);
        auto down_at = [&](double x) { return dl_t + (x - dl_v) * dd; };

        // split where a crossing leaves the original window (affine => at
        // most one boundary crossing per side)
        std::vector<double> cuts = {x_lo, x_hi};
        auto add_cut = [&](double x) {
          if (x > x_lo && x < x_hi) cuts.push_back(x);
        };
        if (du != 0.0) add_cut(ul_v + (os - ul_t) / du);
        if (dd != 0.0) add_cut(dl_v + (oe - dl_t) / dd);
        const double floor_x = peak - floor_a;
        add_cut(floor_x);
        std::sort(cuts.begin(), cuts.end());

        for (std::size_t q = 0; q + 1 < cuts.size(); ++q) {
          const double a_ = cuts[q], b_ = cuts[q + 1];
          if (b_ <= a_) continue;
          const double mid = 0.5 * (a_ + b_);
          const bool u_in = up_at(mid) >= os;
          const bool d_in = down_at(mid) <= oe;
          auto f = [&](double x) {
            double val = 0;
            if (u_in) val += rho(std::clamp(to_orig(up_at(x)), 0.0, 1.0));
            if (d_in) val -= rho(std::clamp(to_orig(down_at(x)), 0.0, 1.0));
            return val;
          };
          if (!u_in && !d_in) continue;
          const double piece = gauss5(f, a_, b_);
          if (u_in && d_in)
            res.interior += piece;
          else
            res.boundary += piece;
          if (mid > floor_x) res.tail += piece;
        }
      }
      if (x_lo <= merge_level) break;
      // advance whichever skyline pointer bounds the piece; if neither can
      // descend (fp ties at the root level) the remaining sliver is empty
      bool advanced = false;
      if (v[static_cast<std::size_t>(l)] == x_lo) {
        int idx = l - 1;
        while (idx > 0 && v[static_cast<std::size_t>(idx)] >= x_lo) --idx;
        if (v[static_cast<std::size_t>(idx)] < x_lo) {
          l = idx;
          advanced = true;
        }
      }
      if (v[static_cast<std::size_t>(r)] == x_lo) {
        int idx = r + 1;
        while (idx < static_cast<int>(v.size()) - 1 &&
               v[static_cast<std::size_t>(idx)] >= x_lo)
          ++idx;
        if (v[static_cast<std::size_t>(idx)] < x_lo) {
          r = idx;
          advanced = true;
        }
      }
      if (!advanced) break;
      x_hi = x_lo;
    }
  }
  return res;
}

double leaf_sum_at(const Integrand& rho, const SampledPath& path, double a) {
  double acc = 0;
  for (const LeafPair& lp : leaf_pairs(path, a)) {
    if (lp.boundary) continue;
    acc += rho(lp.tau_up) - rho(lp.tau_down);
  }
  return acc;
}

}  // namespace

IntegralReport tree_integral(const Integrand& rho, const SampledPath& path,
                             const ScaleGrid& grid, double tol,
                             bool throw_on_nonconvergent) {
  IntegralReport rep;
  const ExtensionResult ext = extend(path);
  const MergeTree tree = build_merge_tree(ext.path);
  const double floor_a = 4.0 * path.max_knot_increment();

  const SweepResult sweep = branch_sweep(rho, ext, tree, floor_a);
  rep.valley_term = stieltjes(rho, valley_floor(path));
  rep.interior_part = sweep.interior;
  rep.boundary_part = sweep.boundary;
  rep.route_b = sweep.interior + sweep.boundary;
  rep.value = rep.route_b;
  rep.error_bar = std::abs(sweep.tail);

  // route A: classical integration against the flattened path along a
  // decreasing ladder, extended below the grid until the routes meet
  const double range = path.value_range();
  std::vector<double> ladder;
  for (double a : grid.scales)
    if (a < range) ladder.push_back(a);
  double ratio = 0.8408964152537145;
  if (grid.scales.size() >= 2)
    ratio = std::clamp(grid.scales[1] / grid.scales[0], 0.1, 0.99);
  if (ladder.empty()) ladder.push_back(range * ratio);

  const double agree_tol = tol * std::max(1.0, std::abs(rep.route_b));
  double route_a = 0;
  bool met = false;
  // boundary caps of unrooted paths fade only linearly in the scale, so the
  // ladder must reach well below the knot resolution
  const double a_stop = range * 1e-13;
  for (std::size_t k = 0; k < 500; ++k) {
    if (k >= ladder.size()) {
      const double next = ladder.back() * ratio;
      if (next < a_stop) break;
      ladder.push_back(next);
    }
    const double a = ladder[k];
    TraceEntry te;
    te.a = a;
    te.flatten_value = stieltjes(rho, flatten(path, a));
    te.leaf_sum = leaf_sum_at(rho, path, a);
    rep.trace.push_back(te);
    route_a = te.flatten_value;
    if (std::abs(route_a - rep.route_b) <= agree_tol) {
      met = true;
      break;
    }
  }
  rep.route_a = route_a;
  rep.converged = met;
  if (!rep.converged && throw_on_nonconvergent)
    fail(Errc::non_convergent, "tree integral failed to stabilize");
  return rep;
}

namespace {

std::vector<double> merged_partition(const SampledPath& path,
                                     const Integrand& rho) {
  std::vector<double> pts = path.times_vector();
  for (double b : rho.breakpoints())
    if (b > 0.0 && b < 1.0) pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double left_riemann(const Integrand& rho, const SampledPath& path,
                    const std::vector<double>& pts, int k) {
  double acc = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double h = (pts[i + 1] - pts[i]) / k;
    double w0 = path(pts[i]);
    for (int s = 0; s < k; ++s) {
      const double t0 = pts[i] + s * h;
      const double t1 = (s == k - 1) ? pts[i + 1] : pts[i] + (s + 1) * h;
      const double w1 = path(t1);
      acc += rho(t0) * (w1 - w0);
      w0 = w1;
    }
  }
  return acc;
}

}  // namespace

double young(const Integrand& rho, const SampledPath& path, double tol) {
  // left sums S(k) have an error expansion in 1/k on the knot-aligned
  // partition; two Richardson levels leave O(k^-3)
  const std::vector<double> pts = merged_partition(path, rho);
  double s1 = left_riemann(rho, path, pts, 1);
  double s2 = left_riemann(rho, path, pts, 2);
  double s4 = left_riemann(rho, path, pts, 4);
  double r1 = 2.0 * s2 - s1;
  double r2 = 2.0 * s4 - s2;
  double rr_prev = (4.0 * r2 - r1) / 3.0;
  for (int k = 8; k <= (1 << 15); k *= 2) {
    s1 = s2;
    s2 = s4;
    s4 = left_riemann(rho, path, pts, k);
    r1 = r2;
    r2 = 2.0 * s4 - s2;
    const double rr = (4.0 * r2 - r1) / 3.0;
    if (std::abs(rr - rr_prev) < tol) return rr;
    rr_prev = rr;
  }
  fail(Errc::non_convergent, "Riemann sums did not stabilize");
}

Integrand embed_integrand(const Integrand& rho, const GraphEmbedding& embedding) {
  // invert the time change: windows map back to their jump time
  auto original_time = [tm = embedding.time_map](double tau) {
    auto it = std::lower_bound(
        tm.begin(), tm.end(), tau,
        [](const GraphEmbedding::MappedKnot& mk, double x) {
          return mk.embedded_end < x;
        });
    if (it == tm.end()) return tm.back().original_time;
    if (tau >= it->embedded_start) return it->original_time;
    if (it == tm.begin()) return tm.front().original_time;
    const auto& lo = *(it - 1);
    const double w =
        (tau - lo.embedded_end) / (it->embedded_start - lo.embedded_end);
    return lo.original_time + w * (it->original_time - lo.original_time);
  };
  std::vector<double> brk = embedding.continuous.times_vector();
  for (double b : rho.breakpoints())
    if (b > 0.0 && b < 1.0) brk.push_back(embedding.forward(b));
  std::sort(brk.begin(), brk.end());
  brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
  return Integrand::function(
      [rho, original_time](double tau) { return rho(original_time(tau)); },
      std::move(brk));
}

double young(const Integrand& rho, const CadlagPath& path, double tol) {
  const GraphEmbedding emb = embed_cadlag(path);
  return young(embed_integrand(rho, emb), emb.continuous, tol);
}

double conditional_variation_lb(const Integrand& rho, const SampledPath& path,
                                double q, const ScaleGrid& grid) {
  if (q < 1.0) fail(Errc::invalid_exponent, "q must be >= 1");
  double best = 0;
  for (double a : grid.scales) {
    if (a >= path.value_range()) continue;
    double acc = 0;
    for (const LeafPair& lp : leaf_pairs(path, a)) {
      if (lp.boundary) continue;
      acc += std::pow(std::abs(rho(lp.tau_up) - rho(lp.tau_down)), q);
    }
    best = std::max(best, acc);
  }
  return best;
}

}  // namespace pathforest
