#include "pathforest/trim.hpp"

#include <algorithm>
#include <cmath>

#include "pathforest/parallel.hpp"

namespace pathforest {

namespace {

// Stopping-time sweep over an om01 path (callers extend first). All times
// are in the host path's coordinates; values at the stopping times are exact
// by construction (thresholds, not re-evaluations).
struct RawEvents {
  std::vector<double> T, S, U;
  std::vector<double> vT, vS, vU;
};

RawEvents raw_sweep(const SampledPath& p, double a) {
  RawEvents ev;
  const std::size_t n = p.size();
  bool seeking_t = true;
  double run = p.value(0);  // running sup while seeking T, running inf after
  double min_v = 0, min_t = 0;
  double cur_t = p.time(0), cur_v = p.value(0);

  for (std::size_t i = 0; i + 1 < n;) {
    const double t1 = p.time(i + 1), v1 = p.value(i + 1);
    bool advanced = false;
    if (seeking_t) {
      const double th = run - a;
      if (v1 < th && v1 < cur_v) {
        const double tc = cur_t + (cur_v - th) / (cur_v - v1) * (t1 - cur_t);
        ev.T.push_back(tc);
        ev.vT.push_back(th);
        seeking_t = false;
        run = th;
        min_v = th;
        min_t = tc;
        cur_t = tc;
        cur_v = th;
      } else {
        if (v1 > run) run = v1;
        advanced = true;
      }
    } else {
      const double th = run + a;
      if (v1 > th && v1 > cur_v) {
        const double tc = cur_t + (th - cur_v) / (v1 - cur_v) * (t1 - cur_t);
        ev.S.push_back(tc);
        ev.vS.push_back(th);
        ev.U.push_back(min_t);
        ev.vU.push_back(min_v);
        seeking_t = true;
        run = th;
        cur_t = tc;
        cur_v = th;
      } else {
        if (v1 < run) run = v1;
        if (v1 < min_v) {
          min_v = v1;
          min_t = t1;
        }
        advanced = true;
      }
    }
    if (advanced) {
      cur_t = t1;
      cur_v = v1;
      ++i;
    }
  }
  return ev;
}

double to_original(double t_ext, const ExtensionResult& ext) {
  return (t_ext - ext.original_start) / (ext.original_end - ext.original_start);
}

}  // namespace

TrimEvents trim_events(const SampledPath& path, double a) {
  if (!(a > 0)) fail(Errc::non_positive_scale, "scale must be positive");
  const ExtensionResult ext = extend(path);
  const RawEvents raw = raw_sweep(ext.path, a);

  TrimEvents out;
  out.scale = a;
  out.count = static_cast<int>(raw.T.size());
  out.used_extension = ext.extended_left || ext.extended_right;
  out.level_T = raw.vT;
  out.level_S = raw.vS;
  out.T.reserve(raw.T.size());
  for (double t : raw.T) {
    double o = to_original(t, ext);
    if (o > 1.0) {
      out.last_t_beyond_end = true;
      o = 1.0;
    }
    out.T.push_back(std::clamp(o, 0.0, 1.0));
  }
  for (double t : raw.S) out.S.push_back(std::clamp(to_original(t, ext), 0.0, 1.0));
  for (double t : raw.U) out.U.push_back(std::clamp(to_original(t, ext), 0.0, 1.0));
  return out;
}

std::vector<LeafPair> leaf_pairs(const SampledPath& path, double a) {
  if (!(a > 0)) fail(Errc::non_positive_scale, "scale must be positive");
  const ExtensionResult ext = extend(path);
  const SampledPath& p = ext.path;
  const RawEvents raw = raw_sweep(p, a);

  std::vector<LeafPair> out;
  out.reserve(raw.T.size());
  for (std::size_t i = 0; i < raw.T.size(); ++i) {
    const double td = raw.T[i];
    const double level = raw.vT[i];
    // walk back to the start of the excursion strictly above `level`
    std::size_t k = p.segment_index(td);
    double tu = p.time(0);
    bool found = false;
    for (std::size_t j = k + 1; j-- > 0;) {
      if (p.time(j) >= td) continue;  // td may sit exactly on knot k
      if (p.value(j) < level) {
        // ascending crossing between knots j and j+1
        const double v0 = p.value(j), v1 = p.value(j + 1);
        tu = p.time(j) + (level - v0) / (v1 - v0) * (p.time(j + 1) - p.time(j));
        found = true;
        break;
      }
      if (p.value(j) == level) {
        tu = p.time(j);
        found = true;
        break;
      }
    }
    if (!found) tu = p.time(0);

    LeafPair lp;
    const double ou = to_original(tu, ext);
    const double od = to_original(td, ext);
    lp.boundary = ou < 0.0 || od > 1.0;
    lp.tau_up = std::clamp(ou, 0.0, 1.0);
    lp.tau_down = std::clamp(od, 0.0, 1.0);
    lp.level = level;
    out.push_back(lp);
  }
  return out;
}

namespace {

// Crossing time of level x on the path segment carrying indices (j, j+1).
double segment_cross(const SampledPath& p, std::size_t j, double x) {
  const double v0 = p.value(j), v1 = p.value(j + 1);
  return p.time(j) + (x - v0) / (v1 - v0) * (p.time(j + 1) - p.time(j));
}

// Knots of t -> inf_{[t0,t]} w on [t0,t1]; w >= v1 on the stretch and the
// minimum sits at t1 (guaranteed by the stopping-time structure).
void emit_forward_min(const SampledPath& p, double t0, double v0, double t1,
                      double v1, std::vector<double>& ft,
                      std::vector<double>& fv) {
  auto push = [&](double t, double v) {
    if (!ft.empty() && t <= ft.back()) return;
    ft.push_back(t);
    fv.push_back(v);
  };
  push(t0, v0);
  double cur = v0;
  const std::size_t k0 = p.segment_index(t0);
  const std::size_t k1 = p.segment_index(t1);
  for (std::size_t j = k0 + 1; j <= k1; ++j) {
    const double tj = p.time(j), vj = p.value(j);
    if (tj <= t0 || tj >= t1) continue;
    if (vj < cur) {
      if (p.value(j - 1) > cur)
        push(std::max(t0, segment_cross(p, j - 1, cur)), cur);
      push(tj, vj);
      cur = vj;
    } else if (vj == cur) {
      push(tj, vj);  // the min may start following the path again here
    }
  }
  if (v1 < cur) {
    // the crossing sits on the segment entering t1
    const std::size_t seg = (p.time(k1) == t1 && k1 > 0) ? k1 - 1 : k1;
    if (p.value(seg) > cur) {
      const double tc = segment_cross(p, seg, cur);
      if (tc > t0 && tc < t1) push(tc, cur);
    }
    push(t1, v1);
  } else {
    push(t1, cur);
  }
}

// Knots of t -> inf_{[t,t1]} w on [t0,t1]; mirror of emit_forward_min.
void emit_backward_min(const SampledPath& p, double t0, double v0, double t1,
                       double v1, std::vector<double>& ft,
                       std::vector<double>& fv) {
  std::vector<double> rt, rv;  // collected right-to-left
  auto rpush = [&](double t, double v) {
    if (!rt.empty() && t >= rt.back()) return;
    rt.push_back(t);
    rv.push_back(v);
  };
  rpush(t1, v1);
  double cur = v1;
  const std::size_t k0 = p.segment_index(t0);
  const std::size_t k1 = p.segment_index(t1);
  for (std::size_t j = k1 + 1; j-- > k0 + 1;) {
    const double tj = p.time(j), vj = p.value(j);
    if (tj >= t1 || tj <= t0) continue;
    if (vj < cur) {
      if (p.value(j + 1) > cur)
        rpush(std::min(t1, segment_cross(p, j, cur)), cur);
      rpush(tj, vj);
      cur = vj;
    } else if (vj == cur) {
      rpush(tj, vj);
    }
  }
  if (v0 < cur) {
    // the crossing sits on the segment leaving t0
    if (p.value(k0 + 1) > cur) {
      const double tc = segment_cross(p, k0, cur);
      if (tc > t0 && tc < t1) rpush(tc, cur);
    }
    rpush(t0, v0);
  } else {
    rpush(t0, cur);
  }
  for (std::size_t q = rt.size(); q-- > 0;) {
    if (!ft.empty() && rt[q] <= ft.back()) continue;
    ft.push_back(rt[q]);
    fv.push_back(rv[q]);
  }
}

}  // namespace

SampledPath flatten(const SampledPath& path, double a) {
  if (!(a > 0)) fail(Errc::non_positive_scale, "scale must be positive");
  if (a >= path.value_range())
    fail(Errc::empty_trimmed_tree, "scale at or above the path range");
  const ExtensionResult ext = extend(path);
  const SampledPath& p = ext.path;
  const RawEvents raw = raw_sweep(p, a);
  const std::size_t N = raw.T.size();
  if (N == 0) fail(Errc::empty_trimmed_tree, "no leaves at this scale");

  // stretch boundaries U_0=start, T_1, U_1, ..., T_N, U_N=end; the flattened
  // path ascends as the future running min on [U_i, T_{i+1}] and descends as
  // the running min on [T_i, U_i]
  std::vector<double> bt, bv;
  bt.push_back(p.time(0));
  bv.push_back(p.value(0));
  for (std::size_t i = 0; i < N; ++i) {
    bt.push_back(raw.T[i]);
    bv.push_back(raw.vT[i]);
    if (i < raw.U.size()) {
      bt.push_back(raw.U[i]);
      bv.push_back(raw.vU[i]);
    }
  }
  bt.push_back(p.time(p.size() - 1));
  bv.push_back(p.value(p.size() - 1));

  std::vector<double> ft, fv;
  for (std::size_t s = 0; s + 1 < bt.size(); ++s) {
    if (bt[s + 1] <= bt[s]) continue;
    if (s % 2 == 0)
      emit_backward_min(p, bt[s], bv[s], bt[s + 1], bv[s + 1], ft, fv);
    else
      emit_forward_min(p, bt[s], bv[s], bt[s + 1], bv[s + 1], ft, fv);
  }

  // restrict to the original window and renormalize
  const double os = ext.original_start, oe = ext.original_end;
  std::vector<double> times, values;
  auto flat_eval = [&](double t) {
    auto it = std::upper_bound(ft.begin(), ft.end(), t);
    std::size_t i = static_cast<std::size_t>(it - ft.begin());
    if (i == 0) return fv.front();
    if (i >= ft.size()) return fv.back();
    const double w = (t - ft[i - 1]) / (ft[i] - ft[i - 1]);
    return fv[i - 1] + w * (fv[i] - fv[i - 1]);
  };
  times.push_back(0.0);
  values.push_back(flat_eval(os));
  for (std::size_t i = 0; i < ft.size(); ++i) {
    if (ft[i] > os && ft[i] < oe) {
      times.push_back((ft[i] - os) / (oe - os));
      values.push_back(fv[i]);
    }
  }
  if (times.back() < 1.0) {
    times.push_back(1.0);
    values.push_back(flat_eval(oe));
  } else {
    times.back() = 1.0;
  }
  return SampledPath::from_knots(std::move(times), std::move(values));
}

ScaleGrid ScaleGrid::geometric(double a_max, double a_min, int count) {
  if (!(a_min > 0) || !(a_max >= a_min))
    fail(Errc::non_positive_scale, "need 0 < a_min <= a_max");
  if (count < 1) fail(Errc::out_of_range, "need at least one scale");
  ScaleGrid g;
  if (count == 1) {
    g.scales = {a_min};
    return g;
  }
  const double ratio = std::pow(a_min / a_max, 1.0 / (count - 1));
  g.scales.resize(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    g.scales[static_cast<std::size_t>(k)] = a_max * std::pow(ratio, k);
  g.scales.front() = a_max;
  g.scales.back() = a_min;
  return g;
}

ScaleGrid ScaleGrid::auto_for(const SampledPath& path, int count, double ratio) {
  ScaleGrid g;
  g.discretization_floor = 4.0 * path.max_knot_increment();
  const double a_max = path.value_range();
  for (int k = 1; k <= count; ++k) {
    const double a = a_max * std::pow(ratio, k);
    if (a < g.discretization_floor && k > 10) break;
    g.scales.push_back(a);
  }
  return g;
}

TrimProfile trim_profile(const SampledPath& path, const ScaleGrid& grid) {
  for (std::size_t i = 0; i < grid.scales.size(); ++i) {
    if (!(grid.scales[i] > 0))
      fail(Errc::non_positive_scale, "grid scales must be positive");
    if (i > 0 && grid.scales[i] >= grid.scales[i - 1])
      fail(Errc::out_of_range, "grid must be strictly decreasing");
  }
  const ExtensionResult ext = extend(path);
  const MergeTree tree = build_merge_tree(ext.path);

  TrimProfile prof;
  prof.scales = grid.scales;
  prof.persistence = persistence_pairs(tree);
  prof.discretization_floor = 4.0 * path.max_knot_increment();
  prof.counts.resize(grid.scales.size());
  prof.lengths.resize(grid.scales.size());
  prof.lengths_step.resize(grid.scales.size());

  const double inf = ext.path.min_value();
  parallel_for(grid.scales.size(), [&](std::size_t k) {
    const double a = grid.scales[k];
    const RawEvents raw = raw_sweep(ext.path, a);
    const int n_leaves = static_cast<int>(raw.T.size());
    prof.counts[k] = n_leaves;
    double leaf_sum = 0;
    for (std::size_t i = 0; i < raw.vT.size(); ++i) {
      const double prev_s = (i == 0) ? inf : raw.vS[i - 1];
      leaf_sum += raw.vT[i] - prev_s;
    }
    if (n_leaves > 0) leaf_sum += (n_leaves - 1) * a;
    prof.lengths[k] = leaf_sum;
    prof.lengths_step[k] = length_at_scale(prof.persistence, a);
  });

  for (std::size_t k = 0; k < prof.scales.size(); ++k) {
    const double tol = 1e-9 * std::max(1.0, prof.lengths_step[k]);
    if (std::abs(prof.lengths[k] - prof.lengths_step[k]) > tol)
      fail(Errc::internal, "length routes disagree at a=" +
                               std::to_string(prof.scales[k]));
  }
  return prof;
}

}  // namespace pathforest
