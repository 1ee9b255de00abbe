#include "pathforest/variation.hpp"

#include <algorithm>
#include <cmath>

namespace pathforest {

std::vector<double> turning_points(std::span<const double> values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) {
    if (!out.empty() && v == out.back()) continue;
    if (out.size() >= 2) {
      const double a = out[out.size() - 2], b = out.back();
      if ((b > a && v > b) || (b < a && v < b)) {
        out.back() = v;  // extend the monotone run
        continue;
      }
    }
    out.push_back(v);
  }
  if (out.size() < 2 && !values.empty()) out.assign(2, values[0]);
  return out;
}

double pvar_exact(std::span<const double> values, double p) {
  if (p < 1.0) fail(Errc::invalid_exponent, "p must be >= 1");
  if (values.size() < 2) fail(Errc::empty_input, "need at least 2 values");
  const std::vector<double> v = turning_points(values);
  const std::size_t m = v.size();
  if (m < 2) return 0.0;
  if (p == 1.0) {
    double tv = 0;
    for (std::size_t i = 1; i < m; ++i) tv += std::abs(v[i] - v[i - 1]);
    return tv;
  }
  // best[j]: largest sum over subsequences ending at j (j included)
  std::vector<double> best(m, 0.0);
  double answer = 0;
  for (std::size_t j = 1; j < m; ++j) {
    double bj = 0;
    for (std::size_t i = 0; i < j; ++i) {
      const double inc = std::pow(std::abs(v[j] - v[i]), p);
      bj = std::max(bj, inc + best[i]);
    }
    best[j] = bj;
    answer = std::max(answer, bj);
  }
  return answer;
}

namespace {

struct Fit {
  double slope = 0, intercept = 0, r2 = 1;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  Fit f;
  const double den = n * sxx - sx * sx;
  if (den == 0) return f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double my = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += e * e;
    ss_tot += (y[i] - my) * (y[i] - my);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : (ss_res == 0 ? 1.0 : 0.0);
  return f;
}

std::vector<std::size_t> usable_scales(
    const TrimProfile& prof, std::optional<std::pair<double, double>> window) {
  auto pick = [&](int min_count, bool apply_floor) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < prof.scales.size(); ++k) {
      const double a = prof.scales[k];
      if (prof.counts[k] < min_count) continue;
      if (apply_floor && a < prof.discretization_floor) continue;
      if (window && (a < window->first || a > window->second)) continue;
      idx.push_back(k);
    }
    return idx;
  };
  auto idx = pick(20, !window.has_value());
  if (idx.size() < 5) idx = pick(1, false);
  return idx;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid) - 1,
                     v.end());
    m = 0.5 * (m + v[mid - 1]);
  }
  return m;
}

}  // namespace

ScalingFit variation_index(const TrimProfile& profile,
                           std::optional<std::pair<double, double>> window) {
  const auto idx = usable_scales(profile, window);
  if (idx.size() < 5)
    fail(Errc::insufficient_scales, "fewer than 5 usable scales");

  std::vector<double> x, yn, yl;
  bool have_l = true;
  for (std::size_t k : idx) {
    x.push_back(std::log(1.0 / profile.scales[k]));
    yn.push_back(std::log(static_cast<double>(profile.counts[k])));
    if (profile.lengths[k] > 0)
      yl.push_back(std::log(profile.lengths[k]));
    else
      have_l = false;
  }
  const Fit fn = least_squares(x, yn);
  ScalingFit out;
  out.a_lo = profile.scales[idx.back()];
  out.a_hi = profile.scales[idx.front()];
  out.slope = fn.slope;
  out.intercept = fn.intercept;
  out.r2 = fn.r2;
  out.estimate = std::max(fn.slope, 1.0);
  out.used_scales = static_cast<int>(idx.size());
  out.valid = fn.r2 >= 0.9;
  if (have_l && yl.size() == x.size()) {
    const Fit fl = least_squares(x, yl);
    out.slope_l = fl.slope;
    out.estimate_l = std::max(fl.slope + 1.0, 1.0);
  } else {
    out.slope_l = 0;
    out.estimate_l = 1;
  }
  return out;
}

VariationReport pvar_bounds(const SampledPath& path, double p,
                            const MergeTree& tree, const TrimProfile& profile,
                            std::size_t exact_cap) {
  if (p < 1.0) fail(Errc::invalid_exponent, "p must be >= 1");
  VariationReport rep;
  rep.p = p;

  // sup_a a^p N^a is attained at the persistence breakpoints
  double lower = 0;
  for (std::size_t k = 0; k < profile.persistence.size(); ++k) {
    const double a = profile.persistence[k];
    lower = std::max(lower, std::pow(a, p) * static_cast<double>(k + 1));
  }
  rep.lower = lower;
  if (om01_holds(path)) rep.lower_doubled = 2.0 * lower;
  rep.upper = 2.0 * p * height_integral(tree, p);

  const std::vector<double> tp = turning_points(path.values());
  if (tp.size() <= exact_cap) rep.exact = pvar_exact(tp, p);

  try {
    rep.index_fit = variation_index(profile);
  } catch (const Error&) {
    rep.index_fit = std::nullopt;
  }
  return rep;
}

HurstRatioFit hurst_ratio(const TrimProfile& profile,
                          std::optional<std::pair<double, double>> window) {
  const auto idx = usable_scales(profile, window);
  if (idx.size() < 5)
    fail(Errc::insufficient_scales, "fewer than 5 usable scales");
  HurstRatioFit out;
  out.a_lo = profile.scales[idx.back()];
  out.a_hi = profile.scales[idx.front()];
  std::vector<double> x, yl;
  for (std::size_t k : idx) {
    const double a = profile.scales[k];
    const double l = profile.lengths[k];
    if (l <= 0) continue;
    out.ratios.push_back(a * static_cast<double>(profile.counts[k]) / l);
    x.push_back(std::log(1.0 / a));
    yl.push_back(std::log(l));
  }
  if (out.ratios.size() < 5)
    fail(Errc::insufficient_scales, "fewer than 5 usable scales");
  out.used_scales = static_cast<int>(out.ratios.size());
  out.median_ratio = median_of(out.ratios);
  out.h_median = 1.0 / (1.0 + out.median_ratio);
  const Fit fl = least_squares(x, yl);
  out.r2 = fl.r2;
  const double denom = fl.slope + 1.0;
  out.h_fit = denom > 0 ? 1.0 / denom : 1.0;
  return out;
}

double hurst_drawdown(const SampledPath& path, double a) {
  const TrimEvents ev = trim_events(path, a);
  if (ev.count < 2) fail(Errc::too_few_leaves, "need N^a >= 2");
  // S_0 = 0 on the original clock, so the first drawdown is measured from
  // w(0), not from the extension's infimum
  const double w0 = path.first_value();
  double sum = 0;
  for (int i = 0; i + 1 < ev.count; ++i) {
    const double prev_s =
        (i == 0) ? w0 : ev.level_S[static_cast<std::size_t>(i - 1)];
    sum += ev.level_T[static_cast<std::size_t>(i)] - prev_s;
  }
  return sum / (a * static_cast<double>(ev.count));
}

FirstPassage first_passage_times(
    const std::vector<std::pair<double, double>>& events, double a) {
  FirstPassage fp;
  double run_max = events.front().second, run_min = events.front().second;
  double ct = events.front().first, cv = events.front().second;
  for (std::size_t i = 1; i < events.size(); ++i) {
    const double t1 = events[i].first, v1 = events[i].second;
    if (!fp.t_down && v1 < run_max - a) {
      const double th = run_max - a;
      fp.t_down = (t1 == ct || cv == v1)
                      ? t1
                      : ct + (cv - th) / (cv - v1) * (t1 - ct);
    }
    if (!fp.t_up && v1 > run_min + a) {
      const double th = run_min + a;
      fp.t_up = (t1 == ct || cv == v1)
                    ? t1
                    : ct + (th - cv) / (v1 - cv) * (t1 - ct);
    }
    if (fp.t_down && fp.t_up) break;
    run_max = std::max(run_max, v1);
    run_min = std::min(run_min, v1);
    ct = t1;
    cv = v1;
  }
  return fp;
}

std::vector<std::pair<double, double>> path_events(const SampledPath& path) {
  std::vector<std::pair<double, double>> ev;
  ev.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i)
    ev.emplace_back(path.time(i), path.value(i));
  return ev;
}

std::vector<std::pair<double, double>> cadlag_events(const CadlagPath& path) {
  std::vector<std::pair<double, double>> ev;
  ev.reserve(2 * path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0 || path.jumps_at(0)) ev.emplace_back(path.time(i), path.left(i));
    if (path.jumps_at(i) || i == 0) ev.emplace_back(path.time(i), path.right(i));
  }
  return ev;
}

double levy_xi_check(const std::vector<SampledPath>& ensemble, double a,
                     const std::function<double(double)>& xi) {
  if (ensemble.empty()) fail(Errc::empty_input, "empty ensemble");
  double sum = 0;
  for (const auto& p : ensemble)
    sum += xi(a) * static_cast<double>(trim_events(p, a).count);
  return sum / static_cast<double>(ensemble.size());
}

double levy_xi_check(const std::vector<CadlagPath>& ensemble, double a,
                     const std::function<double(double)>& xi) {
  if (ensemble.empty()) fail(Errc::empty_input, "empty ensemble");
  double sum = 0;
  for (const auto& p : ensemble) {
    const GraphEmbedding emb = embed_cadlag(p);
    sum += xi(a) * static_cast<double>(trim_events(emb.continuous, a).count);
  }
  return sum / static_cast<double>(ensemble.size());
}

namespace {

template <typename Paths, typename EventsFn>
double empirical_xi_impl(const Paths& ensemble, double a, EventsFn events_of) {
  double sum = 0;
  std::size_t used = 0;
  for (const auto& p : ensemble) {
    const FirstPassage fp = first_passage_times(events_of(p), a);
    if (fp.t_down && fp.t_up) {
      sum += *fp.t_down + *fp.t_up;
      ++used;
    }
  }
  if (used == 0) fail(Errc::empty_input, "no usable first passages");
  return sum / static_cast<double>(used);
}

}  // namespace

double empirical_xi(const std::vector<SampledPath>& ensemble, double a) {
  return empirical_xi_impl(ensemble, a, path_events);
}

double empirical_xi(const std::vector<CadlagPath>& ensemble, double a) {
  return empirical_xi_impl(ensemble, a, cadlag_events);
}

}  // namespace pathforest
