#include "pathforest/path.hpp"

#include <algorithm>
#include <cmath>

namespace pathforest {

namespace {

void check_knots(const std::vector<double>* times,
                 const std::vector<double>& values, bool allow_constant) {
  if (values.size() < 2) fail(Errc::empty_input, "need at least 2 knots");
  double lo = values[0], hi = values[0];
  for (double v : values) {
    if (!std::isfinite(v)) fail(Errc::non_finite_value, "non-finite value");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi && !allow_constant)
    fail(Errc::constant_path, "path is constant");
  if (times) {
    if (times->size() != values.size())
      fail(Errc::empty_input, "times/values size mismatch");
    for (std::size_t i = 0; i < times->size(); ++i) {
      if (!std::isfinite((*times)[i]))
        fail(Errc::non_finite_value, "non-finite time");
      if (i > 0 && (*times)[i] <= (*times)[i - 1])
        fail(Errc::non_monotone_time, "times must be strictly increasing");
    }
    if (times->front() != 0.0 || times->back() != 1.0)
      fail(Errc::out_of_range, "domain must be [0,1]");
  }
}

}  // namespace

void SampledPath::finalize() {
  min_value_ = values_[0];
  max_value_ = values_[0];
  total_variation_ = 0;
  max_increment_ = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    min_value_ = std::min(min_value_, values_[i]);
    max_value_ = std::max(max_value_, values_[i]);
    if (i > 0) {
      const double inc = std::abs(values_[i] - values_[i - 1]);
      total_variation_ += inc;
      max_increment_ = std::max(max_increment_, inc);
    }
  }
}

SampledPath SampledPath::from_knots(std::vector<double> times,
                                    std::vector<double> values) {
  check_knots(&times, values, false);
  SampledPath p;
  p.times_ = std::move(times);
  p.values_ = std::move(values);
  p.finalize();
  return p;
}

SampledPath SampledPath::from_knots_allow_constant(std::vector<double> times,
                                                   std::vector<double> values) {
  check_knots(&times, values, true);
  SampledPath p;
  p.times_ = std::move(times);
  p.values_ = std::move(values);
  p.finalize();
  return p;
}

SampledPath SampledPath::uniform(std::vector<double> values) {
  check_knots(nullptr, values, false);
  SampledPath p;
  p.values_ = std::move(values);
  p.finalize();
  return p;
}

std::vector<double> SampledPath::times_vector() const {
  if (!times_.empty()) return times_;
  std::vector<double> t(values_.size());
  const double inv = 1.0 / static_cast<double>(values_.size() - 1);
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = static_cast<double>(i) * inv;
  t.back() = 1.0;
  return t;
}

std::size_t SampledPath::segment_index(double t) const {
  if (t < 0.0 || t > 1.0) fail(Errc::out_of_range, "time outside [0,1]");
  if (times_.empty()) {
    if (t >= 1.0) return values_.size() - 2;
    const auto i =
        static_cast<std::size_t>(t * static_cast<double>(values_.size() - 1));
    return std::min(i, values_.size() - 2);
  }
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - times_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, times_.size() - 2);
}

double SampledPath::operator()(double t) const {
  const std::size_t i = segment_index(t);
  const double t0 = time(i), t1 = time(i + 1);
  const double w = (t - t0) / (t1 - t0);
  return values_[i] + w * (values_[i + 1] - values_[i]);
}

double SampledPath::infimum(double s, double t) const {
  if (s > t) std::swap(s, t);
  const double vs = (*this)(s), vt = (*this)(t);
  double m = std::min(vs, vt);
  const std::size_t is = segment_index(s), it = segment_index(t);
  for (std::size_t k = is + 1; k <= it; ++k) {
    if (time(k) > s && time(k) < t) m = std::min(m, values_[k]);
  }
  return m;
}

double SampledPath::supremum(double s, double t) const {
  if (s > t) std::swap(s, t);
  const double vs = (*this)(s), vt = (*this)(t);
  double m = std::max(vs, vt);
  const std::size_t is = segment_index(s), it = segment_index(t);
  for (std::size_t k = is + 1; k <= it; ++k) {
    if (time(k) > s && time(k) < t) m = std::max(m, values_[k]);
  }
  return m;
}

double SampledPath::delta(double s, double t) const {
  return (*this)(s) + (*this)(t) - 2.0 * infimum(s, t);
}

SampledPath normalize(const std::vector<std::pair<double, double>>& raw_knots) {
  if (raw_knots.size() < 2) fail(Errc::empty_input, "need at least 2 points");
  std::vector<double> times(raw_knots.size()), values(raw_knots.size());
  for (std::size_t i = 0; i < raw_knots.size(); ++i) {
    times[i] = raw_knots[i].first;
    values[i] = raw_knots[i].second;
    if (!std::isfinite(times[i]) || !std::isfinite(values[i]))
      fail(Errc::non_finite_value, "non-finite input");
    if (i > 0 && times[i] <= times[i - 1])
      fail(Errc::non_monotone_time, "times must be strictly increasing");
  }
  const double t0 = times.front(), span = times.back() - times.front();
  for (auto& t : times) t = (t - t0) / span;
  times.front() = 0.0;
  times.back() = 1.0;
  return SampledPath::from_knots(std::move(times), std::move(values));
}

bool om01_holds(const SampledPath& path, double tol) {
  const double m = path.min_value();
  return std::abs(path.first_value() - m) <= tol &&
         std::abs(path.last_value() - m) <= tol;
}

ExtensionResult extend(const SampledPath& path) {
  if (om01_holds(path, 0.0)) return {path, 0.0, 1.0, false, false};

  const double inf = path.min_value();
  const bool left = path.first_value() > inf;
  const bool right = path.last_value() > inf;
  // Ramp widths scale with the value drop; any positive choice yields the
  // same tree, this one keeps ramp slopes comparable to the path's range.
  const double unit = 0.5 / path.value_range();
  const double wl = left ? (path.first_value() - inf) * unit : 0.0;
  const double wr = right ? (path.last_value() - inf) * unit : 0.0;
  const double span = 1.0 + wl + wr;

  std::vector<double> times, values;
  times.reserve(path.size() + 2);
  values.reserve(path.size() + 2);
  if (left) {
    times.push_back(0.0);
    values.push_back(inf);
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    times.push_back((wl + path.time(i)) / span);
    values.push_back(path.value(i));
  }
  if (right) {
    times.push_back(1.0);
    values.push_back(inf);
  }
  times.front() = 0.0;
  times.back() = 1.0;
  ExtensionResult r;
  r.path = SampledPath::from_knots(std::move(times), std::move(values));
  r.original_start = wl / span;
  r.original_end = (wl + 1.0) / span;
  r.extended_left = left;
  r.extended_right = right;
  return r;
}

SampledPath valley_floor(const SampledPath& path) {
  const std::size_t n = path.size();
  const double inf = path.min_value();
  std::size_t first_min = 0, last_min = n - 1;
  for (std::size_t i = 0; i < n; ++i)
    if (path.value(i) == inf) {
      first_min = i;
      break;
    }
  for (std::size_t i = n; i-- > 0;)
    if (path.value(i) == inf) {
      last_min = i;
      break;
    }

  std::vector<double> times, values;
  auto push = [&](double t, double v) {
    if (!times.empty() && t <= times.back()) return;
    times.push_back(t);
    values.push_back(v);
  };

  // descending running min from the left, up to the first attainment of inf
  push(path.time(0), path.value(0));
  double cur = path.value(0);
  for (std::size_t i = 0; i < first_min; ++i) {
    const double v0 = path.value(i), v1 = path.value(i + 1);
    if (v1 < cur) {
      if (v0 > cur) {
        const double tc = path.time(i) +
                          (v0 - cur) / (v0 - v1) *
                              (path.time(i + 1) - path.time(i));
        push(tc, cur);
      }
      push(path.time(i + 1), v1);
      cur = v1;
    }
  }
  push(path.time(first_min), inf);
  if (last_min > first_min) push(path.time(last_min), inf);

  // ascending running min from the right, collected backwards then appended
  std::vector<double> rt, rv;
  rt.push_back(path.time(n - 1));
  rv.push_back(path.value(n - 1));
  cur = path.value(n - 1);
  for (std::size_t i = n - 1; i > last_min; --i) {
    const double v0 = path.value(i - 1), v1 = path.value(i);
    if (v0 < cur) {
      if (v1 > cur) {
        const double tc = path.time(i - 1) +
                          (v0 - cur) / (v0 - v1) *
                              (path.time(i) - path.time(i - 1));
        rt.push_back(tc);
        rv.push_back(cur);
      }
      rt.push_back(path.time(i - 1));
      rv.push_back(v0);
      cur = v0;
    }
  }
  for (std::size_t k = rt.size(); k-- > 0;) push(rt[k], rv[k]);

  if (times.size() < 2) {
    times = {0.0, 1.0};
    values = {inf, inf};
  }
  times.front() = 0.0;
  times.back() = 1.0;
  return SampledPath::from_knots_allow_constant(std::move(times),
                                                std::move(values));
}

SampledPath restrict_to(const SampledPath& path, double s, double t) {
  if (!(s >= 0.0 && t <= 1.0 && s < t))
    fail(Errc::out_of_range, "bad restriction window");
  std::vector<double> times, values;
  times.push_back(0.0);
  values.push_back(path(s));
  const double span = t - s;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double u = path.time(i);
    if (u > s && u < t) {
      times.push_back((u - s) / span);
      values.push_back(path.value(i));
    }
  }
  times.push_back(1.0);
  values.push_back(path(t));
  return SampledPath::from_knots(std::move(times), std::move(values));
}

}  // namespace pathforest
