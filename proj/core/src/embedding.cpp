#include "pathforest/embedding.hpp"

#include <algorithm>
#include <cmath>

namespace pathforest {

CadlagPath CadlagPath::from_knots(std::vector<double> times,
                                  std::vector<double> left_limits,
                                  std::vector<double> right_values) {
  if (times.size() < 2) fail(Errc::empty_input, "need at least 2 knots");
  if (times.size() != left_limits.size() || times.size() != right_values.size())
    fail(Errc::empty_input, "column size mismatch");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(left_limits[i]) ||
        !std::isfinite(right_values[i]))
      fail(Errc::non_finite_value, "non-finite input");
    if (i > 0 && times[i] <= times[i - 1])
      fail(Errc::non_monotone_time, "times must be strictly increasing");
  }
  if (times.front() != 0.0 || times.back() != 1.0)
    fail(Errc::out_of_range, "domain must be [0,1]");
  if (left_limits.front() != right_values.front())
    fail(Errc::out_of_range, "no left limit exists at t=0");
  double lo = right_values[0], hi = right_values[0];
  for (std::size_t i = 0; i < times.size(); ++i) {
    lo = std::min({lo, left_limits[i], right_values[i]});
    hi = std::max({hi, left_limits[i], right_values[i]});
  }
  if (lo == hi) fail(Errc::constant_path, "path is constant");
  CadlagPath p;
  p.times_ = std::move(times);
  p.left_ = std::move(left_limits);
  p.right_ = std::move(right_values);
  return p;
}

std::size_t CadlagPath::jump_count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < size(); ++i)
    if (jumps_at(i)) ++c;
  return c;
}

double CadlagPath::operator()(double t) const {
  if (t < 0.0 || t > 1.0) fail(Errc::out_of_range, "time outside [0,1]");
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - times_.begin());
  if (i == 0) return right_[0];
  --i;
  if (i + 1 >= times_.size()) return right_.back();
  const double w = (t - times_[i]) / (times_[i + 1] - times_[i]);
  if (w == 0.0) return right_[i];
  return right_[i] + w * (left_[i + 1] - right_[i]);
}

double CadlagPath::total_variation() const {
  double tv = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    tv += std::abs(left_[i] - right_[i]);
    if (i + 1 < size()) tv += std::abs(left_[i + 1] - right_[i]);
  }
  return tv;
}

std::vector<double> CadlagPath::interleaved_values() const {
  std::vector<double> v;
  v.reserve(2 * size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (v.empty() || left_[i] != v.back()) v.push_back(left_[i]);
    if (right_[i] != v.back()) v.push_back(right_[i]);
  }
  if (v.size() < 2) v.push_back(v.back());
  return v;
}

double GraphEmbedding::forward(double t) const {
  if (t < 0.0 || t > 1.0) fail(Errc::out_of_range, "time outside [0,1]");
  auto cmp = [](const MappedKnot& mk, double x) { return mk.original_time < x; };
  auto it = std::lower_bound(time_map.begin(), time_map.end(), t, cmp);
  if (it != time_map.end() && it->original_time == t) return it->embedded_end;
  // strictly between two knots: affine between window end and next start
  const auto hi = it;
  const auto lo = it - 1;
  const double w = (t - lo->original_time) / (hi->original_time - lo->original_time);
  return lo->embedded_end + w * (hi->embedded_start - lo->embedded_end);
}

GraphEmbedding embed_cadlag(const CadlagPath& path, JumpWeightRule rule) {
  GraphEmbedding out;
  const std::size_t n = path.size();

  double total_jump = 0;
  std::size_t jumps = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (path.jumps_at(i)) {
      total_jump += std::abs(path.left(i) - path.right(i));
      ++jumps;
    }

  if (jumps == 0) {
    std::vector<double> times(n), values(n);
    for (std::size_t i = 0; i < n; ++i) {
      times[i] = path.time(i);
      values[i] = path.right(i);
      out.time_map.push_back({path.time(i), path.time(i), path.time(i)});
    }
    out.continuous = SampledPath::from_knots(std::move(times), std::move(values));
    return out;
  }

  // jump windows get half of the embedded domain, continuous time the rest
  const double budget = 0.5;
  const double cont_scale = 1.0 - budget;
  std::vector<double> widths;
  widths.reserve(jumps);
  for (std::size_t i = 0; i < n; ++i) {
    if (!path.jumps_at(i)) continue;
    const double w =
        rule == JumpWeightRule::proportional
            ? budget * std::abs(path.left(i) - path.right(i)) / total_jump
            : budget / static_cast<double>(jumps);
    widths.push_back(w);
  }
  out.jump_weights = widths;

  std::vector<double> times, values;
  times.reserve(2 * n);
  values.reserve(2 * n);

  double pos = 0;
  std::size_t jump_idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) pos += cont_scale * (path.time(i) - path.time(i - 1));
    if (path.jumps_at(i)) {
      const double w = widths[jump_idx++];
      times.push_back(pos);
      values.push_back(path.left(i));
      times.push_back(pos + w);
      values.push_back(path.right(i));
      out.time_map.push_back({path.time(i), pos, pos + w});
      pos += w;
    } else {
      times.push_back(pos);
      values.push_back(path.right(i));
      out.time_map.push_back({path.time(i), pos, pos});
    }
  }
  times.front() = 0.0;
  times.back() = 1.0;
  out.time_map.front().embedded_start = 0.0;
  out.time_map.front().embedded_end =
      path.jumps_at(0) ? out.time_map.front().embedded_end : 0.0;
  out.time_map.back().embedded_end = 1.0;
  if (!path.jumps_at(n - 1)) out.time_map.back().embedded_start = 1.0;
  out.continuous = SampledPath::from_knots(std::move(times), std::move(values));
  return out;
}

}  // namespace pathforest
