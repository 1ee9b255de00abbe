#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pathforest/path.hpp"
#include "pathforest/rng.hpp"

namespace pathforest::test {

/// Random piecewise-linear path: sorted uniform times, Gaussian-walk values.
inline SampledPath random_path(CounterRng& rng, std::size_t max_knots = 200) {
  for (;;) {
    const std::size_t n =
        4 + static_cast<std::size_t>(rng.uniform01() * (max_knots - 4));
    std::vector<double> times{0.0, 1.0};
    for (std::size_t i = 0; i + 2 < n; ++i) times.push_back(rng.uniform01());
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    if (times.size() < 3) continue;
    std::vector<double> values(times.size());
    values[0] = rng.gaussian();
    for (std::size_t i = 1; i < values.size(); ++i)
      values[i] = values[i - 1] + rng.gaussian() * 0.3;
    double lo = values[0], hi = values[0];
    for (double v : values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo < 1e-6) continue;
    return SampledPath::from_knots(std::move(times), std::move(values));
  }
}

/// Random path with w(0)=w(1)=inf (rooted normalization holds exactly).
inline SampledPath random_rooted_path(CounterRng& rng,
                                      std::size_t max_knots = 200) {
  for (;;) {
    SampledPath p = random_path(rng, max_knots);
    std::vector<double> t = p.times_vector();
    std::vector<double> v = p.values();
    const double m = p.min_value();
    v.front() = m;
    v.back() = m;
    double lo = v[0], hi = v[0];
    for (double x : v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    if (hi - lo < 1e-6) continue;
    return SampledPath::from_knots(std::move(t), std::move(v));
  }
}

/// Brute-force p-variation over all subsequences (n <= ~20).
inline double pvar_bruteforce(const std::vector<double>& v, double p) {
  const std::size_t n = v.size();
  double best = 0;
  // iterate over subsets of interior points; endpoints optional too, so use
  // subsets of all indices of size >= 2
  const std::size_t limit = std::size_t{1} << n;
  for (std::size_t mask = 0; mask < limit; ++mask) {
    double sum = 0, prev = 0;
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (std::size_t{1} << i))) continue;
      if (count > 0) sum += std::pow(std::abs(v[i] - prev), p);
      prev = v[i];
      ++count;
    }
    if (count >= 2) best = std::max(best, sum);
  }
  return best;
}

/// Kolmogorov-Smirnov distance between a sample and U[0,1].
inline double ks_uniform(std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = sample[i];
    d = std::max(d, std::abs((i + 1) / n - f));
    d = std::max(d, std::abs(f - i / n));
  }
  return d;
}

/// Two-sample KS distance.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  return d;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace pathforest::test
