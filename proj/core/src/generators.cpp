#include "pathforest/generators.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace pathforest {

namespace detail {

std::vector<double> fgn_autocov(double hurst, std::size_t n) {
  std::vector<double> r(n + 1);
  const double h2 = 2.0 * hurst;
  for (std::size_t k = 0; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    r[k] = 0.5 * (std::pow(kk + 1.0, h2) - 2.0 * std::pow(kk, h2) +
                  std::pow(std::abs(kk - 1.0), h2));
  }
  r[0] = 1.0;
  return r;
}

// Durbin-Levinson sequential sampling of a stationary Gaussian sequence.
std::vector<double> fgn_hosking(const std::vector<double>& r, std::size_t n,
                                CounterRng& rng) {
  std::vector<double> x(n);
  std::vector<double> phi(n, 0.0), phi_prev(n, 0.0);
  double v = r[0];
  x[0] = std::sqrt(v) * rng.gaussian();
  for (std::size_t k = 1; k < n; ++k) {
    double num = r[k];
    for (std::size_t j = 1; j < k; ++j) num -= phi_prev[j] * r[k - j];
    const double pk = num / v;
    phi[k] = pk;
    for (std::size_t j = 1; j < k; ++j)
      phi[j] = phi_prev[j] - pk * phi_prev[k - j];
    v *= (1.0 - pk * pk);
    double mean = 0;
    for (std::size_t j = 1; j <= k; ++j) mean += phi[j] * x[k - j];
    x[k] = mean + std::sqrt(std::max(v, 0.0)) * rng.gaussian();
    std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(k) + 1,
              phi_prev.begin());
  }
  return x;
}

std::vector<double> circulant_eigenvalues(const std::vector<double>& r,
                                          std::size_t n) {
  const std::size_t m = 2 * n;
  std::vector<double> c(m);
  for (std::size_t k = 0; k < n; ++k) c[k] = r[k];
  c[n] = r[n];
  for (std::size_t k = 1; k < n; ++k) c[m - k] = r[k];

  static std::mutex plan_mutex;
  std::vector<double> eig(m);
  {
    fftw_complex* in = fftw_alloc_complex(m);
    fftw_complex* out = fftw_alloc_complex(m);
    for (std::size_t k = 0; k < m; ++k) {
      in[k][0] = c[k];
      in[k][1] = 0.0;
    }
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(plan_mutex);
      plan = fftw_plan_dft_1d(static_cast<int>(m), in, out, FFTW_FORWARD,
                              FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    for (std::size_t k = 0; k < m; ++k) eig[k] = out[k][0];
    {
      std::lock_guard<std::mutex> lock(plan_mutex);
      fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
  }
  return eig;
}

// Davies-Harte: embed the covariance in a circulant, color white noise with
// the root eigenvalues, transform back. Exact when all eigenvalues are
// nonnegative (true for fractional Gaussian noise).
std::vector<double> fgn_circulant(const std::vector<double>& r, std::size_t n,
                                  CounterRng& rng) {
  const std::size_t m = 2 * n;
  std::vector<double> eig = circulant_eigenvalues(r, n);
  double max_eig = 0;
  for (double e : eig) max_eig = std::max(max_eig, e);
  for (double& e : eig) {
    if (e < 0) {
      if (e < -1e-8 * max_eig)
        fail(Errc::embedding_not_psd, "circulant embedding not PSD");
      e = 0;
    }
  }

  fftw_complex* a = fftw_alloc_complex(m);
  fftw_complex* out = fftw_alloc_complex(m);
  a[0][0] = std::sqrt(eig[0]) * rng.gaussian();
  a[0][1] = 0.0;
  a[n][0] = std::sqrt(eig[n]) * rng.gaussian();
  a[n][1] = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double s = std::sqrt(eig[k] / 2.0);
    const double u = rng.gaussian(), v = rng.gaussian();
    a[k][0] = s * u;
    a[k][1] = s * v;
    a[m - k][0] = s * u;
    a[m - k][1] = -s * v;
  }

  static std::mutex plan_mutex;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(m), a, out, FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
  std::vector<double> x(n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t k = 0; k < n; ++k) x[k] = out[k][0] * norm;
  fftw_free(a);
  fftw_free(out);
  return x;
}

}  // namespace detail

SampledPath gen_fbm(std::size_t n, double hurst, double sigma,
                    std::uint64_t seed, FbmMethod method) {
  if (!(hurst > 0.0 && hurst < 1.0))
    fail(Errc::invalid_hurst, "hurst must be in (0,1)");
  if (!(sigma > 0.0)) fail(Errc::invalid_hurst, "sigma must be positive");
  if (n < 2) fail(Errc::empty_input, "need n >= 2 increments");

  CounterRng rng = CounterRng(seed).substream(0xF6A7);
  std::vector<double> noise;
  if (hurst == 0.5) {
    noise.resize(n);
    for (auto& z : noise) z = rng.gaussian();
  } else {
    const std::vector<double> r = detail::fgn_autocov(hurst, n);
    const bool direct = method == FbmMethod::hosking ||
                        (method == FbmMethod::automatic && n <= 4096);
    if (direct) {
      noise = detail::fgn_hosking(r, n, rng);
    } else {
      try {
        noise = detail::fgn_circulant(r, n, rng);
      } catch (const Error& e) {
        if (e.code() != Errc::embedding_not_psd || n > 16384) throw;
        noise = detail::fgn_hosking(r, n, rng);
      }
    }
  }
  const double step = sigma * std::pow(static_cast<double>(n), -hurst);
  std::vector<double> w(n + 1);
  w[0] = 0.0;
  for (std::size_t j = 0; j < n; ++j) w[j + 1] = w[j] + step * noise[j];
  return SampledPath::uniform(std::move(w));
}

SampledPath gen_brownian(std::size_t n, double sigma, std::uint64_t seed) {
  return gen_fbm(n, 0.5, sigma, seed);
}

namespace {

double stable_variate(double alpha, CounterRng& rng) {
  const double pi = 3.14159265358979323846;
  const double x =
      std::clamp(rng.uniform01(), 0x1.0p-53, 1.0 - 0x1.0p-53);
  const double u = pi * (x - 0.5);
  const double e = rng.exponential();
  double z;
  if (alpha == 1.0) {
    z = std::tan(u);
  } else if (alpha == 2.0) {
    z = 2.0 * std::sin(u) * std::sqrt(e);
  } else {
    z = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha) *
        std::pow(std::cos((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
  }
  // scale so alpha=2 is a standard normal
  return z / std::pow(2.0, 1.0 / alpha);
}

}  // namespace

CadlagPath gen_stable(std::size_t n, double alpha, double sigma,
                      std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    fail(Errc::invalid_alpha, "alpha must be in (0,2]");
  if (n < 2) fail(Errc::empty_input, "need n >= 2 increments");
  CounterRng rng = CounterRng(seed).substream(0x57AB);
  const double step = sigma * std::pow(static_cast<double>(n), -1.0 / alpha);

  std::vector<double> times(n + 1), left(n + 1), right(n + 1);
  double x = 0;
  times[0] = 0.0;
  left[0] = right[0] = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    times[j] = static_cast<double>(j) / static_cast<double>(n);
    left[j] = x;
    x += step * stable_variate(alpha, rng);
    right[j] = x;
  }
  times.back() = 1.0;
  return CadlagPath::from_knots(std::move(times), std::move(left),
                                std::move(right));
}

CadlagPath gen_cpoisson(double rate, std::uint64_t seed) {
  if (!(rate > 0)) fail(Errc::out_of_range, "rate must be positive");
  for (std::uint64_t attempt = 0;; ++attempt) {
    CounterRng rng = CounterRng(seed).substream(0xC901 + attempt);
    std::vector<double> jump_times;
    double t = rng.exponential() / rate;
    while (t < 1.0) {
      jump_times.push_back(t);
      t += rng.exponential() / rate;
    }
    if (jump_times.empty()) continue;  // condition on at least one jump

    std::vector<double> times, left, right;
    times.push_back(0.0);
    left.push_back(0.0);
    right.push_back(0.0);
    double x = 0;
    for (double tj : jump_times) {
      times.push_back(tj);
      left.push_back(x);
      x += rng.gaussian();
      right.push_back(x);
    }
    if (times.back() < 1.0) {
      times.push_back(1.0);
      left.push_back(x);
      right.push_back(x);
    }
    return CadlagPath::from_knots(std::move(times), std::move(left),
                                  std::move(right));
  }
}

SampledPath star_path(double alpha, int k_terms) {
  if (!(alpha > 0)) fail(Errc::invalid_alpha, "alpha must be positive");
  if (k_terms < 1) fail(Errc::empty_input, "need at least one peak");
  std::vector<double> times, values;
  times.push_back(0.0);
  values.push_back(0.0);
  for (int m = 2 * k_terms + 1; m >= 1; --m) {
    times.push_back(1.0 / static_cast<double>(m));
    if (m % 2 == 0)
      values.push_back(std::pow(static_cast<double>(m) / 2.0, -alpha));
    else
      values.push_back(0.0);
  }
  times.back() = 1.0;
  return SampledPath::from_knots(std::move(times), std::move(values));
}

SampledPath zigzag(int teeth) {
  if (teeth < 1) fail(Errc::empty_input, "need at least one tooth");
  std::vector<double> v;
  v.reserve(2 * static_cast<std::size_t>(teeth) + 1);
  for (int i = 0; i < teeth; ++i) {
    v.push_back(0.0);
    v.push_back(1.0);
  }
  v.push_back(0.0);
  return SampledPath::uniform(std::move(v));
}

SampledPath fixture_p0() {
  return SampledPath::from_knots({0.0, 0.25, 0.5, 0.75, 1.0},
                                 {0.0, 2.0, 1.0, 3.0, 0.0});
}

SampledPath fixture_p1() {
  return SampledPath::from_knots({0.0, 0.5, 1.0}, {1.0, 0.0, 2.0});
}

}  // namespace pathforest
