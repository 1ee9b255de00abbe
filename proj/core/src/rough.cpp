#include "pathforest/rough.hpp"

#include <algorithm>
#include <cmath>

namespace pathforest {

namespace {

Tensor2 outer(const std::vector<double>& x, const std::vector<double>& y) {
  Tensor2 t(static_cast<int>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      t.m[i * x.size() + j] = x[i] * y[j];
  return t;
}

std::vector<double> minus(const std::vector<double>& a,
                          const std::vector<double>& b) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

}  // namespace

RoughPath RoughPath::lift_linear(std::vector<SampledPath> components,
                                 double hoelder_r) {
  if (components.empty()) fail(Errc::dimension_mismatch, "no components");
  RoughPath rp;
  rp.d_ = static_cast<int>(components.size());
  rp.r_ = hoelder_r;

  // merge all knot sets into one grid
  std::vector<double> grid;
  for (const auto& c : components) {
    const auto t = c.times_vector();
    grid.insert(grid.end(), t.begin(), t.end());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  rp.times_ = grid;

  rp.values_.resize(static_cast<std::size_t>(rp.d_));
  for (int i = 0; i < rp.d_; ++i) {
    auto& vi = rp.values_[static_cast<std::size_t>(i)];
    vi.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
      vi[k] = components[static_cast<std::size_t>(i)](grid[k]);
  }

  // prefix Gamma(t_0, t_k); per-cell double integral of a linear piece is
  // (dxi (x) dxi)/2
  rp.prefix_.assign(grid.size(), Tensor2(rp.d_));
  std::vector<double> xi0 = rp.value_at_knot(0);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const std::vector<double> xik = rp.value_at_knot(k);
    const std::vector<double> dxi = rp.increment(k);
    Tensor2 next = rp.prefix_[k];
    Tensor2 cell = outer(dxi, dxi);
    for (auto& x : cell.m) x *= 0.5;
    next += cell;
    next += outer(minus(xik, xi0), dxi);
    rp.prefix_[k + 1] = next;
  }
  return rp;
}

std::vector<double> RoughPath::value_at_knot(std::size_t k) const {
  std::vector<double> v(static_cast<std::size_t>(d_));
  for (int i = 0; i < d_; ++i) v[static_cast<std::size_t>(i)] = values_[static_cast<std::size_t>(i)][k];
  return v;
}

std::vector<double> RoughPath::increment(std::size_t k) const {
  std::vector<double> v(static_cast<std::size_t>(d_));
  for (int i = 0; i < d_; ++i)
    v[static_cast<std::size_t>(i)] =
        values_[static_cast<std::size_t>(i)][k + 1] -
        values_[static_cast<std::size_t>(i)][k];
  return v;
}

std::vector<double> RoughPath::point(double t) const {
  if (t < times_.front() || t > times_.back())
    fail(Errc::out_of_range, "time outside the grid");
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t k = static_cast<std::size_t>(it - times_.begin());
  if (k == 0) k = 1;
  if (k >= times_.size()) k = times_.size() - 1;
  const double w = (t - times_[k - 1]) / (times_[k] - times_[k - 1]);
  std::vector<double> v(static_cast<std::size_t>(d_));
  for (int i = 0; i < d_; ++i) {
    const auto& vi = values_[static_cast<std::size_t>(i)];
    v[static_cast<std::size_t>(i)] = vi[k - 1] + w * (vi[k] - vi[k - 1]);
  }
  return v;
}

double RoughPath::component(int i, double t) const { return point(t)[static_cast<std::size_t>(i)]; }

Tensor2 RoughPath::gamma(double s, double t) const {
  // Gamma(0,x) for arbitrary x: extend the prefix to the partial segment,
  // then compose: Gamma(s,t) = G(t) - G(s) - (xi(s)-xi(0)) (x) (xi(t)-xi(s))
  auto prefix_at = [this](double x) {
    auto it = std::upper_bound(times_.begin(), times_.end(), x);
    std::size_t k = static_cast<std::size_t>(it - times_.begin());
    if (k == 0) k = 1;
    if (k >= times_.size()) k = times_.size() - 1;
    const std::vector<double> xik = value_at_knot(k - 1);
    const std::vector<double> xix = point(x);
    Tensor2 g = prefix_[k - 1];
    const std::vector<double> part = minus(xix, xik);
    Tensor2 cell = outer(part, part);
    for (auto& y : cell.m) y *= 0.5;
    g += cell;
    g += outer(minus(xik, value_at_knot(0)), part);
    return g;
  };
  const Tensor2 gt = prefix_at(t);
  const Tensor2 gs = prefix_at(s);
  const std::vector<double> xis = point(s);
  const std::vector<double> xit = point(t);
  Tensor2 out(d_);
  const Tensor2 corr = outer(minus(xis, value_at_knot(0)), minus(xit, xis));
  for (std::size_t k = 0; k < out.m.size(); ++k)
    out.m[k] = gt.m[k] - gs.m[k] - corr.m[k];
  return out;
}

double rough_sum(const ControlledIntegrand& ci, const RoughPath& rp,
                 const std::vector<double>& partition) {
  double acc = 0;
  for (std::size_t k = 0; k + 1 < partition.size(); ++k) {
    const double t0 = partition[k], t1 = partition[k + 1];
    const std::vector<double> rho = ci.rho(t0);
    if (static_cast<int>(rho.size()) != rp.dimension())
      fail(Errc::dimension_mismatch, "integrand dimension mismatch");
    const std::vector<double> dxi =
        minus(rp.point(t1), rp.point(t0));
    for (std::size_t i = 0; i < rho.size(); ++i) acc += rho[i] * dxi[i];
    const Tensor2 phi = ci.phi(t0);
    const Tensor2 g = rp.gamma(t0, t1);
    for (std::size_t i = 0; i < g.m.size(); ++i) acc += phi.m[i] * g.m[i];
  }
  return acc;
}

RoughResult rough_integral(const ControlledIntegrand& ci, const RoughPath& rp,
                           double s, double t, double tol) {
  if (!(rp.hoelder_r() > 1.0 / 3.0))
    fail(Errc::invalid_exponent, "need r > 1/3");
  if (!(s < t)) fail(Errc::out_of_range, "need s < t");

  RoughResult res;
  double prev = 0;
  bool have_prev = false;
  std::vector<double> meshes, diffs;
  for (int n = 1; n <= (1 << 18); n *= 2) {
    std::vector<double> part(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
      part[static_cast<std::size_t>(k)] = s + (t - s) * k / n;
    const double g = rough_sum(ci, rp, part);
    res.refinement.emplace_back((t - s) / n, g);
    if (have_prev) {
      const double d = std::abs(g - prev);
      if (d > 0) {
        meshes.push_back((t - s) / n);
        diffs.push_back(d);
      }
      if (d < tol) {
        res.value = g;
        res.depth = n;
        // slope of log diffs against log mesh
        if (meshes.size() >= 2) {
          double sx = 0, sy = 0, sxx = 0, sxy = 0;
          for (std::size_t i = 0; i < meshes.size(); ++i) {
            const double x = std::log(meshes[i]), y = std::log(diffs[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
          }
          const double nn = static_cast<double>(meshes.size());
          const double den = nn * sxx - sx * sx;
          res.local_error_exponent = den != 0 ? (nn * sxy - sx * sy) / den : 0;
        } else {
          res.local_error_exponent = 10.0;  // stabilized immediately
        }
        return res;
      }
    }
    prev = g;
    have_prev = true;
  }
  fail(Errc::non_convergent, "rough sums did not stabilize");
}

}  // namespace pathforest
