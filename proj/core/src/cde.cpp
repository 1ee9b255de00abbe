#include "pathforest/cde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pathforest/rough.hpp"

namespace pathforest {

namespace {

std::vector<double> joint_grid(const std::vector<SampledPath>& drivers,
                               int min_points) {
  std::vector<double> g;
  for (const auto& d : drivers) {
    const auto t = d.times_vector();
    g.insert(g.end(), t.begin(), t.end());
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  if (static_cast<int>(g.size()) < min_points) {
    const int mult =
        (min_points + static_cast<int>(g.size()) - 2) /
        std::max(1, static_cast<int>(g.size()) - 1);
    std::vector<double> fine;
    fine.reserve(g.size() * static_cast<std::size_t>(mult));
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      for (int s = 0; s < mult; ++s)
        fine.push_back(g[i] + (g[i + 1] - g[i]) * s / mult);
    }
    fine.push_back(g.back());
    g = std::move(fine);
  }
  return g;
}

// Picard iteration on [lo,hi] (grid index range), trapezoid quadrature.
// Returns false when the iteration fails to contract.
bool picard_on(const CdeField& field,
               const std::vector<std::vector<double>>& xi, std::size_t lo,
               std::size_t hi, double x0, int max_iter, double tol,
               std::vector<double>& x) {
  const std::size_t d = xi.size();
  for (std::size_t k = lo; k <= hi; ++k) x[k] = x0;
  std::vector<double> xnew(hi - lo + 1);
  double prev_err = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    double err = 0;
    double acc = x0;
    xnew[0] = x0;
    std::vector<double> f_prev = field.f(x[lo]);
    for (std::size_t k = lo + 1; k <= hi; ++k) {
      const std::vector<double> f_cur = field.f(x[k]);
      double inc = 0;
      for (std::size_t j = 0; j < d; ++j)
        inc += 0.5 * (f_prev[j] + f_cur[j]) * (xi[j][k] - xi[j][k - 1]);
      acc += inc;
      xnew[k - lo] = acc;
      f_prev = f_cur;
    }
    for (std::size_t k = lo; k <= hi; ++k) {
      err = std::max(err, std::abs(xnew[k - lo] - x[k]));
      x[k] = xnew[k - lo];
    }
    if (err < tol) return true;
    if (it > 8 && err > prev_err * 0.9 && err > 1e3 * tol) return false;
    prev_err = err;
  }
  return false;
}

bool solve_recursive(const CdeField& field,
                     const std::vector<std::vector<double>>& xi,
                     std::size_t lo, std::size_t hi, double x0,
                     const CdeOptions& opt, int depth, std::vector<double>& x) {
  if (picard_on(field, xi, lo, hi, x0, opt.max_picard, opt.tol, x))
    return true;
  if (depth >= 12 || hi - lo < 2) return false;
  const std::size_t mid = lo + (hi - lo) / 2;
  if (!solve_recursive(field, xi, lo, mid, x0, opt, depth + 1, x))
    return false;
  return solve_recursive(field, xi, mid, hi, x[mid], opt, depth + 1, x);
}

}  // namespace

SampledPath cde_solve(const CdeField& field,
                      const std::vector<SampledPath>& drivers, double x0,
                      const CdeOptions& options) {
  if (drivers.empty()) fail(Errc::empty_input, "need at least one driver");
  const std::vector<double> grid = joint_grid(drivers, options.grid_points);
  const std::size_t n = grid.size();
  const std::size_t d = drivers.size();

  std::vector<std::vector<double>> xi(d);
  for (std::size_t j = 0; j < d; ++j) {
    xi[j].resize(n);
    for (std::size_t k = 0; k < n; ++k) xi[j][k] = drivers[j](grid[k]);
  }
  {
    const std::vector<double> probe = field.f(x0);
    if (probe.size() != d)
      fail(Errc::dimension_mismatch, "field width != driver count");
  }

  std::vector<double> x(n, x0);
  if (options.scheme == CdeScheme::picard) {
    if (!solve_recursive(field, xi, 0, n - 1, x0, options, 0, x))
      fail(Errc::no_convergence, "Picard iteration failed to contract");
  } else {
    std::vector<SampledPath> comps = drivers;
    const RoughPath rp = RoughPath::lift_linear(std::move(comps), 0.5);
    double cur = x0;
    x[0] = cur;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const std::vector<double> fv = field.f(cur);
      const std::vector<double> dfv = field.df(cur);
      const Tensor2 g = rp.gamma(grid[k], grid[k + 1]);
      double inc = 0;
      for (std::size_t j = 0; j < d; ++j)
        inc += fv[j] * (xi[j][k + 1] - xi[j][k]);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          inc += dfv[j] * fv[i] * g.at(static_cast<int>(i), static_cast<int>(j));
      cur += inc;
      x[k + 1] = cur;
    }
  }
  return SampledPath::from_knots_allow_constant(grid, std::move(x));
}

}  // namespace pathforest
