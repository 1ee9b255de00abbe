#pragma once

#include <functional>
#include <vector>

#include "pathforest/path.hpp"

namespace pathforest {

/// Small dense d x d matrix, row-major.
struct Tensor2 {
  int d = 0;
  std::vector<double> m;
  explicit Tensor2(int dim = 0) : d(dim), m(static_cast<std::size_t>(dim * dim), 0.0) {}
  double& at(int i, int j) { return m[static_cast<std::size_t>(i * d + j)]; }
  double at(int i, int j) const { return m[static_cast<std::size_t>(i * d + j)]; }
  Tensor2& operator+=(const Tensor2& o) {
    for (std::size_t k = 0; k < m.size(); ++k) m[k] += o.m[k];
    return *this;
  }
};

// Multidimensional path with its second-level increments. Gamma(s,t) is the
// exact double integral of the piecewise-linear interpolant, assembled from
// per-knot prefix tensors via the multiplicative (Chen) identity, so the
// identity holds to rounding on arbitrary triples.
class RoughPath {
 public:
  static RoughPath lift_linear(std::vector<SampledPath> components,
                               double hoelder_r);

  int dimension() const { return d_; }
  double hoelder_r() const { return r_; }

  std::vector<double> point(double t) const;
  double component(int i, double t) const;
  Tensor2 gamma(double s, double t) const;

  const std::vector<double>& grid() const { return times_; }

 private:
  RoughPath() = default;
  std::vector<double> increment(std::size_t k) const;  // knot k -> k+1
  std::vector<double> value_at_knot(std::size_t k) const;

  int d_ = 0;
  double r_ = 0.5;
  std::vector<double> times_;
  std::vector<std::vector<double>> values_;  // per component
  std::vector<Tensor2> prefix_;  // Gamma(t_0, t_k) at every knot
};

struct ControlledIntegrand {
  std::function<std::vector<double>(double)> rho;  // row vector, length d
  std::function<Tensor2(double)> phi;              // d x d derivative block
  double mu_prime = 0;
};

struct RoughResult {
  double value = 0;
  double local_error_exponent = 0;  // fit of |g(2n)-g(n)| against the mesh
  int depth = 0;
  std::vector<std::pair<double, double>> refinement;  // (mesh, g value)
};

/// Compensated Riemann sums g(Sigma) = sum rho(t_k) dxi + Phi(t_k)
/// Gamma(t_k,t_{k+1}) over dyadic refinements of [s,t], accepted once two
/// successive refinements differ by less than tol. Requires r > 1/3.
RoughResult rough_integral(const ControlledIntegrand& ci, const RoughPath& rp,
                           double s, double t, double tol);

/// g(Sigma) on one explicit partition (useful for the exactness identities).
double rough_sum(const ControlledIntegrand& ci, const RoughPath& rp,
                 const std::vector<double>& partition);

}  // namespace pathforest
