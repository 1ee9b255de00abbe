#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "pathforest/path.hpp"

namespace pathforest {

// Bounded integrand t -> rho(t) on [0,1]. Breakpoints are quadrature hints:
// integration routines subdivide there so piecewise-polynomial integrands
// are handled exactly.
class Integrand {
 public:
  static Integrand constant(double c) {
    return Integrand([c](double) { return c; }, {});
  }
  static Integrand time() {
    return Integrand([](double t) { return t; }, {});
  }
  static Integrand poly(std::vector<double> coeffs) {
    return Integrand(
        [c = std::move(coeffs)](double t) {
          double acc = 0;
          for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
          return acc;
        },
        {});
  }
  static Integrand sampled(SampledPath series) {
    auto sp = std::make_shared<SampledPath>(std::move(series));
    return Integrand([sp](double t) { return (*sp)(t); }, sp->times_vector());
  }
  /// rho(t) = f(w(t)).
  static Integrand compose(std::function<double(double)> f, SampledPath base) {
    auto bp = std::make_shared<SampledPath>(std::move(base));
    std::vector<double> brk = bp->times_vector();
    return Integrand(
        [f = std::move(f), bp](double t) { return f((*bp)(t)); },
        std::move(brk));
  }
  static Integrand function(std::function<double(double)> f,
                            std::vector<double> breakpoints = {}) {
    return Integrand(std::move(f), std::move(breakpoints));
  }

  double operator()(double t) const { return eval_(t); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  Integrand(std::function<double(double)> eval, std::vector<double> brk)
      : eval_(std::move(eval)), breakpoints_(std::move(brk)) {}

  std::function<double(double)> eval_;
  std::vector<double> breakpoints_;
};

}  // namespace pathforest
