#pragma once

#include <functional>
#include <vector>

#include "pathforest/path.hpp"

namespace pathforest {

/// Field of a controlled equation dx = f(x) dxi for scalar x and a
/// d-dimensional driver: f maps the state to a row vector, df is its state
/// derivative (used by the one-step Taylor scheme).
struct CdeField {
  std::function<std::vector<double>(double)> f;
  std::function<std::vector<double>(double)> df;
};

enum class CdeScheme { picard, taylor };

struct CdeOptions {
  double tol = 1e-6;
  int max_picard = 60;
  int grid_points = 4096;
  CdeScheme scheme = CdeScheme::picard;
};

/// Solves dx = f(x) dxi with x(0)=x0 by Picard iteration with trapezoid
/// quadrature on a refined joint grid; intervals are bisected and glued when
/// the iteration fails to contract. The Taylor scheme adds the second-order
/// Gamma terms from the linear lift and needs no iteration.
SampledPath cde_solve(const CdeField& field,
                      const std::vector<SampledPath>& drivers, double x0,
                      const CdeOptions& options = {});

}  // namespace pathforest
