#pragma once

#include <vector>

#include "pathforest/embedding.hpp"
#include "pathforest/integrand.hpp"
#include "pathforest/path.hpp"
#include "pathforest/trim.hpp"

namespace pathforest {

/// Lebesgue-Stieltjes integral of rho against a finite-variation sampled
/// path: per monotone segment, slope times a Gauss-Legendre composite rule
/// (subdivided at the integrand's breakpoints); exact for polynomial rho up
/// to degree 9 per subdivision.
double stieltjes(const Integrand& rho, const SampledPath& path,
                 int subdivisions = 4);

struct TraceEntry {
  double a = 0;
  double flatten_value = 0;  // stieltjes against flatten(path, a)
  double leaf_sum = 0;       // I^a over the interior leaf pairs
};

struct IntegralReport {
  double value = 0;          // exact tree-sweep route (route B)
  double route_a = 0;        // last flatten-Stieltjes trace entry
  double route_b = 0;        // == value
  double interior_part = 0;  // pairs fully inside [0,1]
  double boundary_part = 0;  // arcs reaching outside; equals the integral
                             // against the valley floor
  double valley_term = 0;    // stieltjes against the valley floor
  std::vector<TraceEntry> trace;
  double error_bar = 0;  // mass of the sweep below the discretization floor
  bool converged = false;
};

// Tree integral of rho d omega. Route A flattens the path along a decreasing
// scale ladder and integrates classically; route B integrates the leaf-pair
// differences exactly in the level parameter (piece-wise affine crossing
// times, Gauss rule per piece), which realizes the scale integral without
// grid error. Routes must agree within the stabilization tolerance or the
// integral is reported non-convergent.
IntegralReport tree_integral(const Integrand& rho, const SampledPath& path,
                             const ScaleGrid& grid, double tol = 1e-7,
                             bool throw_on_nonconvergent = true);

/// Young integral: left-point Riemann sums over refinements of the knot
/// partition, Richardson-extrapolated until successive values differ by
/// less than tol.
double young(const Integrand& rho, const SampledPath& path, double tol = 1e-8);

/// Cadlag variant, evaluated through the graph embedding; rho must be
/// continuous at the jump times.
double young(const Integrand& rho, const CadlagPath& path, double tol = 1e-8);

/// rho on the original clock, composed with the embedding's inverse time
/// change (jump windows map back to their jump time).
Integrand embed_integrand(const Integrand& rho, const GraphEmbedding& embedding);

/// Certified lower bound for V_q(rho | omega): leaf pairs are admissible
/// matched-level subdivisions, so sup over the grid scales of
/// sum |rho(tau_up) - rho(tau_down)|^q bounds the conditional variation.
double conditional_variation_lb(const Integrand& rho, const SampledPath& path,
                                double q, const ScaleGrid& grid);

}  // namespace pathforest
