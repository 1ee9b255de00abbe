#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pathforest/embedding.hpp"
#include "pathforest/merge_tree.hpp"
#include "pathforest/path.hpp"
#include "pathforest/trim.hpp"

namespace pathforest {

/// Exact p-variation of a value sequence: sup over subsequences of
/// sum |increments|^p. Monotone runs are collapsed first (this preserves the
/// supremum), then an O(m^2) best-ending-at-j recursion. For a piecewise
/// linear path the knot sequence realizes the supremum of the continuous
/// definition.
double pvar_exact(std::span<const double> values, double p);

/// Turning-point reduction used by pvar_exact; exposed for the large-n
/// sequence-identity checks.
std::vector<double> turning_points(std::span<const double> values);

struct ScalingFit {
  double a_lo = 0, a_hi = 0;  // window actually used
  double slope = 0, intercept = 0, r2 = 0;
  double estimate = 0;    // max(slope, 1), from the leaf-count route
  double slope_l = 0;     // log L^a vs log(1/a)
  double estimate_l = 0;  // slope_l + 1
  int used_scales = 0;
  bool valid = false;  // r2 >= 0.9 on the count fit
};

/// Least-squares slope of log N^a against log(1/a); the variation index is
/// the slope clamped below by 1. Scales with N^a < 20 or below the
/// discretization floor are dropped; when that leaves fewer than 5 scales
/// the filter relaxes to N^a >= 1 (bounded trees legitimately estimate 1).
ScalingFit variation_index(
    const TrimProfile& profile,
    std::optional<std::pair<double, double>> window = std::nullopt);

struct VariationReport {
  double p = 0;
  std::optional<double> exact;
  double lower = 0;  // sup_a a^p N^a over the exact breakpoints
  std::optional<double> lower_doubled;  // 2x lower, only when om01 holds
  double upper = 0;                     // 2p * int h^{p-1} dlambda
  std::optional<ScalingFit> index_fit;
};

/// Tree-based sandwich for V_p; `exact` is filled by the DP oracle when the
/// turning-point sequence has at most `exact_cap` entries.
VariationReport pvar_bounds(const SampledPath& path, double p,
                            const MergeTree& tree, const TrimProfile& profile,
                            std::size_t exact_cap = 6000);

struct HurstRatioFit {
  double a_lo = 0, a_hi = 0;
  std::vector<double> ratios;  // a N^a / L^a per used scale
  double median_ratio = 0;
  double h_median = 0;  // 1 / (1 + median ratio)
  double h_fit = 0;     // from the L^a regression slope
  double r2 = 0;
  int used_scales = 0;
};

/// a N^a / L^a tends to 1/H - 1; the median over the usable window is the
/// primary estimate, the regression variant is reported alongside.
HurstRatioFit hurst_ratio(
    const TrimProfile& profile,
    std::optional<std::pair<double, double>> window = std::nullopt);

/// Drawdown statistic (1/(a N^a)) sum_{i=1}^{N-1} (w(T_i) - w(S_{i-1}));
/// its small-a limit is (2H-1)/(1-H) for fractional Brownian paths.
double hurst_drawdown(const SampledPath& path, double a);

inline double hurst_from_drawdown(double statistic) {
  return (statistic + 1.0) / (statistic + 2.0);
}

struct FirstPassage {
  std::optional<double> t_down;  // inf{t: w(t) < sup_[0,t] w - a}
  std::optional<double> t_up;    // inf{t: w(t) > inf_[0,t] w + a}
};

FirstPassage first_passage_times(
    const std::vector<std::pair<double, double>>& events, double a);
std::vector<std::pair<double, double>> path_events(const SampledPath& path);
std::vector<std::pair<double, double>> cadlag_events(const CadlagPath& path);

/// Mean of xi(a) * N^a over the ensemble.
double levy_xi_check(const std::vector<SampledPath>& ensemble, double a,
                     const std::function<double(double)>& xi);
double levy_xi_check(const std::vector<CadlagPath>& ensemble, double a,
                     const std::function<double(double)>& xi);

/// Empirical xi(a) = mean of S^a + T^a over paths where both passages occur.
double empirical_xi(const std::vector<SampledPath>& ensemble, double a);
double empirical_xi(const std::vector<CadlagPath>& ensemble, double a);

}  // namespace pathforest
