#pragma once

#include <cstdint>
#include <vector>

#include "pathforest/embedding.hpp"
#include "pathforest/path.hpp"
#include "pathforest/rng.hpp"

namespace pathforest {

enum class FbmMethod { automatic, hosking, circulant };

/// Exact fractional Brownian sample on the uniform grid j/n, W(0)=0, with
/// cov(W_s,W_t) = (sigma^2/2)(s^{2H} + t^{2H} - |t-s|^{2H}). Direct
/// factorization (Hosking recursion, O(n^2)) up to n=4096, circulant
/// embedding above. Identical (n,H,sigma,seed) gives identical bytes.
SampledPath gen_fbm(std::size_t n, double hurst, double sigma,
                    std::uint64_t seed, FbmMethod method = FbmMethod::automatic);

SampledPath gen_brownian(std::size_t n, double sigma, std::uint64_t seed);

/// Symmetric alpha-stable increments rendered as a pure-jump cadlag path;
/// the scale is normalized so alpha=2 matches a standard Gaussian.
CadlagPath gen_stable(std::size_t n, double alpha, double sigma,
                      std::uint64_t seed);

/// Compound Poisson with standard normal jumps (conditioned on >= 1 jump).
CadlagPath gen_cpoisson(double rate, std::uint64_t seed);

/// Truncated star example: affine on each [1/(m+1), 1/m], zero at odd
/// reciprocals, k^{-alpha} at 1/(2k), K peaks, closed at 0.
SampledPath star_path(double alpha, int k_terms);

SampledPath zigzag(int teeth);
SampledPath fixture_p0();
SampledPath fixture_p1();

namespace detail {

/// Autocovariance r(0..n) of standard fractional Gaussian noise.
std::vector<double> fgn_autocov(double hurst, std::size_t n);
std::vector<double> fgn_hosking(const std::vector<double>& autocov,
                                std::size_t n, CounterRng& rng);
std::vector<double> fgn_circulant(const std::vector<double>& autocov,
                                  std::size_t n, CounterRng& rng);
std::vector<double> circulant_eigenvalues(const std::vector<double>& autocov,
                                          std::size_t n);

}  // namespace detail

}  // namespace pathforest
