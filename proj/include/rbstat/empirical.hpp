#ifndef RBSTAT_EMPIRICAL_HPP
#define RBSTAT_EMPIRICAL_HPP

// Empirical distribution machinery: ECDFs, the order-statistic shortcut for
// the block-vs-pooled sup norm, block covariance/correlation estimates over
// distance bands, and nearest-neighbor G statistics for point patterns.

#include <cstddef>
#include <utility>
#include <vector>

#include "rbstat/common.hpp"

namespace rbstat {

struct SortedSample {
  std::vector<double> values;  // ascending

  static SortedSample from_unsorted(std::vector<double> v);
  std::size_t n() const { return values.size(); }
  double max() const;
};

// Proportion of sample values <= x (right-continuous ECDF).
double ecdf_eval(const SortedSample& sample, double x);

// Sup-norm statistic between a block ECDF and the pooled ECDF, computed by
// the order-statistic shortcut:
//   s = 1 - F_pooled(max(block))          when max(block) != max(pooled)
// When the block contains the pooled maximum the shortcut is invalid; the
// block maximum is dropped (all tied copies) and the formula applied to the
// new maximum.  A block reduced to nothing returns 1 - (n-1)/n, an
// implementation convention for the undefined size-1 case.
double supnorm_block_vs_pooled(const SortedSample& block, const SortedSample& pooled);

// Reference oracle: exact sup over all pooled order statistics of
// |F_block(x) - F_pooled(x)|.  Exposed for testing; the detectors use the
// shortcut above, which is what defines the method's published behavior even
// though it is NOT the true two-sided sup in general (see decisions ledger).
double brute_force_supnorm(const SortedSample& block, const SortedSample& pooled);

// ---------------------------------------------------------------------------
// Block covariance over distance bands
// ---------------------------------------------------------------------------

struct CovBand {
  double h_lo = 0.0;
  double h_hi = 0.0;
  // Index pairs (i, j), i < j, with h_lo <= dist(s_i, s_j) < h_hi.
  std::vector<std::pair<int, int>> pairs;
};

// Block covariance estimate over a band:
//   sum X_{s1} X_{s2} / (2 n_pairs) - mean(first elements) * mean(second elements)
double block_covariance(const std::vector<double>& values, const CovBand& band);

// cov / (sd1 * sd2), clamped to [-1, 1].
double to_correlation(double cov, double sd1, double sd2);

// ---------------------------------------------------------------------------
// Nearest-neighbor distances and G statistics
// ---------------------------------------------------------------------------

// Exact nearest-neighbor distance for each point (O(n^2) scan, parallelized
// over points).  Ties broken toward the smaller index, so the grid-free and
// serial variants agree bit-for-bit.
std::vector<double> nn_distances(const std::vector<Point>& points);
std::vector<double> nn_distances_serial(const std::vector<Point>& points);

// Homogeneous-Poisson intensity MLE: n / area.
double intensity_mle(std::size_t n_points, double window_area);

// Theoretical nearest-neighbor distance CDF under CSR: 1 - exp(-lambda pi x^2).
double g_theoretical(double lambda, double x);

// Mean absolute gap between a block's empirical G and the theoretical G:
//   (1/n) sum_i |G_hat(d_i) - G_tilde(d_i)|
double integrated_g_discrepancy(const std::vector<double>& block_distances, double lambda_hat);

}  // namespace rbstat

#endif  // RBSTAT_EMPIRICAL_HPP
