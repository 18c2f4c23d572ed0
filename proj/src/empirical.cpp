#include "rbstat/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rbstat {

SortedSample SortedSample::from_unsorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return SortedSample{std::move(v)};
}

double SortedSample::max() const {
  if (values.empty()) throw input_error("SortedSample::max: empty sample");
  return values.back();
}

double ecdf_eval(const SortedSample& sample, double x) {
  if (sample.values.empty()) throw input_error("ecdf_eval: empty sample");
  const auto it = std::upper_bound(sample.values.begin(), sample.values.end(), x);
  return static_cast<double>(it - sample.values.begin()) / static_cast<double>(sample.values.size());
}

double supnorm_block_vs_pooled(const SortedSample& block, const SortedSample& pooled) {
  if (block.values.empty()) throw input_error("supnorm_block_vs_pooled: empty block");
  if (pooled.values.empty()) throw input_error("supnorm_block_vs_pooled: empty pooled sample");
  const double pooled_max = pooled.max();
  const double n = static_cast<double>(pooled.n());
  double x_hat = block.max();
  if (x_hat == pooled_max) {
    // Shortcut invalid: drop every copy of the pooled maximum from the block
    // and use the next-largest value.
    const auto it = std::lower_bound(block.values.begin(), block.values.end(), pooled_max);
    if (it == block.values.begin()) return 1.0 - (n - 1.0) / n;  // block held only the max
    x_hat = *(it - 1);
  }
  return 1.0 - ecdf_eval(pooled, x_hat);
}

double brute_force_supnorm(const SortedSample& block, const SortedSample& pooled) {
  if (block.values.empty()) throw input_error("brute_force_supnorm: empty block");
  if (pooled.values.empty()) throw input_error("brute_force_supnorm: empty pooled sample");
  double sup = 0.0;
  for (const double x : pooled.values) {
    sup = std::max(sup, std::abs(ecdf_eval(block, x) - ecdf_eval(pooled, x)));
  }
  return sup;
}

double block_covariance(const std::vector<double>& values, const CovBand& band) {
  if (band.pairs.empty()) throw input_error("block_covariance: empty band");
  double cross = 0.0, m1 = 0.0, m2 = 0.0;
  for (const auto& [i, j] : band.pairs) {
    const double a = values.at(static_cast<std::size_t>(i));
    const double b = values.at(static_cast<std::size_t>(j));
    cross += a * b;
    m1 += a;
    m2 += b;
  }
  const double np = static_cast<double>(band.pairs.size());
  return cross / (2.0 * np) - (m1 / np) * (m2 / np);
}

double to_correlation(double cov, double sd1, double sd2) {
  if (sd1 <= 0.0 || sd2 <= 0.0) throw input_error("to_correlation: nonpositive standard deviation");
  return std::clamp(cov / (sd1 * sd2), -1.0, 1.0);
}

namespace {

std::vector<double> nn_distances_impl(const std::vector<Point>& points, bool parallel) {
  const std::size_t n = points.size();
  if (n < 2) throw input_error("nn_distances: need at least 2 points");
  std::vector<double> out(n);
  const auto body = [&](std::size_t i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dx = points[i].x - points[j].x;
      const double dy = points[i].y - points[j].y;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best) best = d2;  // strict < breaks ties toward the smaller index
    }
    out[i] = std::sqrt(best);
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
  return out;
}

}  // namespace

std::vector<double> nn_distances(const std::vector<Point>& points) {
  return nn_distances_impl(points, true);
}

std::vector<double> nn_distances_serial(const std::vector<Point>& points) {
  return nn_distances_impl(points, false);
}

double intensity_mle(std::size_t n_points, double window_area) {
  if (window_area <= 0.0) throw input_error("intensity_mle: window area must be positive");
  return static_cast<double>(n_points) / window_area;
}

double g_theoretical(double lambda, double x) {
  if (lambda < 0.0 || x < 0.0) return 0.0;
  return 1.0 - std::exp(-lambda * std::numbers::pi * x * x);
}

double integrated_g_discrepancy(const std::vector<double>& block_distances, double lambda_hat) {
  if (block_distances.empty()) throw input_error("integrated_g_discrepancy: empty distance list");
  const SortedSample g_hat = SortedSample::from_unsorted(block_distances);
  double acc = 0.0;
  for (const double d : block_distances) {
    acc += std::abs(ecdf_eval(g_hat, d) - g_theoretical(lambda_hat, d));
  }
  return acc / static_cast<double>(block_distances.size());
}

}  // namespace rbstat
