#include "rbstat/detect.hpp"

#include <algorithm>
#include <cmath>

#include "rbstat/empirical.hpp"
#include "rbstat/recursive_bayes.hpp"

namespace rbstat {

Verdict verdict(const std::vector<double>& posterior_means, const VerdictConfig& cfg) {
  if (posterior_means.empty()) throw input_error("verdict: empty trajectory");
  if (cfg.theta_lo < 0.0 || cfg.theta_hi > 1.0 || cfg.theta_lo >= cfg.theta_hi) {
    throw input_error("verdict: need 0 <= theta_lo < theta_hi <= 1");
  }
  const std::size_t n = posterior_means.size();
  std::size_t tail = static_cast<std::size_t>(
      std::ceil(cfg.tail_fraction * static_cast<double>(n)));
  tail = std::clamp<std::size_t>(tail, 1, n);
  double acc = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) acc += posterior_means[i];
  const double tail_mean = acc / static_cast<double>(tail);
  if (tail_mean >= cfg.theta_hi) return Verdict::Stationary;
  if (tail_mean <= cfg.theta_lo) return Verdict::Nonstationary;
  return Verdict::Inconclusive;
}

DetectionReport run_detection(const std::vector<double>& statistics, BoundSequence bounds,
                              const VerdictConfig& cfg) {
  if (statistics.empty()) throw input_error("run_detection: no statistics");
  DetectionReport report;
  report.stages.reserve(statistics.size());
  BetaRecursionState beta;
  std::vector<double> means;
  means.reserve(statistics.size());
  for (std::size_t i = 0; i < statistics.size(); ++i) {
    const int j = static_cast<int>(i) + 1;
    StageRecord rec;
    rec.j = j;
    rec.s = statistics[i];
    rec.c = bounds.bound_for_stage(j);
    rec.y = (rec.s <= rec.c) ? 1 : 0;
    bounds.observe(j, rec.y);
    beta = beta_update(beta, rec.y);
    const MeanVar mv = beta_mean_var(beta);
    rec.post_mean = mv.mean;
    rec.post_var = mv.variance;
    means.push_back(mv.mean);
    report.stages.push_back(rec);
  }
  report.verdict = verdict(means, cfg);
  return report;
}

std::vector<double> strict_statistics(const std::vector<double>& values,
                                      const Partition& partition) {
  if (partition.K < 2) throw input_error("strict_statistics: need at least 2 blocks");
  for (const int sz : partition.sizes) {
    if (sz < 3) throw input_error("strict_statistics: every block must have >= 3 observations");
  }
  const SortedSample pooled = SortedSample::from_unsorted(values);
  const auto groups = partition.members();
  std::vector<double> stats(groups.size());
  // Per-block statistics are independent: parallel map, deterministic per
  // element regardless of thread count.
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < static_cast<long long>(groups.size()); ++c) {
    const auto& idx = groups[static_cast<std::size_t>(c)];
    std::vector<double> block;
    block.reserve(idx.size());
    for (const int i : idx) block.push_back(values[static_cast<std::size_t>(i)]);
    stats[static_cast<std::size_t>(c)] =
        supnorm_block_vs_pooled(SortedSample::from_unsorted(std::move(block)), pooled);
  }
  return stats;
}

DetectionReport detect_strict(const std::vector<double>& values, const Partition& partition,
                              BoundSequence bounds, const VerdictConfig& cfg) {
  return run_detection(strict_statistics(values, partition), std::move(bounds), cfg);
}

namespace {

// Correlation of a band's pair set: band covariance divided by the standard
// deviations of the pairs' first and second elements.  A degenerate band
// (zero spread) reports correlation 0.
double band_correlation(const std::vector<double>& values, const CovBand& band) {
  const double cov = block_covariance(values, band);
  double m1 = 0.0, m2 = 0.0, q1 = 0.0, q2 = 0.0;
  for (const auto& [i, j] : band.pairs) {
    const double a = values[static_cast<std::size_t>(i)];
    const double b = values[static_cast<std::size_t>(j)];
    m1 += a;
    m2 += b;
    q1 += a * a;
    q2 += b * b;
  }
  const double np = static_cast<double>(band.pairs.size());
  const double v1 = q1 / np - (m1 / np) * (m1 / np);
  const double v2 = q2 / np - (m2 / np) * (m2 / np);
  if (v1 <= 0.0 || v2 <= 0.0) return 0.0;
  return to_correlation(cov, std::sqrt(v1), std::sqrt(v2));
}

}  // namespace

std::vector<std::vector<double>> covariance_statistics(const std::vector<double>& values,
                                                       const std::vector<Point>& locations,
                                                       const Partition& partition,
                                                       const std::vector<double>& boundaries,
                                                       std::vector<bool>* valid_out) {
  if (values.size() != locations.size()) {
    throw input_error("covariance_statistics: values/locations size mismatch");
  }
  const BandSet bands = distance_bands(locations, partition, boundaries);
  const std::size_t n_bands = bands.boundaries.size() - 1;
  std::vector<std::vector<double>> stats(n_bands);
  if (valid_out) *valid_out = bands.valid;

  for (std::size_t b = 0; b < n_bands; ++b) {
    if (!bands.valid[b]) continue;
    // Per-cluster correlations for this band, in cluster-id order; clusters
    // with no pairs in the band are skipped.
    std::vector<double> corr;
    std::vector<double> weight;
    for (int c = 0; c < partition.K; ++c) {
      const CovBand& band = bands.per_cluster[static_cast<std::size_t>(c)][b];
      if (band.pairs.empty()) continue;
      corr.push_back(band_correlation(values, band));
      weight.push_back(static_cast<double>(band.pairs.size()));
    }
    double wsum = 0.0, pooled = 0.0;
    for (std::size_t i = 0; i < corr.size(); ++i) {
      pooled += weight[i] * corr[i];
      wsum += weight[i];
    }
    pooled /= wsum;
    auto& s = stats[b];
    s.reserve(corr.size());
    for (const double r : corr) s.push_back(std::abs(r - pooled));
  }
  return stats;
}

CovarianceReport detect_covariance(const std::vector<double>& values,
                                   const std::vector<Point>& locations,
                                   const Partition& partition,
                                   const std::vector<double>& boundaries,
                                   const std::function<BoundSequence()>& make_bounds,
                                   const VerdictConfig& cfg) {
  std::vector<bool> valid;
  const auto stats = covariance_statistics(values, locations, partition, boundaries, &valid);

  CovarianceReport out;
  bool any_valid = false, any_diverged = false, all_converged = true;
  for (std::size_t b = 0; b < stats.size(); ++b) {
    BandReport band;
    band.h_lo = boundaries[b];
    band.h_hi = boundaries[b + 1];
    band.valid = valid[b];
    if (band.valid && stats[b].size() >= 2) {
      band.report = run_detection(stats[b], make_bounds(), cfg);
      any_valid = true;
      if (band.report.verdict == Verdict::Nonstationary) any_diverged = true;
      if (band.report.verdict != Verdict::Stationary) all_converged = false;
    } else {
      band.valid = false;
    }
    out.bands.push_back(std::move(band));
  }
  if (!any_valid) {
    out.overall = Verdict::NotVerifiable;
  } else if (any_diverged) {
    out.overall = Verdict::Nonstationary;
  } else if (all_converged) {
    out.overall = Verdict::Stationary;
  } else {
    out.overall = Verdict::Inconclusive;
  }
  return out;
}

}  // namespace rbstat
