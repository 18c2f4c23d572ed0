#ifndef RBSTAT_DETECT_HPP
#define RBSTAT_DETECT_HPP

// Detection orchestration: partition -> per-block statistic -> bound ->
// indicator -> Beta recursion -> verdict, for strict stationarity and for
// covariance stationarity over distance bands.

#include <functional>
#include <vector>

#include "rbstat/bounds.hpp"
#include "rbstat/common.hpp"
#include "rbstat/partition.hpp"

namespace rbstat {

struct VerdictConfig {
  double theta_hi = 0.8;
  double theta_lo = 0.2;
  double tail_fraction = 0.2;
};

struct StageRecord {
  int j = 0;
  double s = 0.0;       // statistic
  double c = 0.0;       // bound
  int y = 0;            // indicator s <= c
  double post_mean = 0.0;
  double post_var = 0.0;
};

struct DetectionReport {
  std::vector<StageRecord> stages;
  Verdict verdict = Verdict::Inconclusive;
};

// Verdict from the posterior-mean trajectory: mean over the final
// tail_fraction of stages >= theta_hi -> Stationary, <= theta_lo ->
// Nonstationary, otherwise Inconclusive.
Verdict verdict(const std::vector<double>& posterior_means, const VerdictConfig& cfg);

// Run the Beta recursion over a precomputed statistic sequence.  This is the
// common backbone of every detector and of C1 calibration.
DetectionReport run_detection(const std::vector<double>& statistics, BoundSequence bounds,
                              const VerdictConfig& cfg);

// Strict stationarity: per-block sup-norm statistic against the pooled ECDF,
// blocks visited in cluster-id order.
DetectionReport detect_strict(const std::vector<double>& values, const Partition& partition,
                              BoundSequence bounds, const VerdictConfig& cfg = {});

// Per-block sup-norm statistics only (no recursion); used by calibration.
std::vector<double> strict_statistics(const std::vector<double>& values,
                                      const Partition& partition);

struct BandReport {
  double h_lo = 0.0;
  double h_hi = 0.0;
  bool valid = false;
  DetectionReport report;  // empty when the band is invalid
};

struct CovarianceReport {
  std::vector<BandReport> bands;
  Verdict overall = Verdict::NotVerifiable;
};

// Covariance stationarity: within each valid distance band, per-cluster
// correlation versus the pair-count-weighted pooled correlation.  Overall
// verdict: Nonstationary if any band diverges; Stationary only if every
// valid band converges; NotVerifiable if no band is valid.
CovarianceReport detect_covariance(const std::vector<double>& values,
                                   const std::vector<Point>& locations,
                                   const Partition& partition,
                                   const std::vector<double>& boundaries,
                                   const std::function<BoundSequence()>& make_bounds,
                                   const VerdictConfig& cfg = {});

// Per-band statistic sequences only; used by calibration.
std::vector<std::vector<double>> covariance_statistics(const std::vector<double>& values,
                                                       const std::vector<Point>& locations,
                                                       const Partition& partition,
                                                       const std::vector<double>& boundaries,
                                                       std::vector<bool>* valid_out = nullptr);

}  // namespace rbstat

#endif  // RBSTAT_DETECT_HPP
