#ifndef RBSTAT_DP_INDEPENDENCE_HPP
#define RBSTAT_DP_INDEPENDENCE_HPP

// Dirichlet-process-smoothed joint/conditional/marginal distribution
// functions over per-cluster log nearest-neighbor distances, and the
// recursive mutual-independence detector that characterizes Poisson point
// processes.

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "rbstat/bounds.hpp"
#include "rbstat/common.hpp"
#include "rbstat/detect.hpp"

namespace rbstat {

struct DpJointModel {
  double alpha = 1.0;            // DP strength parameter
  int K = 0;                     // number of clusters (columns)
  std::size_t n = 0;             // rows after truncation to the common minimum
  Eigen::MatrixXd data;          // n x K matched log-distances
  Eigen::VectorXd base_mean;     // empirical column means
  Eigen::MatrixXd base_cov;      // empirical covariance (jittered to PSD)
  Eigen::MatrixXd g0_draws;      // fixed Monte Carlo sample from G0 (n_mc x K)
  std::vector<double> cached_t;  // greedy maximizers t_1..t_{j-1}
};

// Build the model: truncate every cluster to the common minimum length
// (rows matched by within-cluster sorted-location order upstream), compute
// the empirical base mean/covariance, and freeze a 10^4-draw multivariate
// normal Monte Carlo sample for G0 prefix probabilities.
DpJointModel build_dp_model(const std::vector<std::vector<double>>& clusters, double alpha,
                            std::uint64_t seed);

// Posterior-mean joint CDF over the first j coordinates:
//   (alpha G0(X_1 <= t_1, ..., X_j <= t_j) + #rows within bounds) / (alpha + n)
double dp_joint_cdf(const DpJointModel& model, const std::vector<double>& t, int j);

// Conditional CDF of X_j at t[j-1] given X_1 <= t_1, ..., X_{j-1} <= t_{j-1}:
// ratio of consecutive prefix joint CDFs.
double dp_conditional_cdf(const DpJointModel& model, const std::vector<double>& t);

// Marginal CDF of column j with the univariate normal G0 component.
double dp_marginal_cdf(const DpJointModel& model, int j, double t);

// Greedy sup of |conditional - marginal| at prefix length j: stage 2 scans
// the full t1 x t2 grid of data values and caches both maximizers; later
// stages fix the cached maximizers and scan t_j only.  Returns (sup, argmax).
std::pair<double, double> greedy_sup_difference(DpJointModel& model, int j);

struct IndependenceReport {
  DetectionReport detection;
  int stages_run = 0;      // prefixes actually evaluated (numerical guard may truncate)
  bool truncated = false;
};

// Stage j in 2..K: statistic = greedy sup at prefix j; indicator and Beta
// recursion as in the stationarity detectors.  Stationary-analog verdict
// means "mutually independent => Poisson-compatible".
IndependenceReport detect_mutual_independence(const std::vector<std::vector<double>>& clusters,
                                              double alpha, BoundSequence bounds,
                                              const VerdictConfig& cfg = {},
                                              std::uint64_t seed = 0);

}  // namespace rbstat

#endif  // RBSTAT_DP_INDEPENDENCE_HPP
