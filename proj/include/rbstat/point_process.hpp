#ifndef RBSTAT_POINT_PROCESS_HPP
#define RBSTAT_POINT_PROCESS_HPP

// Planar point-pattern generators (HPP, IHPP, cluster processes, LGCP,
// Strauss) and the pattern-level detectors: complete spatial randomness,
// stationarity of the nearest-neighbor marks, and the CSR statistic pipeline.

#include <cstdint>
#include <functional>
#include <vector>

#include "rbstat/bounds.hpp"
#include "rbstat/common.hpp"
#include "rbstat/detect.hpp"
#include "rbstat/generators.hpp"

namespace rbstat {

struct Window {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  double area() const { return (x1 - x0) * (y1 - y0); }
  bool contains(const Point& p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
};

struct PointPattern {
  Window window;
  std::vector<Point> points;
};

using IntensityFn = std::function<double(double, double)>;

// Homogeneous Poisson process: n ~ Poisson(lambda |W|), points iid uniform.
PointPattern gen_hpp(double lambda, const Window& window, std::uint64_t seed);

// Inhomogeneous Poisson process by thinning a dominating HPP(lambda_max).
PointPattern gen_ihpp(const IntensityFn& lambda_fn, double lambda_max, const Window& window,
                      std::uint64_t seed);

enum class ClusterKind { matern, thomas, neyman_scott };

// Poisson cluster processes.  Parents are HPP(kappa) on the window expanded
// by the cluster radius (4 sigma for Thomas).  Offspring counts are
// Poisson(mu) for matern/thomas and exactly m_fixed for neyman_scott;
// placement is uniform-in-disc (radius r) or N(parent, sigma2 I).
struct ClusterParams {
  ClusterKind kind = ClusterKind::matern;
  double kappa = 1.0;    // parent intensity
  double mu = 1.0;       // mean offspring count (matern/thomas)
  int m_fixed = 1;       // offspring count (neyman_scott)
  double r_disc = 0.1;   // disc radius (matern/neyman_scott)
  double sigma2 = 0.01;  // offspring variance (thomas)
};

PointPattern gen_cluster(const ClusterParams& params, const Window& window, std::uint64_t seed);

// Log-Gaussian Cox process on a grid_res x grid_res piecewise-constant
// intensity surface: log Lambda = mean_fn + GP(kernel), thinning against the
// grid maximum.
PointPattern gen_lgcp(const IntensityFn& mean_fn, const CovKernel& kernel, int grid_res,
                      const Window& window, std::uint64_t seed);

// Strauss process with density beta^n gamma^{s_R} via a birth/death/move
// Metropolis-Hastings chain of n_sweeps proposals.
PointPattern gen_strauss(double beta, double gamma, double R, const Window& window,
                         std::uint64_t seed, long n_sweeps = 100000);

// CSR detection: K-means clusters of the points; per cluster, the mean
// absolute gap between the within-cluster nearest-neighbor ECDF and the
// theoretical CSR G with the global intensity MLE.
DetectionReport detect_csr(const PointPattern& pattern, int K, BoundSequence bounds,
                           const VerdictConfig& cfg = {}, std::uint64_t kmeans_seed = 0);

// Per-cluster CSR statistics only (no recursion); used by calibration.
std::vector<double> csr_statistics(const PointPattern& pattern, int K,
                                   std::uint64_t kmeans_seed = 0);

// Stationarity of the pattern: strict-stationarity detection on the
// nearest-neighbor distance marks under the K-means partition.
DetectionReport detect_pp_stationarity(const PointPattern& pattern, int K, BoundSequence bounds,
                                       const VerdictConfig& cfg = {},
                                       std::uint64_t kmeans_seed = 0);

std::vector<double> pp_stationarity_statistics(const PointPattern& pattern, int K,
                                               std::uint64_t kmeans_seed = 0);

// Within-cluster log nearest-neighbor distances, one sequence per cluster in
// cluster-id order; input to the mutual-independence detector.
std::vector<std::vector<double>> cluster_log_nn_distances(const PointPattern& pattern, int K,
                                                          std::uint64_t kmeans_seed = 0);

}  // namespace rbstat

#endif  // RBSTAT_POINT_PROCESS_HPP
