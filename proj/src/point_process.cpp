#include "rbstat/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rbstat/empirical.hpp"
#include "rbstat/partition.hpp"

namespace rbstat {

PointPattern gen_hpp(double lambda, const Window& window, std::uint64_t seed) {
  if (lambda < 0.0) throw input_error("gen_hpp: lambda must be >= 0");
  if (window.area() <= 0.0) throw input_error("gen_hpp: window must have positive area");
  std::mt19937_64 rng(seed);
  std::poisson_distribution<long> pois(lambda * window.area());
  const long n = lambda > 0.0 ? pois(rng) : 0;
  std::uniform_real_distribution<double> ux(window.x0, window.x1);
  std::uniform_real_distribution<double> uy(window.y0, window.y1);
  PointPattern out;
  out.window = window;
  out.points.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out.points.push_back({ux(rng), uy(rng)});
  return out;
}

PointPattern gen_ihpp(const IntensityFn& lambda_fn, double lambda_max, const Window& window,
                      std::uint64_t seed) {
  if (lambda_max < 0.0) throw input_error("gen_ihpp: lambda_max must be >= 0");
  std::mt19937_64 rng(seed);
  std::poisson_distribution<long> pois(lambda_max * window.area());
  const long n = lambda_max > 0.0 ? pois(rng) : 0;
  std::uniform_real_distribution<double> ux(window.x0, window.x1);
  std::uniform_real_distribution<double> uy(window.y0, window.y1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  PointPattern out;
  out.window = window;
  for (long i = 0; i < n; ++i) {
    const Point p{ux(rng), uy(rng)};
    const double lam = lambda_fn(p.x, p.y);
    if (lam > lambda_max) throw input_error("gen_ihpp: intensity exceeds dominating bound");
    if (u01(rng) * lambda_max < lam) out.points.push_back(p);
  }
  return out;
}

PointPattern gen_cluster(const ClusterParams& params, const Window& window, std::uint64_t seed) {
  if (params.kappa <= 0.0) throw input_error("gen_cluster: kappa must be > 0");
  std::mt19937_64 rng(seed);
  // Plus-sampling: parents on the window expanded by the cluster spread so
  // clusters straddling the boundary are not lost.
  const double buffer =
      params.kind == ClusterKind::thomas ? 4.0 * std::sqrt(params.sigma2) : params.r_disc;
  Window parent_window{window.x0 - buffer, window.x1 + buffer, window.y0 - buffer,
                       window.y1 + buffer};
  std::poisson_distribution<long> parent_count(params.kappa * parent_window.area());
  const long n_parents = parent_count(rng);
  std::uniform_real_distribution<double> ux(parent_window.x0, parent_window.x1);
  std::uniform_real_distribution<double> uy(parent_window.y0, parent_window.y1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, std::sqrt(params.sigma2));

  PointPattern out;
  out.window = window;
  for (long i = 0; i < n_parents; ++i) {
    const Point parent{ux(rng), uy(rng)};
    long n_off;
    if (params.kind == ClusterKind::neyman_scott) {
      n_off = params.m_fixed;
    } else {
      std::poisson_distribution<long> off_count(params.mu);
      n_off = off_count(rng);
    }
    for (long k = 0; k < n_off; ++k) {
      Point p;
      if (params.kind == ClusterKind::thomas) {
        p = {parent.x + gauss(rng), parent.y + gauss(rng)};
      } else {
        // Uniform in the disc of radius r_disc.
        const double rad = params.r_disc * std::sqrt(u01(rng));
        const double ang = 2.0 * std::numbers::pi * u01(rng);
        p = {parent.x + rad * std::cos(ang), parent.y + rad * std::sin(ang)};
      }
      if (window.contains(p)) out.points.push_back(p);
    }
  }
  return out;
}

PointPattern gen_lgcp(const IntensityFn& mean_fn, const CovKernel& kernel, int grid_res,
                      const Window& window, std::uint64_t seed) {
  if (grid_res < 16) throw input_error("gen_lgcp: grid_res must be >= 16");
  const int g = grid_res;
  std::vector<Point> centers;
  centers.reserve(static_cast<std::size_t>(g) * static_cast<std::size_t>(g));
  const double wx = (window.x1 - window.x0) / g;
  const double wy = (window.y1 - window.y0) / g;
  for (int iy = 0; iy < g; ++iy) {
    for (int ix = 0; ix < g; ++ix) {
      centers.push_back({window.x0 + (ix + 0.5) * wx, window.y0 + (iy + 0.5) * wy});
    }
  }
  const std::vector<double> field = gp_sample(kernel, centers, derive_seed(seed, 1));
  std::vector<double> intensity(field.size());
  double lambda_max = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    intensity[i] = std::exp(mean_fn(centers[i].x, centers[i].y) + field[i]);
    lambda_max = std::max(lambda_max, intensity[i]);
  }
  // Thin a dominating HPP against the piecewise-constant surface.
  std::mt19937_64 rng(derive_seed(seed, 2));
  std::poisson_distribution<long> pois(lambda_max * window.area());
  const long n = pois(rng);
  std::uniform_real_distribution<double> ux(window.x0, window.x1);
  std::uniform_real_distribution<double> uy(window.y0, window.y1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  PointPattern out;
  out.window = window;
  for (long i = 0; i < n; ++i) {
    const Point p{ux(rng), uy(rng)};
    int ix = static_cast<int>((p.x - window.x0) / wx);
    int iy = static_cast<int>((p.y - window.y0) / wy);
    ix = std::clamp(ix, 0, g - 1);
    iy = std::clamp(iy, 0, g - 1);
    const double lam = intensity[static_cast<std::size_t>(iy) * g + ix];
    if (u01(rng) * lambda_max < lam) out.points.push_back(p);
  }
  return out;
}

namespace {

// Uniform cell grid over the window for O(1) neighborhood counting in the
// Strauss sampler.
class NeighborGrid {
 public:
  NeighborGrid(const Window& w, double R)
      : w_(w), R_(R), nx_(std::max(1, static_cast<int>((w.x1 - w.x0) / R))),
        ny_(std::max(1, static_cast<int>((w.y1 - w.y0) / R))),
        cells_(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_)) {}

  int cell_of(const Point& p) const {
    int cx = std::clamp(static_cast<int>((p.x - w_.x0) / (w_.x1 - w_.x0) * nx_), 0, nx_ - 1);
    int cy = std::clamp(static_cast<int>((p.y - w_.y0) / (w_.y1 - w_.y0) * ny_), 0, ny_ - 1);
    return cy * nx_ + cx;
  }

  void insert(int idx, const Point& p) { cells_[static_cast<std::size_t>(cell_of(p))].push_back(idx); }

  void erase(int idx, const Point& p) {
    auto& cell = cells_[static_cast<std::size_t>(cell_of(p))];
    cell.erase(std::find(cell.begin(), cell.end(), idx));
  }

  // Number of points within distance R of p, excluding index `skip`.
  int count_close(const Point& p, const std::vector<Point>& pts, int skip) const {
    const int cx = cell_of(p) % nx_;
    const int cy = cell_of(p) / nx_;
    int count = 0;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int x = cx + dx, y = cy + dy;
        if (x < 0 || x >= nx_ || y < 0 || y >= ny_) continue;
        for (const int idx : cells_[static_cast<std::size_t>(y) * nx_ + x]) {
          if (idx == skip) continue;
          const double ddx = pts[static_cast<std::size_t>(idx)].x - p.x;
          const double ddy = pts[static_cast<std::size_t>(idx)].y - p.y;
          if (ddx * ddx + ddy * ddy <= R_ * R_) ++count;
        }
      }
    }
    return count;
  }

 private:
  Window w_;
  double R_;
  int nx_, ny_;
  std::vector<std::vector<int>> cells_;
};

}  // namespace

PointPattern gen_strauss(double beta, double gamma, double R, const Window& window,
                         std::uint64_t seed, long n_sweeps) {
  if (beta <= 0.0) throw input_error("gen_strauss: beta must be > 0");
  if (gamma <= 0.0 || gamma > 1.0) throw input_error("gen_strauss: need 0 < gamma <= 1");
  if (R <= 0.0) throw input_error("gen_strauss: R must be > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(window.x0, window.x1);
  std::uniform_real_distribution<double> uy(window.y0, window.y1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double area = window.area();

  std::vector<Point> pts;
  NeighborGrid grid(window, R);
  const double log_gamma = std::log(gamma);

  for (long sweep = 0; sweep < n_sweeps; ++sweep) {
    const double kind = u01(rng);
    if (kind < 1.0 / 3.0) {  // birth
      const Point p{ux(rng), uy(rng)};
      const int t = grid.count_close(p, pts, -1);
      const double log_ratio =
          std::log(beta * area / static_cast<double>(pts.size() + 1)) + t * log_gamma;
      if (std::log(u01(rng)) < log_ratio) {
        pts.push_back(p);
        grid.insert(static_cast<int>(pts.size()) - 1, p);
      }
    } else if (kind < 2.0 / 3.0) {  // death
      if (pts.empty()) continue;
      const int idx = static_cast<int>(u01(rng) * static_cast<double>(pts.size()));
      const Point p = pts[static_cast<std::size_t>(idx)];
      const int t = grid.count_close(p, pts, idx);
      const double log_ratio =
          std::log(static_cast<double>(pts.size()) / (beta * area)) - t * log_gamma;
      if (std::log(u01(rng)) < log_ratio) {
        grid.erase(idx, p);
        const int last = static_cast<int>(pts.size()) - 1;
        if (idx != last) {
          grid.erase(last, pts[static_cast<std::size_t>(last)]);
          pts[static_cast<std::size_t>(idx)] = pts[static_cast<std::size_t>(last)];
          grid.insert(idx, pts[static_cast<std::size_t>(idx)]);
        }
        pts.pop_back();
      }
    } else {  // move
      if (pts.empty()) continue;
      const int idx = static_cast<int>(u01(rng) * static_cast<double>(pts.size()));
      const Point old_p = pts[static_cast<std::size_t>(idx)];
      const Point new_p{ux(rng), uy(rng)};
      const int t_old = grid.count_close(old_p, pts, idx);
      const int t_new = grid.count_close(new_p, pts, idx);
      if (std::log(u01(rng)) < (t_new - t_old) * log_gamma) {
        grid.erase(idx, old_p);
        pts[static_cast<std::size_t>(idx)] = new_p;
        grid.insert(idx, new_p);
      }
    }
  }
  PointPattern out;
  out.window = window;
  out.points = std::move(pts);
  return out;
}

namespace {

// Shared partition step for the pattern detectors: K-means on the point
// coordinates with at least 3 points per cluster.
Partition pattern_partition(const PointPattern& pattern, int K, std::uint64_t kmeans_seed) {
  if (static_cast<std::size_t>(K) * 3 > pattern.points.size()) {
    throw input_error("pattern detectors: need at least 3K points");
  }
  if (K < 2) throw input_error("pattern detectors: need K >= 2");
  return kmeans_partition(pattern.points, K, 3, kmeans_seed);
}

std::vector<std::vector<Point>> cluster_points(const PointPattern& pattern, const Partition& part) {
  std::vector<std::vector<Point>> out(static_cast<std::size_t>(part.K));
  for (std::size_t i = 0; i < pattern.points.size(); ++i) {
    out[static_cast<std::size_t>(part.assignments[i] - 1)].push_back(pattern.points[i]);
  }
  return out;
}

}  // namespace

std::vector<double> csr_statistics(const PointPattern& pattern, int K, std::uint64_t kmeans_seed) {
  const Partition part = pattern_partition(pattern, K, kmeans_seed);
  const auto groups = cluster_points(pattern, part);
  const double lambda_hat = intensity_mle(pattern.points.size(), pattern.window.area());
  std::vector<double> stats(groups.size());
#pragma omp parallel for schedule(dynamic)
  for (long long c = 0; c < static_cast<long long>(groups.size()); ++c) {
    const auto d = nn_distances_serial(groups[static_cast<std::size_t>(c)]);
    stats[static_cast<std::size_t>(c)] = integrated_g_discrepancy(d, lambda_hat);
  }
  return stats;
}

DetectionReport detect_csr(const PointPattern& pattern, int K, BoundSequence bounds,
                           const VerdictConfig& cfg, std::uint64_t kmeans_seed) {
  return run_detection(csr_statistics(pattern, K, kmeans_seed), std::move(bounds), cfg);
}

std::vector<double> pp_stationarity_statistics(const PointPattern& pattern, int K,
                                               std::uint64_t kmeans_seed) {
  const Partition part = pattern_partition(pattern, K, kmeans_seed);
  const std::vector<double> marks = nn_distances(pattern.points);
  return strict_statistics(marks, part);
}

DetectionReport detect_pp_stationarity(const PointPattern& pattern, int K, BoundSequence bounds,
                                       const VerdictConfig& cfg, std::uint64_t kmeans_seed) {
  return run_detection(pp_stationarity_statistics(pattern, K, kmeans_seed), std::move(bounds), cfg);
}

std::vector<std::vector<double>> cluster_log_nn_distances(const PointPattern& pattern, int K,
                                                          std::uint64_t kmeans_seed) {
  const Partition part = pattern_partition(pattern, K, kmeans_seed);
  auto groups = cluster_points(pattern, part);
  std::vector<std::vector<double>> out(groups.size());
  for (std::size_t c = 0; c < groups.size(); ++c) {
    // Rows are matched across clusters by sorted-location order.
    auto& pts = groups[c];
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
      return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    const auto d = nn_distances_serial(pts);
    auto& logs = out[c];
    logs.reserve(d.size());
    for (const double v : d) logs.push_back(std::log(std::max(v, 1e-300)));
  }
  return out;
}

}  // namespace rbstat
