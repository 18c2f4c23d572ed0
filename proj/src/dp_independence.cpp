#include "rbstat/dp_independence.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <random>

namespace rbstat {

namespace {

constexpr int kMonteCarloDraws = 10000;
constexpr double kPrefixGuard = 1e-6;

// Minimum number of data rows a candidate conditioning event must retain
// during maximizer scanning.  Conditioning on an event supported by almost
// no observations makes the conditional CDF pure Monte Carlo noise and lets
// the greedy chain die after a couple of stages; requiring a little mass
// keeps the sup statistic meaningful without changing its definition.
long min_support_rows(std::size_t n) {
  return std::max<long>(5, static_cast<long>(n / 10));
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Count of `values[i] <= t` among indices where mask[i] is true.
long masked_count_leq(const Eigen::MatrixXd& m, const std::vector<char>& mask, int col, double t) {
  long count = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (mask[static_cast<std::size_t>(r)] && m(r, col) <= t) ++count;
  }
  return count;
}

}  // namespace

DpJointModel build_dp_model(const std::vector<std::vector<double>>& clusters, double alpha,
                            std::uint64_t seed) {
  if (clusters.size() < 2) throw input_error("build_dp_model: need at least 2 clusters");
  if (alpha <= 0.0) throw input_error("build_dp_model: alpha must be > 0");
  std::size_t n = clusters.front().size();
  for (const auto& c : clusters) {
    if (c.size() < 2) throw input_error("build_dp_model: every cluster needs >= 2 distances");
    n = std::min(n, c.size());
  }
  const int K = static_cast<int>(clusters.size());

  DpJointModel model;
  model.alpha = alpha;
  model.K = K;
  model.n = n;
  model.data.resize(static_cast<Eigen::Index>(n), K);
  for (int c = 0; c < K; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      model.data(static_cast<Eigen::Index>(r), c) = clusters[static_cast<std::size_t>(c)][r];
    }
  }
  model.base_mean = model.data.colwise().mean();
  const Eigen::MatrixXd centered = model.data.rowwise() - model.base_mean.transpose();
  model.base_cov = centered.transpose() * centered / static_cast<double>(n);

  // Jitter ladder until the base covariance factorizes.
  Eigen::MatrixXd cov = model.base_cov;
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  for (double jitter = 1e-10; llt.info() != Eigen::Success && jitter <= 1e-2; jitter *= 10.0) {
    cov = model.base_cov;
    cov.diagonal().array() += jitter;
    llt.compute(cov);
  }
  if (llt.info() != Eigen::Success) {
    throw singular_kernel_error("build_dp_model: base covariance not factorizable");
  }
  model.base_cov = cov;
  const Eigen::MatrixXd L = llt.matrixL();

  // One fixed Monte Carlo sample from G0, reused for every prefix
  // probability, keeps all CDF evaluations deterministic.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  model.g0_draws.resize(kMonteCarloDraws, K);
  Eigen::VectorXd z(K);
  for (int i = 0; i < kMonteCarloDraws; ++i) {
    for (int c = 0; c < K; ++c) z[c] = gauss(rng);
    model.g0_draws.row(i) = (model.base_mean + L * z).transpose();
  }
  return model;
}

double dp_joint_cdf(const DpJointModel& model, const std::vector<double>& t, int j) {
  if (j < 1 || j > model.K) throw input_error("dp_joint_cdf: prefix length out of range");
  if (static_cast<int>(t.size()) < j) throw input_error("dp_joint_cdf: too few thresholds");
  long g0_count = 0;
  for (Eigen::Index r = 0; r < model.g0_draws.rows(); ++r) {
    bool ok = true;
    for (int c = 0; c < j && ok; ++c) ok = model.g0_draws(r, c) <= t[static_cast<std::size_t>(c)];
    if (ok) ++g0_count;
  }
  long data_count = 0;
  for (Eigen::Index r = 0; r < model.data.rows(); ++r) {
    bool ok = true;
    for (int c = 0; c < j && ok; ++c) ok = model.data(r, c) <= t[static_cast<std::size_t>(c)];
    if (ok) ++data_count;
  }
  const double g0_prob = static_cast<double>(g0_count) / static_cast<double>(model.g0_draws.rows());
  return (model.alpha * g0_prob + static_cast<double>(data_count)) /
         (model.alpha + static_cast<double>(model.n));
}

double dp_conditional_cdf(const DpJointModel& model, const std::vector<double>& t) {
  const int j = static_cast<int>(t.size());
  if (j < 1) throw input_error("dp_conditional_cdf: empty threshold vector");
  const double joint_j = dp_joint_cdf(model, t, j);
  if (j == 1) return joint_j;
  const double joint_prev = dp_joint_cdf(model, t, j - 1);
  if (joint_prev <= 0.0) throw input_error("dp_conditional_cdf: conditioning event has mass 0");
  return joint_j / joint_prev;
}

double dp_marginal_cdf(const DpJointModel& model, int j, double t) {
  if (j < 1 || j > model.K) throw input_error("dp_marginal_cdf: column out of range");
  const double mu = model.base_mean(j - 1);
  const double sd = std::sqrt(model.base_cov(j - 1, j - 1));
  const double g0 = sd > 0.0 ? normal_cdf((t - mu) / sd) : (t >= mu ? 1.0 : 0.0);
  long count = 0;
  for (Eigen::Index r = 0; r < model.data.rows(); ++r) {
    if (model.data(r, j - 1) <= t) ++count;
  }
  return (model.alpha * g0 + static_cast<double>(count)) /
         (model.alpha + static_cast<double>(model.n));
}

namespace {

// Sorted distinct scan values of a data column.
std::vector<double> column_values(const Eigen::MatrixXd& data, int col) {
  std::vector<double> v(static_cast<std::size_t>(data.rows()));
  for (Eigen::Index r = 0; r < data.rows(); ++r) v[static_cast<std::size_t>(r)] = data(r, col);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::pair<double, double> greedy_sup_difference(DpJointModel& model, int j) {
  if (j < 2 || j > model.K) throw input_error("greedy_sup_difference: need 2 <= j <= K");
  const double denom_total = model.alpha + static_cast<double>(model.n);
  const double n_mc = static_cast<double>(model.g0_draws.rows());

  if (j == 2) {
    model.cached_t.clear();
    const auto t1s = column_values(model.data, 0);
    const auto t2s = column_values(model.data, 1);
    double best = -1.0, best_t1 = t1s.front(), best_t2 = t2s.front();
    for (const double t1 : t1s) {
      std::vector<char> data_mask(model.n), g0_mask(static_cast<std::size_t>(model.g0_draws.rows()));
      long data_m = 0, g0_m = 0;
      for (Eigen::Index r = 0; r < model.data.rows(); ++r) {
        data_mask[static_cast<std::size_t>(r)] = model.data(r, 0) <= t1;
        data_m += data_mask[static_cast<std::size_t>(r)];
      }
      for (Eigen::Index r = 0; r < model.g0_draws.rows(); ++r) {
        g0_mask[static_cast<std::size_t>(r)] = model.g0_draws(r, 0) <= t1;
        g0_m += g0_mask[static_cast<std::size_t>(r)];
      }
      const double joint1 = (model.alpha * g0_m / n_mc + data_m) / denom_total;
      if (joint1 < kPrefixGuard || data_m < min_support_rows(model.n)) continue;
      for (const double t2 : t2s) {
        const long d2 = masked_count_leq(model.data, data_mask, 1, t2);
        if (d2 < min_support_rows(model.n)) continue;
        long g2 = 0;
        for (Eigen::Index r = 0; r < model.g0_draws.rows(); ++r) {
          if (g0_mask[static_cast<std::size_t>(r)] && model.g0_draws(r, 1) <= t2) ++g2;
        }
        const double joint2 = (model.alpha * g2 / n_mc + d2) / denom_total;
        const double gap = std::abs(joint2 / joint1 - dp_marginal_cdf(model, 2, t2));
        if (gap > best) {
          best = gap;
          best_t1 = t1;
          best_t2 = t2;
        }
      }
    }
    if (best < 0.0) throw input_error("greedy_sup_difference: all conditioning events degenerate");
    model.cached_t = {best_t1, best_t2};
    return {best, best_t2};
  }

  if (static_cast<int>(model.cached_t.size()) != j - 1) {
    throw input_error("greedy_sup_difference: missing cached maximizers for earlier stages");
  }
  // Fix t_1..t_{j-1} at the cached maximizers; scan t_j only.
  std::vector<char> data_mask(model.n, 1), g0_mask(static_cast<std::size_t>(model.g0_draws.rows()), 1);
  long data_m = 0, g0_m = 0;
  for (Eigen::Index r = 0; r < model.data.rows(); ++r) {
    bool ok = true;
    for (int c = 0; c < j - 1 && ok; ++c) {
      ok = model.data(r, c) <= model.cached_t[static_cast<std::size_t>(c)];
    }
    data_mask[static_cast<std::size_t>(r)] = ok;
    data_m += ok;
  }
  for (Eigen::Index r = 0; r < model.g0_draws.rows(); ++r) {
    bool ok = true;
    for (int c = 0; c < j - 1 && ok; ++c) {
      ok = model.g0_draws(r, c) <= model.cached_t[static_cast<std::size_t>(c)];
    }
    g0_mask[static_cast<std::size_t>(r)] = ok;
    g0_m += ok;
  }
  const double joint_prev = (model.alpha * g0_m / n_mc + data_m) / denom_total;
  if (joint_prev < kPrefixGuard) {
    throw input_error("greedy_sup_difference: prefix joint CDF below stability guard");
  }
  const auto tjs = column_values(model.data, j - 1);
  double best = -1.0, best_tj = tjs.front();
  for (const double tj : tjs) {
    const long dj = masked_count_leq(model.data, data_mask, j - 1, tj);
    if (dj < min_support_rows(model.n)) continue;
    long gj = 0;
    for (Eigen::Index r = 0; r < model.g0_draws.rows(); ++r) {
      if (g0_mask[static_cast<std::size_t>(r)] && model.g0_draws(r, j - 1) <= tj) ++gj;
    }
    const double joint_j = (model.alpha * gj / n_mc + dj) / denom_total;
    const double gap = std::abs(joint_j / joint_prev - dp_marginal_cdf(model, j, tj));
    if (gap > best) {
      best = gap;
      best_tj = tj;
    }
  }
  model.cached_t.push_back(best_tj);
  return {best, best_tj};
}

IndependenceReport detect_mutual_independence(const std::vector<std::vector<double>>& clusters,
                                              double alpha, BoundSequence bounds,
                                              const VerdictConfig& cfg, std::uint64_t seed) {
  if (clusters.size() < 3) throw input_error("detect_mutual_independence: need >= 3 clusters");
  DpJointModel model = build_dp_model(clusters, alpha, seed);

  IndependenceReport out;
  std::vector<double> stats;
  for (int j = 2; j <= model.K; ++j) {
    try {
      stats.push_back(greedy_sup_difference(model, j).first);
    } catch (const input_error&) {
      out.truncated = true;  // numerical guard tripped; keep the stages so far
      break;
    }
  }
  out.stages_run = static_cast<int>(stats.size());
  if (stats.empty()) throw input_error("detect_mutual_independence: no evaluable stages");
  out.detection = run_detection(stats, std::move(bounds), cfg);
  return out;
}

}  // namespace rbstat
