#include "rbstat/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace rbstat {

std::vector<double> logistic_transform(const std::vector<double>& series) {
  std::vector<double> z(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double x = series[i];
    // exp(x) overflows past ~709; use the complementary form for large x.
    z[i] = x > 30.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
  }
  return z;
}

int bin_assign(double z, const std::vector<double>& breakpoints) {
  if (breakpoints.empty()) throw input_error("bin_assign: no breakpoints");
  if (z < 0.0 || z > breakpoints.back()) throw input_error("bin_assign: value outside bin range");
  if (z == 0.0) return 1;  // convention: zero maps to the first bin
  // Right-closed bins: unique m with breakpoints[m-2] < z <= breakpoints[m-1].
  const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), z);
  return static_cast<int>(it - breakpoints.begin()) + 1;
}

std::vector<double> make_breakpoints(const FrequencyConfig& cfg) {
  std::vector<double> bp;
  if (cfg.infinite) {
    // Geometric widths 2^-m; stop once the remaining tail is below machine
    // resolution and close the range with the multiplier itself.
    for (int m = 1; m <= 52; ++m) {
      bp.push_back(cfg.multiplier * (1.0 - std::exp2(-m)));
    }
    bp.push_back(cfg.multiplier);
  } else {
    if (cfg.M < 2) throw input_error("make_breakpoints: M must be >= 2");
    for (int m = 1; m <= cfg.M; ++m) {
      bp.push_back(cfg.multiplier * static_cast<double>(m) / static_cast<double>(cfg.M));
    }
  }
  return bp;
}

FrequencyTrajectories run_frequency_recursion(const std::vector<double>& series,
                                              const FrequencyConfig& cfg) {
  if (series.size() < 2) throw input_error("run_frequency_recursion: need at least 2 observations");
  if (cfg.r <= 0.0 || cfg.multiplier <= 0.0) {
    throw input_error("run_frequency_recursion: r and multiplier must be > 0");
  }
  std::vector<double> input = series;
  if (cfg.center) {
    double mean = 0.0;
    for (const double v : input) mean += v;
    mean /= static_cast<double>(input.size());
    for (double& v : input) v -= mean;
  }
  const std::vector<double> z = logistic_transform(input);
  const std::vector<double> bp = make_breakpoints(cfg);
  const int n_bins = static_cast<int>(bp.size());

  FrequencyTrajectories out;
  out.stride = std::max<std::size_t>(1, series.size() / 200);

  DirichletRecursionState finite(cfg.infinite ? 2 : cfg.M);
  DpRecursionState dp;
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double scaled = cfg.multiplier * std::pow(z[j], cfg.r);
    const int bin = bin_assign(std::min(scaled, bp.back()), bp);
    if (cfg.infinite) {
      dp = dp_update(dp, bin);
    } else {
      finite = dirichlet_update(finite, bin);
    }
    if ((j + 1) % out.stride == 0 || j + 1 == z.size()) {
      std::vector<double> means(static_cast<std::size_t>(n_bins));
      for (int m = 1; m <= n_bins; ++m) {
        means[static_cast<std::size_t>(m - 1)] =
            cfg.infinite ? dp_mean_var(dp, m).mean : dirichlet_mean_var(finite, m).mean;
      }
      out.mean_history.push_back(std::move(means));
    }
  }
  out.final_means.resize(static_cast<std::size_t>(n_bins));
  out.final_variances.resize(static_cast<std::size_t>(n_bins));
  for (int m = 1; m <= n_bins; ++m) {
    const MeanVar mv = cfg.infinite ? dp_mean_var(dp, m) : dirichlet_mean_var(finite, m);
    out.final_means[static_cast<std::size_t>(m - 1)] = mv.mean;
    out.final_variances[static_cast<std::size_t>(m - 1)] = mv.variance;
  }
  return out;
}

std::vector<FrequencyEstimate> extract_frequencies(const std::vector<double>& final_means,
                                                   double epsilon_group) {
  std::vector<FrequencyEstimate> out;
  FrequencyEstimate current;
  // Bin 1 absorbs the non-oscillating mass and is discarded.
  for (std::size_t i = 1; i < final_means.size(); ++i) {
    if (final_means[i] > epsilon_group) {
      current.frequency += final_means[i];
      current.bins.push_back(static_cast<int>(i) + 1);
    } else if (!current.bins.empty()) {
      out.push_back(std::move(current));
      current = {};
    }
  }
  if (!current.bins.empty()) out.push_back(std::move(current));
  return out;
}

std::vector<double> gen_single_freq(std::size_t T, std::uint64_t seed, double sigma) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  std::vector<double> x(T);
  constexpr double omega = 1.0 / 50.0, A = 2.0, phi = 0.6 * std::numbers::pi;
  for (std::size_t i = 0; i < T; ++i) {
    const double t = static_cast<double>(i + 1);
    x[i] = A * std::cos(2.0 * std::numbers::pi * omega * t + phi) + gauss(rng);
  }
  return x;
}

std::vector<double> gen_mult_freq(std::size_t T, std::uint64_t /*seed*/) {
  std::vector<double> x(T);
  constexpr double tau = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < T; ++i) {
    const double t = static_cast<double>(i + 1);
    x[i] = 2.0 * std::cos(tau * t * 0.06) + 3.0 * std::sin(tau * t * 0.06) +
           4.0 * std::cos(tau * t * 0.10) + 5.0 * std::sin(tau * t * 0.10) +
           6.0 * std::cos(tau * t * 0.40) + 7.0 * std::sin(tau * t * 0.40);
  }
  return x;
}

}  // namespace rbstat
