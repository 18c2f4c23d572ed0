#include "rbstat/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "rbstat/empirical.hpp"
#include "rbstat/generators.hpp"
#include "rbstat/partition.hpp"

namespace rbstat {

double ar1_mle(const std::vector<double>& series) {
  if (series.size() < 2) throw input_error("ar1_mle: need at least 2 observations");
  double num = 0.0, den = 0.0;
  for (std::size_t t = 1; t < series.size(); ++t) {
    num += series[t] * series[t - 1];
    den += series[t - 1] * series[t - 1];
  }
  if (den == 0.0) return 1.0;  // MLE does not exist; sentinel
  return num / den;
}

namespace {

// log log(j+1), with stage 1 clamped to the j = 2 value (log log 2 < 0).
double loglog_factor(int j) {
  const int jj = std::max(j, 2);
  return std::log(std::log(static_cast<double>(jj) + 1.0));
}

double adaptive_delta(double abs_rho) {
  if (abs_rho > 0.9985) return 0.001;
  if (abs_rho > 0.9955) return 0.01;
  return 0.05;
}

}  // namespace

double parametric_ar1_bound(int j, double c_tilde_j, double rho_hat) {
  if (j < 1) throw input_error("parametric_ar1_bound: stage must be >= 1");
  return c_tilde_j + 1.0e6 * (0.99999 - std::abs(rho_hat)) / loglog_factor(j);
}

std::pair<double, BoundState> adaptive_ar1_bound(BoundState state, int j, double c_tilde_j,
                                                 int y_prev) {
  if (j < 1) throw input_error("adaptive_ar1_bound: stage must be >= 1");
  const double abs_rho = std::abs(state.rho_hat);
  const double bound =
      c_tilde_j + state.C_hat * (0.99999 - abs_rho + state.eps_hat) / loglog_factor(j);
  const double delta = adaptive_delta(abs_rho);
  state.eps_hat += (y_prev == 1) ? delta : -delta;
  state.C_hat += 1.0;
  state.j = j + 1;
  return {bound, state};
}

std::pair<double, BoundState> nonparametric_bound(BoundState state, int j, int y_prev) {
  if (j < 1) throw input_error("nonparametric_bound: stage must be >= 1");
  if (j > 1) state.C_hat += (y_prev == 1) ? 0.05 : -0.05;
  const double bound = state.C_hat / std::log(static_cast<double>(j) + 1.0);
  state.j = j + 1;
  return {bound, state};
}

BoundSequence BoundSequence::nonparametric(double C1) {
  BoundSequence s;
  s.state_.policy = BoundPolicy::nonparametric;
  s.state_.C_hat = C1;
  return s;
}

BoundSequence BoundSequence::parametric_ar1(std::vector<double> benchmark_c, double rho_hat) {
  BoundSequence s;
  s.state_.policy = BoundPolicy::parametric_ar1;
  s.state_.benchmark_c = std::move(benchmark_c);
  s.state_.rho_hat = rho_hat;
  return s;
}

BoundSequence BoundSequence::adaptive_ar1(std::vector<double> benchmark_c, double rho_hat) {
  BoundSequence s;
  s.state_.policy = BoundPolicy::adaptive_ar1;
  s.state_.benchmark_c = std::move(benchmark_c);
  s.state_.rho_hat = rho_hat;
  s.state_.C_hat = 1.0;
  s.state_.eps_hat = 0.0;
  return s;
}

namespace {

double ctilde_at(const std::vector<double>& benchmark, int j) {
  if (benchmark.empty()) return 0.0;
  const std::size_t idx = std::min(static_cast<std::size_t>(j - 1), benchmark.size() - 1);
  return benchmark[idx];
}

}  // namespace

double BoundSequence::bound_for_stage(int j) {
  if (j != state_.j) throw input_error("BoundSequence: stages must be visited in order");
  switch (state_.policy) {
    case BoundPolicy::nonparametric: {
      auto [bound, next] = nonparametric_bound(state_, j, last_y_);
      state_ = next;
      return bound;
    }
    case BoundPolicy::parametric_ar1: {
      state_.j = j + 1;
      return parametric_ar1_bound(j, ctilde_at(state_.benchmark_c, j), state_.rho_hat);
    }
    case BoundPolicy::adaptive_ar1: {
      const double abs_rho = std::abs(state_.rho_hat);
      const double bound = ctilde_at(state_.benchmark_c, j) +
                           state_.C_hat * (0.99999 - abs_rho + state_.eps_hat) / loglog_factor(j);
      state_.j = j + 1;
      return bound;
    }
  }
  throw input_error("BoundSequence: unknown policy");
}

void BoundSequence::observe(int j, int y) {
  if (j != state_.j - 1) throw input_error("BoundSequence: observe out of order");
  last_y_ = y;
  if (state_.policy == BoundPolicy::adaptive_ar1) {
    const double delta = adaptive_delta(std::abs(state_.rho_hat));
    state_.eps_hat += (y == 1) ? delta : -delta;
    state_.C_hat += 1.0;
  }
}

std::vector<double> benchmark_ctilde(std::size_t n_block, std::size_t K, std::uint64_t seed) {
  const std::vector<double> series = gen_ar1(n_block * K, 0.99999, seed);
  const Partition part = sequential_blocks(series.size(), n_block);
  const SortedSample pooled = SortedSample::from_unsorted(series);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(part.K));
  for (const auto& idx : part.members()) {
    std::vector<double> block;
    block.reserve(idx.size());
    for (const int i : idx) block.push_back(series[static_cast<std::size_t>(i)]);
    out.push_back(supnorm_block_vs_pooled(SortedSample::from_unsorted(std::move(block)), pooled));
  }
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Stationary: return "Stationary";
    case Verdict::Nonstationary: return "Nonstationary";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::NotVerifiable: return "NotVerifiable";
  }
  return "Unknown";
}

std::vector<double> default_calibration_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 200; ++i) grid.push_back(0.01 * static_cast<double>(i));
  return grid;
}

double calibrate_C1(const std::function<Verdict(double)>& verdict_for_c1, CalibrationMode mode,
                    const std::vector<double>& grid,
                    const std::function<Verdict(double)>& verdict_for_c1_alt) {
  if (grid.empty()) throw calibration_error("calibrate_C1: empty grid");
  switch (mode) {
    case CalibrationMode::min_for_stationary:
      for (const double c1 : grid) {
        if (verdict_for_c1(c1) == Verdict::Stationary) return c1;
      }
      throw calibration_error("calibrate_C1: no grid value declares the benchmark stationary");
    case CalibrationMode::max_for_nonstationary:
      for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
        if (verdict_for_c1(*it) == Verdict::Nonstationary) return *it;
      }
      throw calibration_error("calibrate_C1: no grid value declares the benchmark nonstationary");
    case CalibrationMode::discriminating:
      if (!verdict_for_c1_alt) {
        throw calibration_error("calibrate_C1: discriminating mode needs both benchmarks");
      }
      for (const double c1 : grid) {
        if (verdict_for_c1(c1) == Verdict::Stationary &&
            verdict_for_c1_alt(c1) == Verdict::Nonstationary) {
          return c1;
        }
      }
      throw calibration_error("calibrate_C1: no grid value separates the benchmarks");
  }
  throw calibration_error("calibrate_C1: unknown mode");
}

}  // namespace rbstat
