#include "rbstat/tmcmc.hpp"

#include <cmath>
#include <limits>

#include "rbstat/partition.hpp"

namespace rbstat {

bool tmcmc_step(std::vector<double>& x, const LogTarget& log_target, const TmcmcConfig& cfg,
                std::mt19937_64& rng) {
  const int d = static_cast<int>(x.size());
  if (d < 1) throw input_error("tmcmc_step: empty state");
  if (cfg.ell <= 0.0) throw input_error("tmcmc_step: ell must be > 0");

  std::normal_distribution<double> gauss(0.0, cfg.ell / std::sqrt(static_cast<double>(d)));
  // eta ~ N(0, ell^2/d) truncated to eta > 0: rejection from the full normal
  // (accept the positive half; exact for a mean-zero proposal).
  double eta;
  do {
    eta = gauss(rng);
  } while (eta <= 0.0);

  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<double> proposal(x);
  for (int j = 0; j < d; ++j) {
    const double sign = (u01(rng) < 0.5) ? 1.0 : -1.0;
    const double aj = cfg.a.empty() ? 1.0 : cfg.a[static_cast<std::size_t>(j)];
    proposal[static_cast<std::size_t>(j)] += sign * aj * eta;
  }

  const double lp_old = log_target(x);
  const double lp_new = log_target(proposal);
  const double u = u01(rng);
  bool accept = false;
  if (std::isfinite(lp_new)) {
    accept = (lp_new >= lp_old) || (std::log(u) < lp_new - lp_old);
  }
  if (accept) x = std::move(proposal);
  return accept;
}

TmcmcRun tmcmc_run(std::vector<double> init, const LogTarget& log_target, const TmcmcConfig& cfg,
                   long n_iter) {
  if (n_iter < 1) throw input_error("tmcmc_run: n_iter must be >= 1");
  std::mt19937_64 rng(cfg.seed);
  TmcmcRun run;
  run.first_coordinate.reserve(static_cast<std::size_t>(n_iter));
  for (long i = 0; i < n_iter; ++i) {
    if (tmcmc_step(init, log_target, cfg, rng)) run.accepted += 1;
    run.first_coordinate.push_back(init[0]);
  }
  run.iterations = n_iter;
  run.final_state = std::move(init);
  return run;
}

DetectionReport diagnose_convergence(const std::vector<double>& chain, std::size_t n_block,
                                     BoundSequence bounds, const VerdictConfig& cfg) {
  if (chain.size() < 2 * n_block) {
    throw input_error("diagnose_convergence: chain shorter than two blocks");
  }
  const Partition part = sequential_blocks(chain.size(), n_block);
  DetectionReport report = detect_strict(chain, part, std::move(bounds), cfg);
  if (part.K < 5) report.verdict = Verdict::Inconclusive;  // too few stages for the tail rule
  return report;
}

LogTarget std_normal_product(int d) {
  return [d](const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != d) return -std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (const double v : x) s += v * v;
    return -0.5 * s;
  };
}

LogTarget normal_mixture(double mu2) {
  return [mu2](const std::vector<double>& x) {
    const double v = x[0];
    const double a = -0.5 * v * v;
    const double b = -0.5 * (v - mu2) * (v - mu2);
    const double hi = std::max(a, b);
    return hi + std::log(0.5 * std::exp(a - hi) + 0.5 * std::exp(b - hi));
  };
}

}  // namespace rbstat
