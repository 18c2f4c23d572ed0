#ifndef RBSTAT_BOUNDS_HPP
#define RBSTAT_BOUNDS_HPP

// Threshold sequences {c_j} for the detectors.  Three policies:
//
//  * parametric AR(1)   — c_j = ctilde_j + 1e6 (0.99999 - |rho_hat|) / log log(j+1)
//  * adaptive AR(1)     — c_j = ctilde_j + C_j (0.99999 - |rho_hat| + eps_j) / log log(j+1)
//                         with C_j and eps_j updated from the previous stage's
//                         indicator
//  * nonparametric      — c_j = C_j / log(j+1), C_j stepping by +-0.05
//
// The log log(j+1) factor is negative for j = 1, so the AR(1) policies are
// defined for j >= 2 and stage 1 reuses the j = 2 value.

#include <cstdint>
#include <functional>
#include <vector>

#include "rbstat/common.hpp"

namespace rbstat {

enum class BoundPolicy { parametric_ar1, adaptive_ar1, nonparametric };

struct BoundState {
  BoundPolicy policy = BoundPolicy::nonparametric;
  int j = 1;              // next stage to be issued
  double C_hat = 1.0;     // C_j
  double eps_hat = 0.0;   // eps_j (adaptive policy)
  double rho_hat = 0.0;   // plug-in AR(1) MLE (AR(1) policies)
  std::vector<double> benchmark_c;  // per-stage ctilde_j (AR(1) policies)
};

// Conditional least-squares AR(1) coefficient estimate
// sum x_t x_{t-1} / sum x_{t-1}^2; sentinel 1 when the denominator is zero.
double ar1_mle(const std::vector<double>& series);

// c_j for the parametric AR(1) policy (stateless).
double parametric_ar1_bound(int j, double c_tilde_j, double rho_hat);

// c_j for the adaptive AR(1) policy; consumes the previous stage's indicator
// and returns the bound together with the updated state (C and eps advance).
std::pair<double, BoundState> adaptive_ar1_bound(BoundState state, int j, double c_tilde_j,
                                                 int y_prev);

// c_j for the nonparametric policy; y_prev < 0 means "no previous stage"
// (j = 1).  Returns the bound and the state advanced past stage j.
std::pair<double, BoundState> nonparametric_bound(BoundState state, int j, int y_prev);

// Stage-ordered driver wrapping a policy: ask for the stage-j bound, then
// report the stage-j indicator before moving on.  Adaptive state makes this
// inherently serial.
class BoundSequence {
 public:
  static BoundSequence nonparametric(double C1);
  static BoundSequence parametric_ar1(std::vector<double> benchmark_c, double rho_hat);
  static BoundSequence adaptive_ar1(std::vector<double> benchmark_c, double rho_hat);

  double bound_for_stage(int j);
  void observe(int j, int y);
  BoundPolicy policy() const { return state_.policy; }

 private:
  BoundState state_;
  int last_y_ = -1;  // indicator of the previous stage; -1 before stage 1
};


// Benchmark ctilde_j sequence for the AR(1) policies: the sup-norm statistic
// trajectory of a freshly simulated AR(1) series with rho = 0.99999, split
// into K blocks of n.
std::vector<double> benchmark_ctilde(std::size_t n_block, std::size_t K, std::uint64_t seed);

// Verdict labels shared by all detectors.
enum class Verdict { Stationary, Nonstationary, Inconclusive, NotVerifiable };

const char* to_string(Verdict v);

enum class CalibrationMode { min_for_stationary, max_for_nonstationary, discriminating };

// Scan the grid of candidate C1 values, running `verdict_for_c1` for each
// (and `verdict_for_c1_alt` for the nonstationary benchmark in discriminating
// mode).  Returns the selected C1 or throws calibration_error.
double calibrate_C1(const std::function<Verdict(double)>& verdict_for_c1, CalibrationMode mode,
                    const std::vector<double>& grid,
                    const std::function<Verdict(double)>& verdict_for_c1_alt = {});

// Default grid 0.01..2.00 step 0.01.
std::vector<double> default_calibration_grid();

}  // namespace rbstat

#endif  // RBSTAT_BOUNDS_HPP
