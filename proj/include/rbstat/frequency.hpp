#ifndef RBSTAT_FREQUENCY_HPP
#define RBSTAT_FREQUENCY_HPP

// Oscillation-frequency recovery: logistic transform, power scaling,
// interval binning, and a Dirichlet (finite M) or Dirichlet-process
// (countable bins, geometric widths) recursion over the bin labels.  The
// nonzero limiting bin proportions are the oscillation frequencies.

#include <vector>

#include "rbstat/common.hpp"
#include "rbstat/recursive_bayes.hpp"

namespace rbstat {

struct FrequencyConfig {
  double r = 1.0;              // power exponent applied to the logistic values
  double multiplier = 1.0;     // post-power scale; breakpoints span [0, multiplier]
  int M = 50;                  // bin count (ignored when infinite = true)
  bool infinite = false;       // DP mode with geometric breakpoints 1 - 2^-m
  double epsilon_group = 0.005;  // grouping threshold for extraction
  bool center = false;         // subtract the series mean before transforming
};

// Z_j = exp(X_j) / (1 + exp(X_j)), overflow-safe.
std::vector<double> logistic_transform(const std::vector<double>& series);

// Right-closed binning: the unique m with breakpoints[m-1] < z <= breakpoints[m]
// (breakpoints[0] = 0 is implicit; z = 0 maps to bin 1).
int bin_assign(double z, const std::vector<double>& breakpoints);

// Breakpoints for the configuration: multiplier * m / M for finite M;
// multiplier * (1 - 2^-m) truncated at machine resolution for infinite mode.
std::vector<double> make_breakpoints(const FrequencyConfig& cfg);

struct FrequencyTrajectories {
  std::vector<double> final_means;      // per bin (1-based bin = index + 1)
  std::vector<double> final_variances;
  // Thinned per-bin posterior-mean trajectory (every `stride` stages).
  std::size_t stride = 1;
  std::vector<std::vector<double>> mean_history;  // [snapshot][bin]
};

// Stage j consumes multiplier * Z_j^r, bins it, and updates the Dirichlet or
// DP recursion.
FrequencyTrajectories run_frequency_recursion(const std::vector<double>& series,
                                              const FrequencyConfig& cfg);

struct FrequencyEstimate {
  double frequency = 0.0;   // sum of the group's final posterior means
  std::vector<int> bins;    // contributing (1-based) bins
};

// Discard bin 1, then group maximal runs of consecutive bins whose final
// means exceed epsilon_group; each group's frequency is the sum of its means.
std::vector<FrequencyEstimate> extract_frequencies(const std::vector<double>& final_means,
                                                   double epsilon_group);

// Experiment presets: a single noisy sinusoid and a three-component sum.
std::vector<double> gen_single_freq(std::size_t T, std::uint64_t seed, double sigma = 5.0);
std::vector<double> gen_mult_freq(std::size_t T, std::uint64_t seed);

}  // namespace rbstat

#endif  // RBSTAT_FREQUENCY_HPP
