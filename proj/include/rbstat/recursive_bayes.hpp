#ifndef RBSTAT_RECURSIVE_BAYES_HPP
#define RBSTAT_RECURSIVE_BAYES_HPP

// Stage-wise conjugate posterior recursions.  Every detector in this library
// reduces its data to a sequence of stage outcomes and feeds them through one
// of these three recursions:
//
//  * Beta       — binary stage indicators y_j (stationarity detectors).
//  * Dirichlet  — categorical stage outcomes with a fixed number of bins M.
//  * DP         — categorical outcomes over countably many bins, with a
//                 geometric base measure G(m) = 2^-m.
//
// The stage-j prior mass is alpha_j = beta_j = 1/j^2 (a summable sequence),
// so the accumulated base mass converges to pi^2/6 and the data eventually
// dominate the posterior.

#include <map>
#include <vector>

#include "rbstat/common.hpp"

namespace rbstat {

// ---------------------------------------------------------------------------
// Beta recursion
// ---------------------------------------------------------------------------

struct BetaRecursionState {
  long k = 0;            // number of stages consumed
  double sum_alpha = 0;  // sum_{j<=k} 1/j^2
  double sum_beta = 0;   // identical to sum_alpha; kept to mirror the model
  long sum_y = 0;        // sum_{j<=k} y_j
};

// Consume one binary stage outcome.  Pure: returns the successor state.
BetaRecursionState beta_update(BetaRecursionState state, int y);

// Posterior mean/variance after k >= 1 stages:
//   mean = (S + sum_y) / (k + 2S),  S = sum_{j<=k} 1/j^2
//   var  = (S + sum_y)(k + S - sum_y) / ((k + 2S)^2 (1 + k + 2S))
MeanVar beta_mean_var(const BetaRecursionState& state);

// Single-stage non-recursive posterior with prior Beta(alpha_k, beta_k) and
// one Bernoulli observation y.  Included for completeness; not a detector
// mode.
MeanVar beta_nonrecursive_mean_var(double alpha_k, double beta_k, int y);

// ---------------------------------------------------------------------------
// Finite Dirichlet recursion
// ---------------------------------------------------------------------------

struct DirichletRecursionState {
  int M = 0;             // number of categories, >= 2
  long k = 0;            // stages consumed
  double base_mass = 0;  // sum_{j<=k} 1/j^2
  std::vector<long> counts;  // per-category tallies, size M

  explicit DirichletRecursionState(int M_ = 2)
      : M(M_), counts(static_cast<std::size_t>(M_ > 0 ? M_ : 0), 0) {}
};

// Consume one categorical outcome in 1..M.
DirichletRecursionState dirichlet_update(DirichletRecursionState state, int category);

// Posterior mean/variance of category m:
//   mean = (S + counts[m]) / (M*S + k)
//   var  = (S + counts[m]) ((M-1)S + k - counts[m]) / ((M*S+k)^2 (M*S+k+1))
MeanVar dirichlet_mean_var(const DirichletRecursionState& state, int m);

// ---------------------------------------------------------------------------
// Dirichlet-process recursion (countably infinite categories)
// ---------------------------------------------------------------------------

struct DpRecursionState {
  long k = 0;            // stages consumed
  double base_mass = 0;  // sum_{j<=k} 1/j^2
  std::map<int, long> counts;  // sparse tallies over visited categories
};

// Consume one categorical outcome m >= 1.
DpRecursionState dp_update(DpRecursionState state, int category);

// Posterior mean/variance of category m under the geometric base G(m)=2^-m:
//   mean = (2^-m * S + counts[m]) / (S + k)
//   var  = a (A - a) / (A^2 (A + 1)),  a = 2^-m S + counts[m], A = S + k
MeanVar dp_mean_var(const DpRecursionState& state, int m);

}  // namespace rbstat

#endif  // RBSTAT_RECURSIVE_BAYES_HPP
