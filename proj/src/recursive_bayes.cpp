#include "rbstat/recursive_bayes.hpp"

#include <cmath>

namespace rbstat {

BetaRecursionState beta_update(BetaRecursionState state, int y) {
  if (y != 0 && y != 1) throw input_error("beta_update: y must be 0 or 1");
  state.k += 1;
  const double w = 1.0 / (static_cast<double>(state.k) * static_cast<double>(state.k));
  state.sum_alpha += w;
  state.sum_beta += w;
  state.sum_y += y;
  return state;
}

MeanVar beta_mean_var(const BetaRecursionState& state) {
  if (state.k < 1) throw input_error("beta_mean_var: state has no stages");
  const double S = state.sum_alpha;
  const double k = static_cast<double>(state.k);
  const double y = static_cast<double>(state.sum_y);
  const double a = S + y;            // posterior Beta(a, b)
  const double b = k + S - y;
  const double total = a + b;        // k + 2S
  MeanVar out;
  out.mean = a / total;
  out.variance = a * b / (total * total * (total + 1.0));
  return out;
}

MeanVar beta_nonrecursive_mean_var(double alpha_k, double beta_k, int y) {
  if (alpha_k < 0 || beta_k < 0) throw input_error("beta_nonrecursive_mean_var: negative prior mass");
  if (y != 0 && y != 1) throw input_error("beta_nonrecursive_mean_var: y must be 0 or 1");
  const double a = alpha_k + y;
  const double b = beta_k + 1.0 - y;
  const double total = a + b;  // 1 + alpha_k + beta_k
  MeanVar out;
  out.mean = a / total;
  out.variance = a * b / (total * total * (total + 1.0));
  return out;
}

DirichletRecursionState dirichlet_update(DirichletRecursionState state, int category) {
  if (state.M < 2) throw input_error("dirichlet_update: M must be >= 2");
  if (category < 1 || category > state.M) throw input_error("dirichlet_update: category out of range");
  state.k += 1;
  const double w = 1.0 / (static_cast<double>(state.k) * static_cast<double>(state.k));
  state.base_mass += w;
  state.counts[static_cast<std::size_t>(category - 1)] += 1;
  return state;
}

MeanVar dirichlet_mean_var(const DirichletRecursionState& state, int m) {
  if (state.k < 1) throw input_error("dirichlet_mean_var: state has no stages");
  if (m < 1 || m > state.M) throw input_error("dirichlet_mean_var: category out of range");
  const double S = state.base_mass;
  const double k = static_cast<double>(state.k);
  const double c = static_cast<double>(state.counts[static_cast<std::size_t>(m - 1)]);
  const double A = static_cast<double>(state.M) * S + k;  // total concentration
  const double a = S + c;
  MeanVar out;
  out.mean = a / A;
  out.variance = a * (A - a) / (A * A * (A + 1.0));
  return out;
}

DpRecursionState dp_update(DpRecursionState state, int category) {
  if (category < 1) throw input_error("dp_update: category must be >= 1");
  state.k += 1;
  const double w = 1.0 / (static_cast<double>(state.k) * static_cast<double>(state.k));
  state.base_mass += w;
  state.counts[category] += 1;
  return state;
}

MeanVar dp_mean_var(const DpRecursionState& state, int m) {
  if (state.k < 1) throw input_error("dp_mean_var: state has no stages");
  if (m < 1) throw input_error("dp_mean_var: category must be >= 1");
  const double S = state.base_mass;
  const double k = static_cast<double>(state.k);
  const auto it = state.counts.find(m);
  const double c = (it == state.counts.end()) ? 0.0 : static_cast<double>(it->second);
  const double A = S + k;
  const double a = std::exp2(-static_cast<double>(m)) * S + c;
  MeanVar out;
  out.mean = a / A;
  out.variance = a * (A - a) / (A * A * (A + 1.0));
  return out;
}

}  // namespace rbstat
