#include <doctest.h>

#include <cmath>
#include <random>

#include "rbstat/recursive_bayes.hpp"

using namespace rbstat;

TEST_SUITE("recursive_bayes") {
  TEST_CASE("beta recursion matches the closed form on a hand example") {
    // y = (1, 0, 1): S = 1 + 1/4 + 1/9 = 49/36, sum_y = 2.
    BetaRecursionState st;
    st = beta_update(st, 1);
    st = beta_update(st, 0);
    st = beta_update(st, 1);
    const double S = 49.0 / 36.0;
    const double total = 3.0 + 2.0 * S;
    const double mean = (S + 2.0) / total;
    const double var = (S + 2.0) * (3.0 + S - 2.0) / (total * total * (total + 1.0));
    CHECK(beta_mean_var(st).mean == doctest::Approx(mean).epsilon(1e-15));
    CHECK(beta_mean_var(st).variance == doctest::Approx(var).epsilon(1e-15));
  }

  TEST_CASE("beta recursion state accumulates stage priors 1/j^2") {
    BetaRecursionState st;
    for (int j = 1; j <= 4; ++j) st = beta_update(st, j % 2);
    CHECK(st.k == 4);
    CHECK(st.sum_alpha == doctest::Approx(1.0 + 0.25 + 1.0 / 9.0 + 1.0 / 16.0));
    CHECK(st.sum_beta == st.sum_alpha);
    CHECK(st.sum_y == 2);
  }

  TEST_CASE("beta posterior drifts to the correct extreme") {
    BetaRecursionState ones, zeros;
    for (int j = 0; j < 200; ++j) {
      ones = beta_update(ones, 1);
      zeros = beta_update(zeros, 0);
    }
    CHECK(beta_mean_var(ones).mean > 0.95);
    CHECK(beta_mean_var(zeros).mean < 0.05);
    // A longer run moves further: the posterior concentrates.
    BetaRecursionState longer = ones;
    for (int j = 0; j < 800; ++j) longer = beta_update(longer, 1);
    CHECK(beta_mean_var(longer).mean > beta_mean_var(ones).mean);
    CHECK(beta_mean_var(longer).variance < beta_mean_var(ones).variance);
  }

  TEST_CASE("beta recursion rejects invalid input") {
    BetaRecursionState st;
    CHECK_THROWS_AS(beta_update(st, 2), input_error);
    CHECK_THROWS_AS(beta_update(st, -1), input_error);
    CHECK_THROWS_AS(beta_mean_var(BetaRecursionState{}), input_error);
  }

  TEST_CASE("single-stage nonrecursive posterior") {
    // Prior Beta(1/4, 1/4) and y = 1: posterior Beta(5/4, 1/4).
    const MeanVar mv = beta_nonrecursive_mean_var(0.25, 0.25, 1);
    CHECK(mv.mean == doctest::Approx((0.25 + 1.0) / 1.5));
    CHECK(mv.variance == doctest::Approx(1.25 * 0.25 / (1.5 * 1.5 * 2.5)));
    CHECK_THROWS_AS(beta_nonrecursive_mean_var(-1.0, 0.25, 1), input_error);
    CHECK_THROWS_AS(beta_nonrecursive_mean_var(0.25, 0.25, 3), input_error);
  }

  TEST_CASE("dirichlet means sum to one and track counts") {
    DirichletRecursionState st(5);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> cat(1, 5);
    std::vector<long> tally(5, 0);
    for (int j = 0; j < 500; ++j) {
      const int m = cat(rng);
      tally[static_cast<std::size_t>(m - 1)] += 1;
      st = dirichlet_update(std::move(st), m);
    }
    double sum = 0.0;
    for (int m = 1; m <= 5; ++m) sum += dirichlet_mean_var(st, m).mean;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    for (int m = 1; m <= 5; ++m) {
      CHECK(st.counts[static_cast<std::size_t>(m - 1)] == tally[static_cast<std::size_t>(m - 1)]);
    }
    // With 500 observations the base mass (< pi^2/6) is nearly drowned out:
    // the posterior mean is close to the empirical proportion.
    for (int m = 1; m <= 5; ++m) {
      const double prop = static_cast<double>(tally[static_cast<std::size_t>(m - 1)]) / 500.0;
      CHECK(dirichlet_mean_var(st, m).mean == doctest::Approx(prop).epsilon(0.05));
    }
  }

  TEST_CASE("dirichlet rejects out-of-range categories") {
    DirichletRecursionState st(3);
    CHECK_THROWS_AS(dirichlet_update(std::move(st), 0), input_error);
    DirichletRecursionState st2(3);
    CHECK_THROWS_AS(dirichlet_update(std::move(st2), 4), input_error);
    DirichletRecursionState fresh(3);
    fresh = dirichlet_update(std::move(fresh), 1);
    CHECK_THROWS_AS(dirichlet_mean_var(fresh, 4), input_error);
  }

  TEST_CASE("dp recursion: geometric base mass on unvisited bins") {
    DpRecursionState st;
    st = dp_update(std::move(st), 3);
    st = dp_update(std::move(st), 3);
    const double S = 1.0 + 0.25;
    const double A = S + 2.0;
    // Visited bin 3 carries its count; bin 7 only its base share 2^-7 S.
    CHECK(dp_mean_var(st, 3).mean == doctest::Approx((std::exp2(-3) * S + 2.0) / A));
    CHECK(dp_mean_var(st, 7).mean == doctest::Approx(std::exp2(-7) * S / A));
    CHECK_THROWS_AS(dp_update(std::move(st), 0), input_error);
  }

  TEST_CASE("dp means sum to one over the full support") {
    DpRecursionState st;
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> cat(1, 12);
    for (int j = 0; j < 300; ++j) st = dp_update(std::move(st), cat(rng));
    double sum = 0.0;
    for (int m = 1; m <= 60; ++m) sum += dp_mean_var(st, m).mean;  // tail beyond 60 < 1e-18
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}
