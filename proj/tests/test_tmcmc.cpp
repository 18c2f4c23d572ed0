#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "rbstat/tmcmc.hpp"

using namespace rbstat;

TEST_SUITE("tmcmc") {
  TEST_CASE("acceptance depends only on the density ratio") {
    // Adding a constant to the log target must not change a single decision:
    // the two chains stay bitwise identical.
    TmcmcConfig cfg;
    cfg.d = 5;
    cfg.ell = 2.4;
    cfg.seed = 19;
    const auto base = std_normal_product(5);
    const LogTarget shifted = [base](const std::vector<double>& x) { return base(x) + 123.456; };
    const auto a = tmcmc_run(std::vector<double>(5, 1.0), base, cfg, 2000);
    const auto b = tmcmc_run(std::vector<double>(5, 1.0), shifted, cfg, 2000);
    CHECK(a.accepted == b.accepted);
    CHECK(a.first_coordinate == b.first_coordinate);
    CHECK(a.final_state == b.final_state);
  }

  TEST_CASE("every coordinate moves by the same magnitude when a is empty") {
    TmcmcConfig cfg;
    cfg.d = 4;
    cfg.seed = 3;
    std::mt19937_64 rng(cfg.seed);
    std::vector<double> x(4, 1.0);
    const auto target = std_normal_product(4);
    int accepted_steps = 0;
    for (int it = 0; it < 200; ++it) {
      const std::vector<double> before = x;
      if (tmcmc_step(x, target, cfg, rng)) {
        ++accepted_steps;
        const double mag = std::abs(x[0] - before[0]);
        CHECK(mag > 0.0);
        for (int j = 1; j < 4; ++j)
          CHECK(std::abs(x[j] - before[j]) == doctest::Approx(mag).epsilon(1e-12));
      } else {
        CHECK(x == before);
      }
    }
    CHECK(accepted_steps > 0);
  }

  TEST_CASE("acceptance rate decreases as the proposal scale grows") {
    const auto target = std_normal_product(20);
    std::vector<double> rates;
    for (const double ell : {0.1, 2.4, 10.0, 100.0}) {
      double sum = 0.0;
      for (std::uint64_t s = 1; s <= 5; ++s) {
        TmcmcConfig cfg;
        cfg.d = 20;
        cfg.ell = ell;
        cfg.seed = s;
        sum += tmcmc_run(std::vector<double>(20, 1.0), target, cfg, 4000).acceptance_rate();
      }
      rates.push_back(sum / 5.0);
    }
    for (std::size_t i = 0; i + 1 < rates.size(); ++i) CHECK(rates[i] >= rates[i + 1]);
    CHECK(rates.front() > 0.8);   // tiny steps are almost always accepted
    CHECK(rates.back() < 0.05);   // huge steps almost never are
  }

  TEST_CASE("runs are reproducible and sized as requested") {
    TmcmcConfig cfg;
    cfg.d = 3;
    cfg.seed = 7;
    const auto target = std_normal_product(3);
    const auto r = tmcmc_run(std::vector<double>(3, 1.0), target, cfg, 500);
    CHECK(r.iterations == 500);
    CHECK(r.first_coordinate.size() == 500);
    CHECK(r.final_state.size() == 3);
    const auto again = tmcmc_run(std::vector<double>(3, 1.0), target, cfg, 500);
    CHECK(r.first_coordinate == again.first_coordinate);
  }

  TEST_CASE("convergence diagnosis guards its partition") {
    CHECK_THROWS_AS(
        diagnose_convergence({1.0, 2.0, 3.0}, 100, BoundSequence::nonparametric(1.0)),
        input_error);
    // Four blocks: too few for the tail rule, reported as Inconclusive.
    std::vector<double> chain(400);
    for (std::size_t i = 0; i < 400; ++i) chain[i] = std::sin(static_cast<double>(i));
    const auto rep = diagnose_convergence(chain, 100, BoundSequence::nonparametric(1.0));
    CHECK(rep.verdict == Verdict::Inconclusive);
  }

  TEST_CASE("a well-tuned chain on the product normal is diagnosed converged") {
    TmcmcConfig cfg;
    cfg.d = 10;
    cfg.ell = 2.4;
    cfg.seed = 4;
    const auto run = tmcmc_run(std::vector<double>(10, 1.0), std_normal_product(10), cfg, 20000);
    const auto rep = diagnose_convergence(run.first_coordinate, 200,
                                          BoundSequence::nonparametric(1.2));
    CHECK(rep.verdict == Verdict::Stationary);
    CHECK(rep.stages.size() == 100);
  }

  TEST_CASE("ready-made targets") {
    const auto mix = normal_mixture(5.0);
    // The equal-weight mixture is symmetric about its two modes.
    CHECK(mix({0.0}) == doctest::Approx(mix({5.0})));
    CHECK(mix({2.5}) < mix({0.0}));
    const auto prod = std_normal_product(2);
    CHECK(prod({0.0, 0.0}) == doctest::Approx(0.0));  // unnormalized: -0.5 * sum x^2
    CHECK(prod({1.0, 2.0}) == doctest::Approx(-2.5));
    CHECK(prod({1.0}) == -std::numeric_limits<double>::infinity());  // wrong dimension
  }
}
