#include <doctest.h>

#include <cmath>
#include <random>

#include "rbstat/detect.hpp"
#include "rbstat/generators.hpp"
#include "rbstat/recursive_bayes.hpp"

using namespace rbstat;

TEST_SUITE("detect") {
  TEST_CASE("verdict averages the trailing fraction of the trajectory") {
    VerdictConfig cfg;  // theta_hi 0.8, theta_lo 0.2, tail 0.2
    // 10 stages: tail = 2, mean of last two decides.
    std::vector<double> means(10, 0.5);
    means[8] = 0.9;
    means[9] = 0.9;
    CHECK(verdict(means, cfg) == Verdict::Stationary);
    means[8] = 0.1;
    means[9] = 0.1;
    CHECK(verdict(means, cfg) == Verdict::Nonstationary);
    means[9] = 0.5;
    CHECK(verdict(means, cfg) == Verdict::Inconclusive);
    // Tail length is ceil(fraction * n), clamped to at least one stage.
    CHECK(verdict({0.95}, cfg) == Verdict::Stationary);
  }

  TEST_CASE("verdict validates its configuration") {
    CHECK_THROWS_AS(verdict({}, VerdictConfig{}), input_error);
    VerdictConfig bad;
    bad.theta_lo = 0.9;  // lo >= hi
    CHECK_THROWS_AS(verdict({0.5}, bad), input_error);
  }

  TEST_CASE("run_detection wires statistic, bound, indicator, and posterior") {
    // With C1 = 1 the stage-1 bound is 1/log 2 ~ 1.44: s = 0.1 passes,
    // s = 2.0 fails.
    const std::vector<double> stats = {0.1, 2.0, 0.1};
    const auto report = run_detection(stats, BoundSequence::nonparametric(1.0), {});
    REQUIRE(report.stages.size() == 3);
    CHECK(report.stages[0].y == 1);
    CHECK(report.stages[1].y == 0);
    CHECK(report.stages[2].y == 1);
    // Replay the recursion independently and compare the recorded posterior.
    BetaRecursionState st;
    for (const StageRecord& rec : report.stages) {
      CHECK(rec.y == (rec.s <= rec.c ? 1 : 0));
      st = beta_update(st, rec.y);
      const MeanVar mv = beta_mean_var(st);
      CHECK(rec.post_mean == doctest::Approx(mv.mean).epsilon(1e-15));
      CHECK(rec.post_var == doctest::Approx(mv.variance).epsilon(1e-15));
    }
    CHECK_THROWS_AS(run_detection({}, BoundSequence::nonparametric(1.0), VerdictConfig{}),
                    input_error);
  }

  TEST_CASE("extreme statistics produce the expected verdicts") {
    const std::vector<double> tiny(30, 0.001);
    CHECK(run_detection(tiny, BoundSequence::nonparametric(1.0), {}).verdict ==
          Verdict::Stationary);
    const std::vector<double> huge(30, 0.999);
    CHECK(run_detection(huge, BoundSequence::nonparametric(0.1), {}).verdict ==
          Verdict::Nonstationary);
  }

  TEST_CASE("strict statistics validate the partition") {
    const std::vector<double> v(10, 1.0);
    Partition one_block;
    one_block.K = 1;
    one_block.assignments.assign(10, 1);
    one_block.sizes = {10};
    CHECK_THROWS_AS(strict_statistics(v, one_block), input_error);
    CHECK_THROWS_AS(strict_statistics(v, sequential_blocks(10, 2)), input_error);  // blocks of 2
  }

  TEST_CASE("strict statistics stay within [0, 1] and flag shifted blocks") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> values(400);
    for (double& v : values) v = gauss(rng);
    // Shift the last block far upward: its maximum dominates the pool.
    for (std::size_t i = 360; i < 400; ++i) values[i] += 50.0;
    const auto stats = strict_statistics(values, sequential_blocks(400, 40));
    REQUIRE(stats.size() == 10);
    for (const double s : stats) {
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
    }
    // The shifted block contains the pooled maximum; every other block's
    // statistic is large because the pool's upper tail is out of their reach.
    for (std::size_t b = 0; b + 1 < stats.size(); ++b) CHECK(stats[b] > 0.05);
  }

  TEST_CASE("iid data is declared stationary end to end") {
    const auto series = gen_ar1(2500, 0.0, 17);
    const auto report =
        detect_strict(series, sequential_blocks(2500, 50), BoundSequence::nonparametric(1.0), {});
    CHECK(report.verdict == Verdict::Stationary);
    CHECK(report.stages.size() == 50);
  }

  TEST_CASE("covariance statistics: absolute gaps to the pooled correlation") {
    // Two clusters of three collinear points each, unit spacing, iid values.
    std::vector<Point> pts = {{0, 0}, {1, 0}, {2, 0}, {100, 0}, {101, 0}, {102, 0}};
    std::vector<double> vals = {0.3, -0.7, 1.1, 0.9, -0.2, 0.4};
    Partition p;
    p.K = 2;
    p.assignments = {1, 1, 1, 2, 2, 2};
    p.sizes = {3, 3};
    std::vector<bool> valid;
    const auto stats = covariance_statistics(vals, pts, p, {0.0, 1.5, 2.5}, &valid);
    REQUIRE(stats.size() == 2);
    CHECK(valid == std::vector<bool>{true, true});
    CHECK(stats[0].size() == 2);  // one gap per contributing cluster
    for (const double g : stats[0]) CHECK(g >= 0.0);
    // Weighted pooled correlation means the gaps cannot all be zero unless
    // the clusters agree exactly; with equal weights the two gaps are equal.
    CHECK(stats[0][0] == doctest::Approx(stats[0][1]));
    CHECK_THROWS_AS(covariance_statistics(vals, {{0, 0}}, p, {0.0, 1.0}, nullptr), input_error);
  }

  TEST_CASE("covariance detection reports NotVerifiable without valid bands") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts(40);
    std::vector<double> vals(40);
    for (std::size_t i = 0; i < 40; ++i) {
      pts[i] = {u(rng), u(rng)};
      vals[i] = u(rng);
    }
    Partition p;
    p.K = 2;
    p.assignments.assign(40, 1);
    for (std::size_t i = 20; i < 40; ++i) p.assignments[i] = 2;
    p.sizes = {20, 20};
    // All boundaries beyond any possible pair distance.
    const auto report = detect_covariance(
        vals, pts, p, {10.0, 20.0}, [] { return BoundSequence::nonparametric(1.0); }, {});
    CHECK(report.overall == Verdict::NotVerifiable);
    REQUIRE(report.bands.size() == 1);
    CHECK_FALSE(report.bands[0].valid);
  }
}
