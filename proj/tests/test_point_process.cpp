#include <doctest.h>

#include <cmath>

#include "rbstat/point_process.hpp"

using namespace rbstat;

TEST_SUITE("point_process") {
  TEST_CASE("homogeneous Poisson patterns live in the window and are seeded") {
    const Window w{0.0, 20.0, 0.0, 10.0};
    const auto p = gen_hpp(2.0, w, 5);
    CHECK(p.points == gen_hpp(2.0, w, 5).points);
    CHECK(p.points != gen_hpp(2.0, w, 6).points);
    for (const Point& pt : p.points) CHECK(w.contains(pt));
    // E[n] = lambda |W| = 400; a Poisson count stays within a loose band.
    CHECK(p.points.size() > 300);
    CHECK(p.points.size() < 500);
  }

  TEST_CASE("inhomogeneous thinning follows the intensity gradient") {
    const Window w{0.0, 1.0, 0.0, 1.0};
    const auto lambda = [](double x, double y) { return 1000.0 * (x + y) / 2.0; };
    const auto p = gen_ihpp(lambda, 1000.0, w, 9);
    std::size_t low = 0, high = 0;
    for (const Point& pt : p.points) {
      CHECK(w.contains(pt));
      (pt.x + pt.y < 1.0 ? low : high)++;
    }
    // Mass in the lower triangle is 1/6 of the upper triangle's... actually
    // the integral of (x+y) over {x+y<1} is 1/3 of the total; demand a clear
    // imbalance rather than the exact ratio.
    CHECK(high > 2 * low);
    CHECK(p.points.size() > 300);
  }

  TEST_CASE("cluster, Cox, and Strauss generators produce in-window patterns") {
    const Window w{0.0, 5.0, 0.0, 5.0};
    ClusterParams matern;
    matern.kind = ClusterKind::matern;
    matern.kappa = 4.0;
    matern.mu = 6.0;
    matern.r_disc = 0.2;
    const auto pm = gen_cluster(matern, w, 3);
    CHECK(pm.points.size() > 20);
    for (const Point& pt : pm.points) CHECK(w.contains(pt));

    ClusterParams ns;
    ns.kind = ClusterKind::neyman_scott;
    ns.kappa = 4.0;
    ns.m_fixed = 5;
    ns.r_disc = 0.2;
    const auto pn = gen_cluster(ns, w, 3);
    for (const Point& pt : pn.points) CHECK(w.contains(pt));

    ClusterParams th;
    th.kind = ClusterKind::thomas;
    th.kappa = 4.0;
    th.mu = 6.0;
    th.sigma2 = 0.01;
    const auto pt_ = gen_cluster(th, w, 3);
    for (const Point& pt : pt_.points) CHECK(w.contains(pt));

    const auto lg = gen_lgcp([](double, double) { return std::log(5.0); }, CovKernel::sqexp(), 16,
                             w, 7);
    for (const Point& pt : lg.points) CHECK(w.contains(pt));
    CHECK(lg.points == gen_lgcp([](double, double) { return std::log(5.0); }, CovKernel::sqexp(),
                                16, w, 7)
                           .points);

    const auto st = gen_strauss(8.0, 0.2, 0.3, w, 11, 20000);
    for (const Point& pt : st.points) CHECK(w.contains(pt));
    CHECK(st.points.size() > 10);
  }

  TEST_CASE("pattern detectors demand at least three points per cluster") {
    PointPattern tiny;
    tiny.window = {0.0, 1.0, 0.0, 1.0};
    tiny.points = {{0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}, {0.4, 0.4}, {0.5, 0.5}};
    CHECK_THROWS_AS(csr_statistics(tiny, 2), input_error);
    CHECK_THROWS_AS(pp_stationarity_statistics(tiny, 2), input_error);
  }

  TEST_CASE("a homogeneous Poisson pattern passes the CSR check") {
    const Window w{0.0, 30.0, 0.0, 30.0};
    const auto p = gen_hpp(1.0, w, 1);
    const auto rep = detect_csr(p, 10, BoundSequence::nonparametric(0.5), {}, 123);
    CHECK(rep.verdict == Verdict::Stationary);
    CHECK(rep.stages.size() == 10);
    // The per-cluster statistics feeding the recursion are small discrepancies.
    const auto stats = csr_statistics(p, 10, 123);
    REQUIRE(stats.size() == 10);
    for (const double s : stats) {
      CHECK(s >= 0.0);
      CHECK(s < 0.5);
    }
  }

  TEST_CASE("pattern stationarity on HPP marks") {
    const Window w{0.0, 30.0, 0.0, 30.0};
    const auto p = gen_hpp(1.0, w, 2);
    const auto rep = detect_pp_stationarity(p, 10, BoundSequence::nonparametric(1.0), {}, 123);
    CHECK(rep.stages.size() == 10);
    CHECK(rep.verdict == Verdict::Stationary);
  }

  TEST_CASE("per-cluster log nearest-neighbor sequences") {
    const Window w{0.0, 20.0, 0.0, 20.0};
    const auto p = gen_hpp(1.5, w, 4);
    const auto seqs = cluster_log_nn_distances(p, 8, 55);
    REQUIRE(seqs.size() == 8);
    std::size_t total = 0;
    for (const auto& s : seqs) {
      CHECK(s.size() >= 3);
      total += s.size();
      for (const double v : s) CHECK(std::isfinite(v));
    }
    CHECK(total == p.points.size());
    // Same seed, same clustering, same sequences.
    CHECK(seqs == cluster_log_nn_distances(p, 8, 55));
  }
}
