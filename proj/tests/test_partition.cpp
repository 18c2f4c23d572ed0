#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "rbstat/partition.hpp"

using namespace rbstat;

TEST_SUITE("partition") {
  TEST_CASE("sequential blocks merge short remainders") {
    // 10 = 3+3+3 with remainder 1 (< 3): merged into the last block.
    const auto p = sequential_blocks(10, 3);
    CHECK(p.K == 3);
    CHECK(p.sizes == std::vector<int>{3, 3, 4});
    // 13 = 3*4 + 1: remainder 1 merged.
    CHECK(sequential_blocks(13, 3).sizes == std::vector<int>{3, 3, 3, 4});
    // Remainder 3 stands alone.
    CHECK(sequential_blocks(15, 4).sizes == std::vector<int>{4, 4, 4, 3});
    CHECK(sequential_blocks(12, 3).K == 4);
    CHECK_THROWS_AS(sequential_blocks(5, 0), input_error);
    CHECK_THROWS_AS(sequential_blocks(5, 6), input_error);
  }

  TEST_CASE("members lists indices in ascending order per cluster") {
    const auto p = sequential_blocks(7, 2);  // sizes {2,2,3}
    const auto groups = p.members();
    REQUIRE(groups.size() == 3);
    CHECK(groups[0] == std::vector<int>{0, 1});
    CHECK(groups[2] == std::vector<int>{4, 5, 6});
  }

  TEST_CASE("k-means separates well-separated blobs") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> jitter(0.0, 0.05);
    std::vector<Point> pts;
    for (int i = 0; i < 30; ++i) pts.push_back({0.0 + jitter(rng), 0.0 + jitter(rng)});
    for (int i = 0; i < 30; ++i) pts.push_back({10.0 + jitter(rng), 10.0 + jitter(rng)});
    const auto p = kmeans_partition(pts, 2, 1, 42);
    REQUIRE(p.K == 2);
    CHECK(p.sizes == std::vector<int>{30, 30});
    // All points of one blob share a label and differ from the other blob's.
    for (int i = 1; i < 30; ++i) CHECK(p.assignments[static_cast<std::size_t>(i)] == p.assignments[0]);
    CHECK(p.assignments[30] != p.assignments[0]);
  }

  TEST_CASE("k-means is deterministic for a fixed seed") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts(200);
    for (Point& p : pts) p = {u(rng), u(rng)};
    const auto a = kmeans_partition(pts, 10, 3, 7);
    const auto b = kmeans_partition(pts, 10, 3, 7);
    CHECK(a.assignments == b.assignments);
    CHECK(std::accumulate(a.sizes.begin(), a.sizes.end(), 0) == 200);
  }

  TEST_CASE("undersized clusters are dissolved") {
    // One stray point far from a dense blob: with min_size 5 the stray's
    // cluster cannot survive.
    std::vector<Point> pts;
    std::mt19937_64 rng(2);
    std::normal_distribution<double> jitter(0.0, 0.1);
    for (int i = 0; i < 20; ++i) pts.push_back({jitter(rng), jitter(rng)});
    pts.push_back({50.0, 50.0});
    const auto p = kmeans_partition(pts, 2, 5, 11);
    CHECK(p.K == 1);
    CHECK(p.sizes == std::vector<int>{21});
  }

  TEST_CASE("k-means validates its inputs") {
    const std::vector<Point> pts = {{0, 0}, {1, 1}};
    CHECK_THROWS_AS(kmeans_partition(pts, 0, 1, 0), input_error);
    CHECK_THROWS_AS(kmeans_partition(pts, 2, 5, 0), input_error);  // infeasible min_size
    CHECK_THROWS_AS(kmeans_partition(std::vector<double>{1.0, 2.0, 3.0}, 2, 1, 1, 0),
                    input_error);  // coords not a multiple of dim
  }

  TEST_CASE("distance bands bin within-cluster pairs half-open") {
    // Three collinear points in one cluster: pair distances 1, 1, 2.
    const std::vector<Point> pts = {{0, 0}, {1, 0}, {2, 0}};
    Partition p;
    p.K = 1;
    p.assignments = {1, 1, 1};
    p.sizes = {3};
    const auto bands = distance_bands(pts, p, {0.0, 1.5, 2.5});
    REQUIRE(bands.per_cluster.size() == 1);
    CHECK(bands.per_cluster[0][0].pairs.size() == 2);  // the two unit gaps
    CHECK(bands.per_cluster[0][1].pairs.size() == 1);  // the distance-2 pair
    CHECK(bands.valid == std::vector<bool>{true, true});
    CHECK_THROWS_AS(distance_bands(pts, p, {1.0}), input_error);
    CHECK_THROWS_AS(distance_bands(pts, p, {1.0, 0.5}), input_error);
  }

  TEST_CASE("a band is valid only when over half the clusters populate it") {
    // Two clusters; only one has a pair in the second band -> 2*1 == K, invalid.
    const std::vector<Point> pts = {{0, 0}, {1, 0}, {10, 0}, {10.1, 0}};
    Partition p;
    p.K = 2;
    p.assignments = {1, 1, 2, 2};
    p.sizes = {2, 2};
    const auto bands = distance_bands(pts, p, {0.0, 0.5, 1.5});
    CHECK(bands.valid == std::vector<bool>{false, false});
  }

  TEST_CASE("minimum points per cell lower bound") {
    // p = 2: volume / (pi eps^2).
    CHECK(min_points_per_cell(4.0, 0.5, 2) ==
          doctest::Approx(4.0 / (std::numbers::pi * 0.25)));
    // p = 1: Gamma(3/2)/sqrt(pi) = 1/2.
    CHECK(min_points_per_cell(10.0, 2.0, 1) == doctest::Approx(2.5));
    CHECK_THROWS_AS(min_points_per_cell(1.0, 0.0, 2), input_error);
    CHECK_THROWS_AS(min_points_per_cell(1.0, 0.1, 0), input_error);
  }
}
