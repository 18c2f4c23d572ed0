#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "rbstat/frequency.hpp"

using namespace rbstat;

TEST_SUITE("frequency") {
  TEST_CASE("logistic transform is overflow-safe and monotone") {
    const auto z = logistic_transform({0.0, -1000.0, 1000.0, 1.0, 2.0});
    CHECK(z[0] == doctest::Approx(0.5));
    CHECK(z[1] == doctest::Approx(0.0));
    CHECK(z[2] == doctest::Approx(1.0));
    CHECK(z[3] < z[4]);
    CHECK(z[3] == doctest::Approx(std::exp(1.0) / (1.0 + std::exp(1.0))));
  }

  TEST_CASE("right-closed interval binning") {
    const std::vector<double> bp = {0.25, 0.5, 0.75, 1.0};  // M = 4
    CHECK(bin_assign(0.0, bp) == 1);   // zero belongs to the first bin
    CHECK(bin_assign(0.1, bp) == 1);
    CHECK(bin_assign(0.25, bp) == 1);  // right endpoint closed
    CHECK(bin_assign(0.26, bp) == 2);
    CHECK(bin_assign(1.0, bp) == 4);
    CHECK_THROWS_AS(bin_assign(1.01, bp), input_error);
    CHECK_THROWS_AS(bin_assign(-0.1, bp), input_error);
  }

  TEST_CASE("breakpoint grids") {
    FrequencyConfig cfg;
    cfg.M = 4;
    cfg.multiplier = 2.0;
    const auto bp = make_breakpoints(cfg);
    CHECK(bp == std::vector<double>{0.5, 1.0, 1.5, 2.0});
    cfg.M = 1;
    CHECK_THROWS_AS(make_breakpoints(cfg), input_error);

    FrequencyConfig inf;
    inf.infinite = true;
    inf.multiplier = 3.0;
    const auto gp = make_breakpoints(inf);
    CHECK(gp.size() == 53);  // geometric widths down to machine resolution
    CHECK(gp.front() == doctest::Approx(1.5));
    CHECK(gp.back() == doctest::Approx(3.0));
    for (std::size_t i = 0; i + 1 < gp.size(); ++i) CHECK(gp[i] < gp[i + 1]);
  }

  TEST_CASE("recursion output is a probability vector over the bins") {
    const auto series = gen_single_freq(400, 2, 5.0);
    FrequencyConfig cfg;
    cfg.r = 10.0;
    cfg.M = 20;
    const auto out = run_frequency_recursion(series, cfg);
    REQUIRE(out.final_means.size() == 20);
    const double total = std::accumulate(out.final_means.begin(), out.final_means.end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    for (const double m : out.final_means) CHECK(m >= 0.0);
    CHECK_FALSE(out.mean_history.empty());
    CHECK(out.mean_history.back().size() == 20);
  }

  TEST_CASE("a constant series at minus infinity loads the first bin") {
    // Large negative values -> logistic ~ 0 -> every stage lands in bin 1.
    const std::vector<double> series(200, -50.0);
    FrequencyConfig cfg;
    cfg.M = 10;
    const auto out = run_frequency_recursion(series, cfg);
    // All 200 labels land in bin 1; the remaining mass is Dirichlet prior
    // smoothing: mean = (S + 200) / (10 S + 200) with S = sum_{j<=200} j^-2.
    double S = 0.0;
    for (int j = 1; j <= 200; ++j) S += 1.0 / (static_cast<double>(j) * j);
    CHECK(out.final_means[0] == doctest::Approx((S + 200.0) / (10.0 * S + 200.0)).epsilon(1e-12));
    for (std::size_t b = 1; b < out.final_means.size(); ++b)
      CHECK(out.final_means[b] == doctest::Approx(S / (10.0 * S + 200.0)).epsilon(1e-12));
  }

  TEST_CASE("extraction drops bin 1 and groups consecutive runs") {
    // Bins: 1 (discarded), then {2} and {4} exceed the threshold separately.
    const std::vector<double> means = {0.45, 0.3, 0.001, 0.2, 0.049};
    const auto freqs = extract_frequencies(means, 0.05);
    REQUIRE(freqs.size() == 2);
    CHECK(freqs[0].frequency == doctest::Approx(0.3));
    CHECK(freqs[0].bins == std::vector<int>{2});
    CHECK(freqs[1].frequency == doctest::Approx(0.2));
    CHECK(freqs[1].bins == std::vector<int>{4});
    // Adjacent qualifying bins merge into one group.
    const auto merged = extract_frequencies({0.4, 0.25, 0.35, 0.0}, 0.05);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].frequency == doctest::Approx(0.6));
    CHECK(merged[0].bins == std::vector<int>{2, 3});
  }

  TEST_CASE("experiment presets") {
    const auto a = gen_single_freq(300, 6, 5.0);
    CHECK(a.size() == 300);
    CHECK(a == gen_single_freq(300, 6, 5.0));
    CHECK(a != gen_single_freq(300, 7, 5.0));
    // The three-tone preset is a fixed deterministic design.
    const auto m = gen_mult_freq(100, 1);
    CHECK(m == gen_mult_freq(100, 99));
    CHECK(m.size() == 100);
    const double t1 = 1.0;
    const double expect = 2.0 * std::cos(2.0 * 3.14159265358979323846 * 0.06 * t1) +
                          3.0 * std::sin(2.0 * 3.14159265358979323846 * 0.06 * t1) +
                          4.0 * std::cos(2.0 * 3.14159265358979323846 * 0.10 * t1) +
                          5.0 * std::sin(2.0 * 3.14159265358979323846 * 0.10 * t1) +
                          6.0 * std::cos(2.0 * 3.14159265358979323846 * 0.40 * t1) +
                          7.0 * std::sin(2.0 * 3.14159265358979323846 * 0.40 * t1);
    CHECK(m[0] == doctest::Approx(expect).epsilon(1e-12));
  }
}
