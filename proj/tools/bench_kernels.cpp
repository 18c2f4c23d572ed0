// Micro-benchmark comparing the OpenMP kernels against their serial
// references: dense covariance-matrix assembly and exact nearest-neighbor
// distances.  Also verifies that both variants agree bit-for-bit.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rbstat/empirical.hpp"
#include "rbstat/generators.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    fn();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 2000;
  int reps = 3;
  if (argc > 1) n = static_cast<std::size_t>(std::stoul(argv[1]));
  if (argc > 2) reps = std::stoi(argv[2]);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif
  std::printf("n: %zu, best of %d\n\n", n, reps);

  const auto locations = rbstat::sample_warped_locations(n, 12345);
  const auto kernel = rbstat::CovKernel::sqexp();

  std::vector<double> m_par, m_ser;
  const double t_kp = time_best_of(reps, [&] { m_par = rbstat::kernel_matrix(kernel, locations); });
  const double t_ks =
      time_best_of(reps, [&] { m_ser = rbstat::kernel_matrix_serial(kernel, locations); });
  std::printf("kernel_matrix   parallel %8.4f s   serial %8.4f s   speedup %5.2fx   %s\n", t_kp,
              t_ks, t_ks / t_kp, bitwise_equal(m_par, m_ser) ? "identical" : "MISMATCH");

  std::vector<double> d_par, d_ser;
  const double t_np = time_best_of(reps, [&] { d_par = rbstat::nn_distances(locations); });
  const double t_ns =
      time_best_of(reps, [&] { d_ser = rbstat::nn_distances_serial(locations); });
  std::printf("nn_distances    parallel %8.4f s   serial %8.4f s   speedup %5.2fx   %s\n", t_np,
              t_ns, t_ns / t_np, bitwise_equal(d_par, d_ser) ? "identical" : "MISMATCH");

  return (bitwise_equal(m_par, m_ser) && bitwise_equal(d_par, d_ser)) ? 0 : 1;
}
