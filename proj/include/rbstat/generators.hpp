#ifndef RBSTAT_GENERATORS_HPP
#define RBSTAT_GENERATORS_HPP

// Seeded simulators: AR/ARCH/GARCH time series, Gaussian random fields over
// a library of covariance kernels, and separable spatio-temporal fields.

#include <cstdint>
#include <functional>
#include <vector>

#include "rbstat/common.hpp"

namespace rbstat {

// ---------------------------------------------------------------------------
// Time series
// ---------------------------------------------------------------------------

// X_0 ~ U(-1,1); X_t = rho X_{t-1} + e_t, e_t iid N(0,1).  Returns
// (X_0, ..., X_{n-1}).
std::vector<double> gen_ar1(std::size_t n, double rho, std::uint64_t seed);

// x_1 = x_2 = 0; x_t = alpha x_{t-1} + beta x_{t-2} + e_t.
std::vector<double> gen_ar2(std::size_t n, double alpha, double beta, std::uint64_t seed);

// Stationarity region: alpha + beta < 1, beta - alpha < 1, beta > -1.
bool is_stationary_ar2(double alpha, double beta);

// x_1 = 0; sigma^2_t = omega + alpha x^2_{t-1}; x_t = sigma_t e_t.
std::vector<double> gen_arch1(std::size_t n, double omega, double alpha, std::uint64_t seed);

// x_1 = 0, sigma_1 = 0; sigma^2_t = omega + alpha x^2_{t-1} + beta sigma^2_{t-1}.
std::vector<double> gen_garch11(std::size_t n, double omega, double alpha, double beta,
                                std::uint64_t seed);

// ---------------------------------------------------------------------------
// Covariance kernels and Gaussian fields
// ---------------------------------------------------------------------------

double bessel_k1(double x);  // modified Bessel function K_1, x > 0

struct CovKernel {
  enum class Kind {
    sqexp_stationary,   // exp(-5 ||s1 - s2||^2)
    sqrt_warped,        // exp(-5 ||sqrt(s1) - sqrt(s2)||^2) (componentwise sqrt)
    mixture,            // p * sqexp + (1-p) * sqrt_warped
    whittle,            // (d/psi) K_1(d/psi), value 1 at d = 0
    exponential,        // sigma2 * exp(-d/psi)
    matern,             // sigma2 2^{1-nu}/Gamma(nu) (d/psi)^nu K_nu(d/psi)
    ns2_anisotropic     // anisotropic nonstationary kernel, scale lambda
  };
  Kind kind = Kind::sqexp_stationary;
  double p = 1.0;        // mixture weight
  double psi = 1.0;      // range
  double sigma2 = 1.0;   // variance
  double nu = 0.5;       // Matern smoothness
  double lambda = 1.0;   // ns2 coordinate scale

  double operator()(const Point& s1, const Point& s2) const;

  static CovKernel sqexp();
  static CovKernel warped();
  static CovKernel mixture_of(double p);
  static CovKernel whittle_of(double psi);
  static CovKernel exponential_of(double psi, double sigma2 = 1.0);
  static CovKernel matern_of(double sigma2, double psi, double nu);
  static CovKernel ns2_of(double lambda);
};

// Dense covariance matrix over the locations (row-major n x n); OpenMP
// parallel over rows with a serial reference for testing.
std::vector<double> kernel_matrix(const CovKernel& k, const std::vector<Point>& locations);
std::vector<double> kernel_matrix_serial(const CovKernel& k, const std::vector<Point>& locations);

// Zero-mean Gaussian field draw: Cholesky of kernel matrix + jitter ladder
// (1e-10 .. 1e-6), then L z with z iid standard normal.
std::vector<double> gp_sample(const CovKernel& k, const std::vector<Point>& locations,
                              std::uint64_t seed);

// Locations s = sqrt(s_tilde), s_tilde ~ U([0,1]^2); the square-root warp the
// experiments use for numerical stability.
std::vector<Point> sample_warped_locations(std::size_t n, std::uint64_t seed);
std::vector<Point> sample_uniform_locations(std::size_t n, const Point& lo, const Point& hi,
                                            std::uint64_t seed);

// ---------------------------------------------------------------------------
// Separable spatio-temporal fields
// ---------------------------------------------------------------------------

struct SpacetimeConfig {
  double rho_t = 0.5;                          // AR coefficient in time
  std::function<double(int)> modulation;       // m(t); identity when empty
  bool lag_product = false;                    // add 0.4 * X_{t-1} .* e_{t-1}
};

// X_{(s,0)} = 0; X_{(s,t)} = rho_t X_{(s,t-1)} + m(t) e_{(s,t)}, with
// e_{(.,t)} iid-in-time draws from the spatial kernel.  Returns a row-major
// (T x m) array of field slices for t = 1..T.
std::vector<double> gen_spacetime(const CovKernel& spatial, const SpacetimeConfig& cfg,
                                  const std::vector<Point>& locations, int T, std::uint64_t seed);

}  // namespace rbstat

#endif  // RBSTAT_GENERATORS_HPP
