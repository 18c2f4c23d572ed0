#include "rbstat/generators.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <random>

namespace rbstat {

std::vector<double> gen_ar1(std::size_t n, double rho, std::uint64_t seed) {
  if (n < 1) throw input_error("gen_ar1: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(n);
  x[0] = u(rng);
  for (std::size_t t = 1; t < n; ++t) x[t] = rho * x[t - 1] + gauss(rng);
  return x;
}

std::vector<double> gen_ar2(std::size_t n, double alpha, double beta, std::uint64_t seed) {
  if (n < 3) throw input_error("gen_ar2: n must be >= 3");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(n, 0.0);  // x_1 = x_2 = 0
  for (std::size_t t = 2; t < n; ++t) {
    x[t] = alpha * x[t - 1] + beta * x[t - 2] + gauss(rng);
  }
  return x;
}

bool is_stationary_ar2(double alpha, double beta) {
  return (alpha + beta < 1.0) && (beta - alpha < 1.0) && (beta > -1.0);
}

std::vector<double> gen_arch1(std::size_t n, double omega, double alpha, std::uint64_t seed) {
  if (omega <= 0.0 || alpha < 0.0) throw input_error("gen_arch1: need omega > 0 and alpha >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(n, 0.0);  // x_1 = 0
  for (std::size_t t = 1; t < n; ++t) {
    const double sigma2 = omega + alpha * x[t - 1] * x[t - 1];
    x[t] = std::sqrt(sigma2) * gauss(rng);
  }
  return x;
}

std::vector<double> gen_garch11(std::size_t n, double omega, double alpha, double beta,
                                std::uint64_t seed) {
  if (omega <= 0.0 || alpha < 0.0 || beta < 0.0) {
    throw input_error("gen_garch11: need omega > 0 and alpha, beta >= 0");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(n, 0.0);
  double sigma2 = 0.0;  // sigma_1 = 0
  for (std::size_t t = 1; t < n; ++t) {
    sigma2 = omega + alpha * x[t - 1] * x[t - 1] + beta * sigma2;
    x[t] = std::sqrt(sigma2) * gauss(rng);
  }
  return x;
}

double bessel_k1(double x) {
  if (x <= 0.0) throw input_error("bessel_k1: argument must be > 0");
  return std::cyl_bessel_k(1.0, x);
}

namespace {

double sq(double v) { return v * v; }

double sqexp_cov(const Point& a, const Point& b) {
  return std::exp(-5.0 * (sq(a.x - b.x) + sq(a.y - b.y)));
}

double warped_cov(const Point& a, const Point& b) {
  return std::exp(-5.0 * (sq(std::sqrt(a.x) - std::sqrt(b.x)) +
                          sq(std::sqrt(a.y) - std::sqrt(b.y))));
}

// 2x2 location-dependent shape matrix Sigma(s/lambda) = Gamma Lambda Gamma^T
// with Gamma = [[g1, -g2], [g2, g1]] and Lambda = diag(1, 1/2).
struct Shape2x2 {
  double a, b, d;  // [[a, b], [b, d]]
  double det() const { return a * d - b * b; }
};

Shape2x2 ns2_shape(const Point& s, double lambda) {
  const double u = s.x / lambda, v = s.y / lambda;
  const double g1 = std::log(u + 0.75);
  const double g2 = u * u + v * v;
  return {g1 * g1 + 0.5 * g2 * g2, 0.5 * g1 * g2, g2 * g2 + 0.5 * g1 * g1};
}

double ns2_cov(const Point& s1, const Point& s2, double lambda) {
  const Shape2x2 S1 = ns2_shape(s1, lambda);
  const Shape2x2 S2 = ns2_shape(s2, lambda);
  const Shape2x2 sum{S1.a + S2.a, S1.b + S2.b, S1.d + S2.d};
  const Shape2x2 avg{0.5 * sum.a, 0.5 * sum.b, 0.5 * sum.d};
  const double dx = s1.x - s2.x, dy = s1.y - s2.y;
  const double det_sum = sum.det();
  // Q = 2 h^T (Sigma1 + Sigma2)^{-1} h via the 2x2 closed-form inverse.
  const double q = 2.0 * (sum.d * dx * dx - 2.0 * sum.b * dx * dy + sum.a * dy * dy) / det_sum;
  return std::pow(S1.det(), 0.25) * std::pow(S2.det(), 0.25) / std::sqrt(avg.det()) *
         std::exp(-std::sqrt(q));
}

}  // namespace

double CovKernel::operator()(const Point& s1, const Point& s2) const {
  const double d = std::hypot(s1.x - s2.x, s1.y - s2.y);
  switch (kind) {
    case Kind::sqexp_stationary:
      return sqexp_cov(s1, s2);
    case Kind::sqrt_warped:
      return warped_cov(s1, s2);
    case Kind::mixture:
      return p * sqexp_cov(s1, s2) + (1.0 - p) * warped_cov(s1, s2);
    case Kind::whittle:
      return d == 0.0 ? 1.0 : (d / psi) * bessel_k1(d / psi);
    case Kind::exponential:
      return sigma2 * std::exp(-d / psi);
    case Kind::matern: {
      if (d == 0.0) return sigma2;
      if (nu == 0.5) return sigma2 * std::exp(-d / psi);
      const double z = d / psi;
      return sigma2 * std::pow(2.0, 1.0 - nu) / std::tgamma(nu) * std::pow(z, nu) *
             std::cyl_bessel_k(nu, z);
    }
    case Kind::ns2_anisotropic:
      return ns2_cov(s1, s2, lambda);
  }
  throw input_error("CovKernel: unknown kind");
}

CovKernel CovKernel::sqexp() { return {}; }
CovKernel CovKernel::warped() {
  CovKernel k;
  k.kind = Kind::sqrt_warped;
  return k;
}
CovKernel CovKernel::mixture_of(double p) {
  CovKernel k;
  k.kind = Kind::mixture;
  k.p = p;
  return k;
}
CovKernel CovKernel::whittle_of(double psi) {
  CovKernel k;
  k.kind = Kind::whittle;
  k.psi = psi;
  return k;
}
CovKernel CovKernel::exponential_of(double psi, double sigma2) {
  CovKernel k;
  k.kind = Kind::exponential;
  k.psi = psi;
  k.sigma2 = sigma2;
  return k;
}
CovKernel CovKernel::matern_of(double sigma2, double psi, double nu) {
  CovKernel k;
  k.kind = Kind::matern;
  k.sigma2 = sigma2;
  k.psi = psi;
  k.nu = nu;
  return k;
}
CovKernel CovKernel::ns2_of(double lambda) {
  CovKernel k;
  k.kind = Kind::ns2_anisotropic;
  k.lambda = lambda;
  return k;
}

namespace {

std::vector<double> kernel_matrix_impl(const CovKernel& k, const std::vector<Point>& loc,
                                       bool parallel) {
  const std::size_t n = loc.size();
  std::vector<double> m(n * n);
  const auto row = [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = k(loc[i], loc[j]);
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) row(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) row(i);
  }
  return m;
}

// Lower Cholesky factor with a jitter ladder 0, 1e-10, ..., 1e-6 on the
// diagonal.
Eigen::MatrixXd cholesky_with_jitter(std::vector<double> m, std::size_t n) {
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mat(
      m.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Eigen::MatrixXd work = mat;
  for (double jitter : {0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6}) {
    Eigen::MatrixXd trial = work;
    if (jitter > 0.0) trial.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(trial);
    if (llt.info() == Eigen::Success) return llt.matrixL();
  }
  throw singular_kernel_error("gp_sample: Cholesky failed after maximum jitter");
}

}  // namespace

std::vector<double> kernel_matrix(const CovKernel& k, const std::vector<Point>& locations) {
  return kernel_matrix_impl(k, locations, true);
}

std::vector<double> kernel_matrix_serial(const CovKernel& k, const std::vector<Point>& locations) {
  return kernel_matrix_impl(k, locations, false);
}

std::vector<double> gp_sample(const CovKernel& k, const std::vector<Point>& locations,
                              std::uint64_t seed) {
  const std::size_t n = locations.size();
  if (n == 0) throw input_error("gp_sample: no locations");
  const Eigen::MatrixXd L = cholesky_with_jitter(kernel_matrix(k, locations), n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd z(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) z[static_cast<Eigen::Index>(i)] = gauss(rng);
  const Eigen::VectorXd x = L * z;
  return {x.data(), x.data() + n};
}

std::vector<Point> sample_warped_locations(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> out(n);
  for (auto& p : out) {
    p.x = std::sqrt(u(rng));
    p.y = std::sqrt(u(rng));
  }
  return out;
}

std::vector<Point> sample_uniform_locations(std::size_t n, const Point& lo, const Point& hi,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(lo.x, hi.x);
  std::uniform_real_distribution<double> uy(lo.y, hi.y);
  std::vector<Point> out(n);
  for (auto& p : out) {
    p.x = ux(rng);
    p.y = uy(rng);
  }
  return out;
}

std::vector<double> gen_spacetime(const CovKernel& spatial, const SpacetimeConfig& cfg,
                                  const std::vector<Point>& locations, int T, std::uint64_t seed) {
  if (T < 1) throw input_error("gen_spacetime: T must be >= 1");
  const std::size_t m = locations.size();
  if (m == 0) throw input_error("gen_spacetime: no locations");
  const Eigen::MatrixXd L = cholesky_with_jitter(kernel_matrix(spatial, locations), m);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> out(static_cast<std::size_t>(T) * m);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));  // X_{(s,0)} = 0
  Eigen::VectorXd eps_prev = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  Eigen::VectorXd z(static_cast<Eigen::Index>(m));
  for (int t = 1; t <= T; ++t) {
    for (std::size_t i = 0; i < m; ++i) z[static_cast<Eigen::Index>(i)] = gauss(rng);
    const Eigen::VectorXd eps = L * z;
    const double mod = cfg.modulation ? cfg.modulation(t) : 1.0;
    Eigen::VectorXd next = cfg.rho_t * x + mod * eps;
    if (cfg.lag_product) next += 0.4 * x.cwiseProduct(eps_prev);
    x = next;
    eps_prev = eps;
    for (std::size_t i = 0; i < m; ++i) {
      out[static_cast<std::size_t>(t - 1) * m + i] = x[static_cast<Eigen::Index>(i)];
    }
  }
  return out;
}

}  // namespace rbstat
