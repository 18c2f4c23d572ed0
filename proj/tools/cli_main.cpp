// rbstat command-line front end: data-generation presets, the four detector
// families, MCMC diagnosis, frequency recovery, and C1 calibration.
//
// Exit codes: 0 success, 2 input/usage error, 3 calibration failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rbstat/bounds.hpp"
#include "rbstat/detect.hpp"
#include "rbstat/dp_independence.hpp"
#include "rbstat/frequency.hpp"
#include "rbstat/generators.hpp"
#include "rbstat/io.hpp"
#include "rbstat/partition.hpp"
#include "rbstat/point_process.hpp"
#include "rbstat/tmcmc.hpp"

namespace {

using rbstat::ordered_json;

struct CommonOpts {
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
  std::string out;
  std::string trajectory;
  rbstat::VerdictConfig verdict;
};

struct BoundOpts {
  std::string policy = "nonparametric";
  double c1 = 1.0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "RNG seed (required for stochastic subcommands)")
      ->each([&o](const std::string&) { o.seed_given = true; });
  cmd->add_option("--threads", o.threads, "OpenMP thread count (0 = hardware default)");
  cmd->add_option("--out", o.out, "report JSON path (default: stdout)");
  cmd->add_option("--trajectory", o.trajectory, "trajectory CSV path");
  cmd->add_option("--theta-hi", o.verdict.theta_hi, "stationary threshold");
  cmd->add_option("--theta-lo", o.verdict.theta_lo, "nonstationary threshold");
  cmd->add_option("--tail-fraction", o.verdict.tail_fraction, "verdict tail fraction");
}

void add_bound(CLI::App* cmd, BoundOpts& b) {
  cmd->add_option("--bound", b.policy, "bound policy")
      ->check(CLI::IsMember({"nonparametric", "parametric", "adaptive"}));
  cmd->add_option("--c1", b.c1, "nonparametric C1");
}

void apply_threads(const CommonOpts& o) {
#ifdef _OPENMP
  if (o.threads > 0) omp_set_num_threads(o.threads);
#else
  (void)o;
#endif
}

void require_seed(const CommonOpts& o) {
  if (!o.seed_given) throw rbstat::input_error("--seed is required for this subcommand");
}

// Benchmark-derived threshold sequence for the AR(1) policies; nonparametric
// needs only C1.  `series` supplies the plug-in AR coefficient, `n_block` and
// `n_stages` shape the benchmark trajectory.
rbstat::BoundSequence make_bound_sequence(const BoundOpts& b, const std::vector<double>& series,
                                          std::size_t n_block, std::size_t n_stages,
                                          std::uint64_t seed) {
  if (b.policy == "nonparametric") return rbstat::BoundSequence::nonparametric(b.c1);
  const double rho_hat = rbstat::ar1_mle(series);
  auto ctilde =
      rbstat::benchmark_ctilde(n_block, n_stages, rbstat::derive_seed(seed, 0xb057ULL));
  if (b.policy == "parametric") {
    return rbstat::BoundSequence::parametric_ar1(std::move(ctilde), rho_hat);
  }
  return rbstat::BoundSequence::adaptive_ar1(std::move(ctilde), rho_hat);
}

void emit_report(const CommonOpts& o, const ordered_json& j) {
  if (o.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    rbstat::write_json(o.out, j);
  }
}

ordered_json base_config(const CommonOpts& o, const BoundOpts* b) {
  ordered_json cfg;
  if (b) {
    cfg["bound"] = b->policy;
    cfg["c1"] = b->c1;
  }
  cfg["theta_hi"] = o.verdict.theta_hi;
  cfg["theta_lo"] = o.verdict.theta_lo;
  cfg["tail_fraction"] = o.verdict.tail_fraction;
  return cfg;
}

std::vector<double> parse_boundaries(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  if (out.size() < 2) throw rbstat::input_error("--bands needs at least two boundaries");
  return out;
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenOpts {
  std::string preset;
  std::size_t n = 1000;       // series length / GP location count
  double rho = 0.5;
  double alpha = 0.5, beta = 0.3, omega = 1.0;
  double p = 0.5;
  double psi = 1.0, sigma2 = 1.0, nu = 0.5;
  double lambda = 1.0;        // intensity (hpp) or coordinate scale (st-*)
  bool lambda_given = false;
  std::size_t m = 100;        // spatio-temporal locations
  int T = 200;
  std::string kernel = "exponential";
  double kappa = 10.0, mu = 5.0;
  int m_fixed = 5;
  double r_disc = 0.1;
  std::vector<double> window{0.0, 1.0, 0.0, 1.0};
  double intensity_scale = 100.0;
  int grid_res = 64;
  double lgcp_mean = 4.0;
  double gamma = 0.5, interaction_radius = 0.05;
  long sweeps = 100000;
  int d = 100;
  double ell = 2.4;
  long iters = 100000;
  double mu2 = 10.0;
  double sigma = 5.0;
};

rbstat::CovKernel kernel_from_name(const GenOpts& g) {
  if (g.kernel == "exponential") return rbstat::CovKernel::exponential_of(g.psi, g.sigma2);
  if (g.kernel == "whittle") return rbstat::CovKernel::whittle_of(g.psi);
  if (g.kernel == "sqexp") return rbstat::CovKernel::sqexp();
  if (g.kernel == "warped") return rbstat::CovKernel::warped();
  if (g.kernel == "mixture") return rbstat::CovKernel::mixture_of(g.p);
  if (g.kernel == "matern") return rbstat::CovKernel::matern_of(g.sigma2, g.psi, g.nu);
  if (g.kernel == "ns2") return rbstat::CovKernel::ns2_of(g.lambda);
  throw rbstat::input_error("unknown kernel: " + g.kernel);
}

void write_spacetime_preset(const GenOpts& g, const CommonOpts& o,
                            const rbstat::CovKernel& spatial, const rbstat::SpacetimeConfig& cfg,
                            const std::vector<rbstat::Point>& locations) {
  const auto field =
      rbstat::gen_spacetime(spatial, cfg, locations, g.T, rbstat::derive_seed(o.seed, 1));
  rbstat::SpacetimeData data;
  for (int t = 0; t < g.T; ++t) {
    for (std::size_t i = 0; i < locations.size(); ++i) {
      data.locations.push_back(locations[i]);
      data.times.push_back(static_cast<double>(t + 1));
      data.values.push_back(field[static_cast<std::size_t>(t) * locations.size() + i]);
    }
  }
  rbstat::write_spacetime_csv(o.out, data);
}

int run_generate(const GenOpts& g, const CommonOpts& o) {
  require_seed(o);
  if (o.out.empty()) throw rbstat::input_error("generate requires --out");
  const rbstat::Window w{g.window[0], g.window[1], g.window[2], g.window[3]};

  if (g.preset == "ar1") {
    rbstat::write_value_csv(o.out, rbstat::gen_ar1(g.n, g.rho, o.seed));
  } else if (g.preset == "ar2") {
    rbstat::write_value_csv(o.out, rbstat::gen_ar2(g.n, g.alpha, g.beta, o.seed));
  } else if (g.preset == "arch") {
    rbstat::write_value_csv(o.out, rbstat::gen_arch1(g.n, g.omega, g.alpha, o.seed));
  } else if (g.preset == "garch") {
    rbstat::write_value_csv(o.out, rbstat::gen_garch11(g.n, g.omega, g.alpha, g.beta, o.seed));
  } else if (g.preset == "gp-stationary" || g.preset == "gp-nonstationary" ||
             g.preset == "gp-mixture" || g.preset == "gp-kernel") {
    const auto locations =
        rbstat::sample_warped_locations(g.n, rbstat::derive_seed(o.seed, 0));
    rbstat::CovKernel k;
    if (g.preset == "gp-stationary") {
      k = rbstat::CovKernel::sqexp();
    } else if (g.preset == "gp-nonstationary") {
      k = rbstat::CovKernel::warped();
    } else if (g.preset == "gp-mixture") {
      k = rbstat::CovKernel::mixture_of(g.p);
    } else {
      k = kernel_from_name(g);
    }
    const auto values = rbstat::gp_sample(k, locations, rbstat::derive_seed(o.seed, 1));
    rbstat::write_spatial_csv(o.out, locations, values);
  } else if (g.preset == "st-separable") {
    // Separable AR-in-time field on warped [0,1]^2 locations.
    const auto locations =
        rbstat::sample_warped_locations(g.m, rbstat::derive_seed(o.seed, 0));
    rbstat::SpacetimeConfig cfg;
    cfg.rho_t = g.rho;
    write_spacetime_preset(g, o, kernel_from_name(g), cfg, locations);
  } else if (g.preset == "st-s1" || g.preset == "st-s2" || g.preset == "st-ns1" ||
             g.preset == "st-ns2" || g.preset == "st-ns3") {
    const double lam = g.lambda_given ? g.lambda
                       : (g.preset == "st-ns2" || g.preset == "st-ns3") ? 20.0
                                                                        : 5.0;
    const rbstat::Point lo{-lam / 2.0, -lam / 2.0}, hi{lam / 2.0, lam / 2.0};
    const auto locations =
        rbstat::sample_uniform_locations(g.m, lo, hi, rbstat::derive_seed(o.seed, 0));
    rbstat::CovKernel spatial = (g.preset == "st-ns2" || g.preset == "st-ns3")
                                    ? rbstat::CovKernel::ns2_of(lam)
                                    : kernel_from_name(g);
    rbstat::SpacetimeConfig cfg;
    cfg.rho_t = 0.5;
    cfg.lag_product = (g.preset == "st-s2" || g.preset == "st-ns2");
    if (g.preset == "st-ns1" || g.preset == "st-ns3") {
      cfg.modulation = [](int t) {
        return 1.3 + std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / 400.0);
      };
    }
    write_spacetime_preset(g, o, spatial, cfg, locations);
  } else if (g.preset == "hpp") {
    const double lam = g.lambda_given ? g.lambda : 1.0;
    rbstat::write_pattern_csv(o.out, rbstat::gen_hpp(lam, w, o.seed));
  } else if (g.preset == "ihpp-linear") {
    const double scale = g.intensity_scale;
    const auto fn = [scale](double x, double y) { return scale * (x + y); };
    double lambda_max = 0.0;
    for (const double x : {w.x0, w.x1}) {
      for (const double y : {w.y0, w.y1}) lambda_max = std::max(lambda_max, fn(x, y));
    }
    rbstat::write_pattern_csv(o.out, rbstat::gen_ihpp(fn, lambda_max, w, o.seed));
  } else if (g.preset == "matern-cluster" || g.preset == "thomas" ||
             g.preset == "neyman-scott") {
    rbstat::ClusterParams params;
    params.kind = g.preset == "matern-cluster" ? rbstat::ClusterKind::matern
                  : g.preset == "thomas"       ? rbstat::ClusterKind::thomas
                                               : rbstat::ClusterKind::neyman_scott;
    params.kappa = g.kappa;
    params.mu = g.mu;
    params.m_fixed = g.m_fixed;
    params.r_disc = g.r_disc;
    params.sigma2 = g.sigma2;
    rbstat::write_pattern_csv(o.out, rbstat::gen_cluster(params, w, o.seed));
  } else if (g.preset == "lgcp") {
    const double mean = g.lgcp_mean;
    const auto mean_fn = [mean](double, double) { return mean; };
    const auto kernel = rbstat::CovKernel::exponential_of(g.psi, g.sigma2);
    rbstat::write_pattern_csv(o.out, rbstat::gen_lgcp(mean_fn, kernel, g.grid_res, w, o.seed));
  } else if (g.preset == "strauss") {
    rbstat::write_pattern_csv(
        o.out, rbstat::gen_strauss(g.beta, g.gamma, g.interaction_radius, w, o.seed, g.sweeps));
  } else if (g.preset == "tmcmc-chain") {
    rbstat::TmcmcConfig cfg;
    cfg.d = g.d;
    cfg.ell = g.ell;
    cfg.seed = o.seed;
    const rbstat::LogTarget target =
        g.kernel == "mixture" ? rbstat::normal_mixture(g.mu2) : rbstat::std_normal_product(cfg.d);
    if (g.kernel == "mixture") cfg.d = 1;
    std::vector<double> init(static_cast<std::size_t>(cfg.d), 1.0);
    rbstat::write_value_csv(o.out,
                            rbstat::tmcmc_run(std::move(init), target, cfg, g.iters)
                                .first_coordinate);
  } else if (g.preset == "single-freq") {
    rbstat::write_value_csv(o.out, rbstat::gen_single_freq(g.n, o.seed, g.sigma));
  } else if (g.preset == "mult-freq") {
    rbstat::write_value_csv(o.out, rbstat::gen_mult_freq(g.n, o.seed));
  } else {
    throw rbstat::input_error("unknown preset: " + g.preset);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// detectors
// ---------------------------------------------------------------------------

struct DetectOpts {
  std::string in;
  std::string format = "ts";  // ts | spatial | spacetime
  std::size_t blocks = 50;    // observations per block (1-D index sets)
  int clusters = 50;
  int min_size = 10;
  std::string bands = "0,0.4,0.7,0.9,2,3";
  double alpha = 1.0;         // DP strength (detect-poisson)
};

int run_detect_stationarity(const DetectOpts& d, const BoundOpts& b, const CommonOpts& o) {
  rbstat::DetectionReport report;
  ordered_json cfg = base_config(o, &b);
  cfg["in"] = d.in;
  cfg["format"] = d.format;
  if (d.format == "ts") {
    const auto values = rbstat::read_value_csv(d.in);
    const auto partition = rbstat::sequential_blocks(values.size(), d.blocks);
    cfg["blocks"] = d.blocks;
    report = rbstat::detect_strict(
        values, partition,
        make_bound_sequence(b, values, d.blocks, static_cast<std::size_t>(partition.K), o.seed),
        o.verdict);
  } else if (d.format == "spatial" || d.format == "spacetime") {
    require_seed(o);  // k-means initialization is seeded
    std::vector<double> values;
    rbstat::Partition partition;
    if (d.format == "spatial") {
      const auto data = rbstat::read_spatial_csv(d.in);
      values = data.values;
      partition = rbstat::kmeans_partition(data.locations, d.clusters, d.min_size,
                                           rbstat::derive_seed(o.seed, 0x4b));
    } else {
      const auto data = rbstat::read_spacetime_csv(d.in);
      values = data.values;
      std::vector<double> coords;
      coords.reserve(values.size() * 3);
      for (std::size_t i = 0; i < values.size(); ++i) {
        coords.push_back(data.locations[i].x);
        coords.push_back(data.locations[i].y);
        coords.push_back(data.times[i]);
      }
      partition = rbstat::kmeans_partition(coords, 3, d.clusters, d.min_size,
                                           rbstat::derive_seed(o.seed, 0x4b));
    }
    cfg["clusters"] = d.clusters;
    cfg["min_size"] = d.min_size;
    const std::size_t n_block = values.size() / static_cast<std::size_t>(partition.K);
    report = rbstat::detect_strict(
        values, partition,
        make_bound_sequence(b, values, std::max<std::size_t>(n_block, 2),
                            static_cast<std::size_t>(partition.K), o.seed),
        o.verdict);
  } else {
    throw rbstat::input_error("unknown --format: " + d.format);
  }
  emit_report(o, rbstat::report_to_json(report, cfg, o.seed));
  if (!o.trajectory.empty()) rbstat::write_trajectory_csv(o.trajectory, report);
  return 0;
}

int run_detect_covariance(const DetectOpts& d, const BoundOpts& b, const CommonOpts& o) {
  require_seed(o);
  std::vector<double> values;
  std::vector<rbstat::Point> locations;
  rbstat::Partition partition;
  if (d.format == "spacetime") {
    const auto data = rbstat::read_spacetime_csv(d.in);
    values = data.values;
    locations = data.locations;
    std::vector<double> coords;
    coords.reserve(values.size() * 3);
    for (std::size_t i = 0; i < values.size(); ++i) {
      coords.push_back(data.locations[i].x);
      coords.push_back(data.locations[i].y);
      coords.push_back(data.times[i]);
    }
    partition = rbstat::kmeans_partition(coords, 3, d.clusters, d.min_size,
                                         rbstat::derive_seed(o.seed, 0x4b));
  } else {
    const auto data = rbstat::read_spatial_csv(d.in);
    values = data.values;
    locations = data.locations;
    partition = rbstat::kmeans_partition(locations, d.clusters, d.min_size,
                                         rbstat::derive_seed(o.seed, 0x4b));
  }
  const auto boundaries = parse_boundaries(d.bands);
  const std::size_t n_block =
      std::max<std::size_t>(values.size() / static_cast<std::size_t>(partition.K), 2);
  const auto make_bounds = [&]() {
    return make_bound_sequence(b, values, n_block, static_cast<std::size_t>(partition.K), o.seed);
  };
  const auto report =
      rbstat::detect_covariance(values, locations, partition, boundaries, make_bounds, o.verdict);

  ordered_json cfg = base_config(o, &b);
  cfg["in"] = d.in;
  cfg["format"] = d.format;
  cfg["clusters"] = d.clusters;
  cfg["min_size"] = d.min_size;
  cfg["bands"] = d.bands;
  emit_report(o, rbstat::covariance_report_to_json(report, cfg, o.seed));
  return 0;
}

int run_mcmc_diagnose(const DetectOpts& d, const BoundOpts& b, const CommonOpts& o) {
  const auto chain = rbstat::read_value_csv(d.in);
  const std::size_t n_stages = d.blocks > 0 ? chain.size() / d.blocks : 0;
  const auto report = rbstat::diagnose_convergence(
      chain, d.blocks,
      make_bound_sequence(b, chain, d.blocks, std::max<std::size_t>(n_stages, 1), o.seed),
      o.verdict);
  ordered_json cfg = base_config(o, &b);
  cfg["in"] = d.in;
  cfg["blocks"] = d.blocks;
  emit_report(o, rbstat::report_to_json(report, cfg, o.seed));
  if (!o.trajectory.empty()) rbstat::write_trajectory_csv(o.trajectory, report);
  return 0;
}

enum class PatternDetector { csr, poisson, pp_stationarity };

int run_pattern_detector(PatternDetector which, const DetectOpts& d, const BoundOpts& b,
                         const CommonOpts& o) {
  require_seed(o);
  const auto [pattern, have_window] = rbstat::read_pattern_csv(d.in);
  if (!have_window) {
    std::cerr << "warning: no window header in " << d.in << "; using the bounding box\n";
  }
  const std::uint64_t kmeans_seed = rbstat::derive_seed(o.seed, 0x4b);
  const std::size_t n_block =
      std::max<std::size_t>(pattern.points.size() / static_cast<std::size_t>(d.clusters), 2);
  auto bounds = make_bound_sequence(b, {}, n_block, static_cast<std::size_t>(d.clusters), o.seed);

  ordered_json cfg = base_config(o, &b);
  cfg["in"] = d.in;
  cfg["clusters"] = d.clusters;

  rbstat::DetectionReport report;
  if (which == PatternDetector::csr) {
    report = rbstat::detect_csr(pattern, d.clusters, std::move(bounds), o.verdict, kmeans_seed);
  } else if (which == PatternDetector::pp_stationarity) {
    report = rbstat::detect_pp_stationarity(pattern, d.clusters, std::move(bounds), o.verdict,
                                            kmeans_seed);
  } else {
    cfg["alpha"] = d.alpha;
    const auto clusters =
        rbstat::cluster_log_nn_distances(pattern, d.clusters, kmeans_seed);
    const auto ind = rbstat::detect_mutual_independence(clusters, d.alpha, std::move(bounds),
                                                        o.verdict,
                                                        rbstat::derive_seed(o.seed, 0xd9));
    cfg["stages_run"] = ind.stages_run;
    cfg["truncated"] = ind.truncated;
    report = ind.detection;
  }
  emit_report(o, rbstat::report_to_json(report, cfg, o.seed));
  if (!o.trajectory.empty()) rbstat::write_trajectory_csv(o.trajectory, report);
  return 0;
}

// ---------------------------------------------------------------------------
// detect-frequency
// ---------------------------------------------------------------------------

struct FreqOpts {
  std::string in;
  rbstat::FrequencyConfig cfg;
};

int run_detect_frequency(const FreqOpts& f, const CommonOpts& o) {
  const auto series = rbstat::read_value_csv(f.in);
  const auto traj = rbstat::run_frequency_recursion(series, f.cfg);
  const auto freqs = rbstat::extract_frequencies(traj.final_means, f.cfg.epsilon_group);

  ordered_json j;
  ordered_json arr = ordered_json::array();
  for (const auto& fe : freqs) {
    ordered_json rec;
    rec["frequency"] = fe.frequency;
    rec["bins"] = fe.bins;
    arr.push_back(std::move(rec));
  }
  j["frequencies"] = std::move(arr);
  j["final_means"] = traj.final_means;
  j["final_variances"] = traj.final_variances;
  ordered_json cfg = base_config(o, nullptr);
  cfg["in"] = f.in;
  cfg["r"] = f.cfg.r;
  cfg["multiplier"] = f.cfg.multiplier;
  cfg["M"] = f.cfg.M;
  cfg["infinite"] = f.cfg.infinite;
  cfg["epsilon_group"] = f.cfg.epsilon_group;
  cfg["center"] = f.cfg.center;
  j["config"] = std::move(cfg);
  j["seed"] = o.seed;
  j["version"] = rbstat::kVersion;
  emit_report(o, j);

  if (!o.trajectory.empty()) {
    // Per-bin posterior-mean snapshots for plotting.
    std::ofstream out(o.trajectory);
    if (!out) throw rbstat::input_error("cannot open file for writing: " + o.trajectory);
    out.precision(17);
    out << "snapshot";
    for (std::size_t m = 0; m < traj.final_means.size(); ++m) out << ",bin" << (m + 1);
    out << "\n";
    for (std::size_t i = 0; i < traj.mean_history.size(); ++i) {
      out << i;
      for (const double v : traj.mean_history[i]) out << "," << v;
      out << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// calibrate-c1
// ---------------------------------------------------------------------------

struct CalibrateOpts {
  std::string in;
  std::string in_alt;
  std::string mode = "min_for_stationary";
  std::string detector = "strict";  // strict | csr
  std::string format = "ts";
  std::size_t blocks = 50;
  int clusters = 50;
  int min_size = 10;
  double grid_min = 0.01, grid_max = 2.0, grid_step = 0.01;
};

std::vector<double> calibration_statistics(const CalibrateOpts& c, const std::string& path,
                                           const CommonOpts& o) {
  if (c.detector == "csr") {
    const auto pattern = rbstat::read_pattern_csv(path).first;
    return rbstat::csr_statistics(pattern, c.clusters, rbstat::derive_seed(o.seed, 0x4b));
  }
  if (c.format == "ts") {
    const auto values = rbstat::read_value_csv(path);
    return rbstat::strict_statistics(values, rbstat::sequential_blocks(values.size(), c.blocks));
  }
  const auto data = rbstat::read_spatial_csv(path);
  const auto partition = rbstat::kmeans_partition(data.locations, c.clusters, c.min_size,
                                                  rbstat::derive_seed(o.seed, 0x4b));
  return rbstat::strict_statistics(data.values, partition);
}

int run_calibrate(const CalibrateOpts& c, const CommonOpts& o) {
  rbstat::CalibrationMode mode;
  if (c.mode == "min_for_stationary") {
    mode = rbstat::CalibrationMode::min_for_stationary;
  } else if (c.mode == "max_for_nonstationary") {
    mode = rbstat::CalibrationMode::max_for_nonstationary;
  } else if (c.mode == "discriminating") {
    mode = rbstat::CalibrationMode::discriminating;
  } else {
    throw rbstat::input_error("unknown --mode: " + c.mode);
  }
  if (mode == rbstat::CalibrationMode::discriminating && c.in_alt.empty()) {
    throw rbstat::input_error("discriminating mode requires --in-alt");
  }

  const auto stats = calibration_statistics(c, c.in, o);
  const auto verdict_for = [&](const std::vector<double>& s) {
    return [&o, s](double c1) {
      return rbstat::run_detection(s, rbstat::BoundSequence::nonparametric(c1), o.verdict)
          .verdict;
    };
  };

  std::vector<double> grid;
  for (double v = c.grid_min; v <= c.grid_max + 1e-12; v += c.grid_step) grid.push_back(v);

  double c1 = 0.0;
  if (mode == rbstat::CalibrationMode::discriminating) {
    const auto stats_alt = calibration_statistics(c, c.in_alt, o);
    c1 = rbstat::calibrate_C1(verdict_for(stats), mode, grid, verdict_for(stats_alt));
  } else {
    c1 = rbstat::calibrate_C1(verdict_for(stats), mode, grid);
  }

  ordered_json j;
  j["c1"] = c1;
  ordered_json cfg = base_config(o, nullptr);
  cfg["in"] = c.in;
  if (!c.in_alt.empty()) cfg["in_alt"] = c.in_alt;
  cfg["mode"] = c.mode;
  cfg["detector"] = c.detector;
  cfg["format"] = c.format;
  cfg["blocks"] = c.blocks;
  cfg["clusters"] = c.clusters;
  j["config"] = std::move(cfg);
  j["seed"] = o.seed;
  j["version"] = rbstat::kVersion;
  emit_report(o, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recursive Bayesian stationarity, randomness, and frequency detection"};
  app.require_subcommand(1);

  CommonOpts common;
  BoundOpts bound;
  GenOpts gen;
  DetectOpts det;
  FreqOpts freq;
  CalibrateOpts cal;

  auto* c_gen = app.add_subcommand("generate", "simulate a preset dataset to CSV");
  c_gen->add_option("--preset", gen.preset, "preset name")->required();
  c_gen->add_option("--n", gen.n, "series length / location count");
  c_gen->add_option("--rho", gen.rho, "AR(1) / temporal coefficient");
  c_gen->add_option("--alpha", gen.alpha, "AR(2)/ARCH/GARCH alpha");
  c_gen->add_option("--beta", gen.beta, "AR(2)/GARCH beta (also Strauss beta)");
  c_gen->add_option("--omega", gen.omega, "ARCH/GARCH omega");
  c_gen->add_option("--p", gen.p, "mixture weight");
  c_gen->add_option("--psi", gen.psi, "kernel range");
  c_gen->add_option("--sigma2", gen.sigma2, "kernel variance / offspring variance");
  c_gen->add_option("--nu", gen.nu, "Matern smoothness");
  c_gen->add_option("--lambda", gen.lambda, "intensity (hpp) or coordinate scale (st-*)")
      ->each([&gen](const std::string&) { gen.lambda_given = true; });
  c_gen->add_option("--m", gen.m, "spatio-temporal location count");
  c_gen->add_option("--T", gen.T, "time points");
  c_gen->add_option("--kernel", gen.kernel, "spatial kernel / tmcmc target selector");
  c_gen->add_option("--kappa", gen.kappa, "parent intensity");
  c_gen->add_option("--mu", gen.mu, "mean offspring count");
  c_gen->add_option("--m-fixed", gen.m_fixed, "fixed offspring count");
  c_gen->add_option("--r", gen.r_disc, "cluster disc radius");
  c_gen->add_option("--window", gen.window, "window x0 x1 y0 y1")->expected(4);
  c_gen->add_option("--intensity-scale", gen.intensity_scale, "ihpp-linear scale");
  c_gen->add_option("--grid-res", gen.grid_res, "LGCP grid resolution");
  c_gen->add_option("--lgcp-mean", gen.lgcp_mean, "LGCP log-intensity mean");
  c_gen->add_option("--gamma", gen.gamma, "Strauss interaction");
  c_gen->add_option("--interaction-radius", gen.interaction_radius, "Strauss radius");
  c_gen->add_option("--sweeps", gen.sweeps, "Strauss proposals");
  c_gen->add_option("--d", gen.d, "chain dimension");
  c_gen->add_option("--ell", gen.ell, "proposal scale");
  c_gen->add_option("--iters", gen.iters, "chain iterations");
  c_gen->add_option("--mu2", gen.mu2, "mixture second mode");
  c_gen->add_option("--sigma", gen.sigma, "single-freq noise sd");
  add_common(c_gen, common);

  auto* c_strict = app.add_subcommand("detect-stationarity", "strict stationarity detection");
  c_strict->add_option("--in", det.in, "input CSV")->required();
  c_strict->add_option("--format", det.format, "ts | spatial | spacetime");
  c_strict->add_option("--blocks", det.blocks, "observations per block (ts)");
  c_strict->add_option("--clusters", det.clusters, "K-means clusters (spatial)");
  c_strict->add_option("--min-size", det.min_size, "minimum cluster size");
  add_bound(c_strict, bound);
  add_common(c_strict, common);

  auto* c_cov = app.add_subcommand("detect-covariance", "covariance stationarity over bands");
  c_cov->add_option("--in", det.in, "input CSV")->required();
  c_cov->add_option("--format", det.format, "spatial | spacetime");
  c_cov->add_option("--clusters", det.clusters, "K-means clusters");
  c_cov->add_option("--min-size", det.min_size, "minimum cluster size");
  c_cov->add_option("--bands", det.bands, "comma-separated band boundaries");
  add_bound(c_cov, bound);
  add_common(c_cov, common);

  auto* c_mcmc = app.add_subcommand("mcmc-diagnose", "MCMC convergence diagnosis");
  c_mcmc->add_option("--in", det.in, "chain CSV (value column)")->required();
  c_mcmc->add_option("--blocks", det.blocks, "samples per block");
  add_bound(c_mcmc, bound);
  add_common(c_mcmc, common);

  auto* c_csr = app.add_subcommand("detect-csr", "complete spatial randomness detection");
  c_csr->add_option("--in", det.in, "point-pattern CSV")->required();
  c_csr->add_option("--clusters", det.clusters, "K-means clusters");
  add_bound(c_csr, bound);
  add_common(c_csr, common);

  auto* c_poisson = app.add_subcommand("detect-poisson", "mutual independence of cluster marks");
  c_poisson->add_option("--in", det.in, "point-pattern CSV")->required();
  c_poisson->add_option("--clusters", det.clusters, "K-means clusters");
  c_poisson->add_option("--alpha", det.alpha, "DP strength");
  add_bound(c_poisson, bound);
  add_common(c_poisson, common);

  auto* c_pps = app.add_subcommand("detect-pp-stationarity", "point-pattern stationarity");
  c_pps->add_option("--in", det.in, "point-pattern CSV")->required();
  c_pps->add_option("--clusters", det.clusters, "K-means clusters");
  add_bound(c_pps, bound);
  add_common(c_pps, common);

  auto* c_freq = app.add_subcommand("detect-frequency", "oscillation frequency recovery");
  c_freq->add_option("--in", freq.in, "time-series CSV")->required();
  c_freq->add_option("--r", freq.cfg.r, "power exponent");
  c_freq->add_option("--M", freq.cfg.M, "bin count");
  c_freq->add_flag("--infinite", freq.cfg.infinite, "DP mode with geometric bins");
  c_freq->add_option("--multiplier", freq.cfg.multiplier, "post-power scale");
  c_freq->add_option("--epsilon", freq.cfg.epsilon_group, "grouping threshold");
  c_freq->add_flag("--center", freq.cfg.center, "subtract the series mean first");
  add_common(c_freq, common);

  auto* c_cal = app.add_subcommand("calibrate-c1", "calibrate the nonparametric C1");
  c_cal->add_option("--in", cal.in, "benchmark data CSV")->required();
  c_cal->add_option("--in-alt", cal.in_alt, "nonstationary benchmark (discriminating)");
  c_cal->add_option("--mode", cal.mode,
                    "min_for_stationary | max_for_nonstationary | discriminating");
  c_cal->add_option("--detector", cal.detector, "strict | csr");
  c_cal->add_option("--format", cal.format, "ts | spatial");
  c_cal->add_option("--blocks", cal.blocks, "observations per block (ts)");
  c_cal->add_option("--clusters", cal.clusters, "K-means clusters");
  c_cal->add_option("--min-size", cal.min_size, "minimum cluster size");
  c_cal->add_option("--grid-min", cal.grid_min, "grid start");
  c_cal->add_option("--grid-max", cal.grid_max, "grid end");
  c_cal->add_option("--grid-step", cal.grid_step, "grid step");
  add_common(c_cal, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    apply_threads(common);
    if (app.got_subcommand(c_gen)) return run_generate(gen, common);
    if (app.got_subcommand(c_strict)) return run_detect_stationarity(det, bound, common);
    if (app.got_subcommand(c_cov)) return run_detect_covariance(det, bound, common);
    if (app.got_subcommand(c_mcmc)) return run_mcmc_diagnose(det, bound, common);
    if (app.got_subcommand(c_csr)) {
      return run_pattern_detector(PatternDetector::csr, det, bound, common);
    }
    if (app.got_subcommand(c_poisson)) {
      return run_pattern_detector(PatternDetector::poisson, det, bound, common);
    }
    if (app.got_subcommand(c_pps)) {
      return run_pattern_detector(PatternDetector::pp_stationarity, det, bound, common);
    }
    if (app.got_subcommand(c_freq)) return run_detect_frequency(freq, common);
    if (app.got_subcommand(c_cal)) return run_calibrate(cal, common);
  } catch (const rbstat::calibration_error& e) {
    std::cerr << "calibration error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
