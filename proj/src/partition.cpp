#include "rbstat/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace rbstat {

std::vector<std::vector<int>> Partition::members() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(K));
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    out[static_cast<std::size_t>(assignments[i] - 1)].push_back(static_cast<int>(i));
  }
  return out;
}

Partition sequential_blocks(std::size_t n_total, std::size_t block_size) {
  if (block_size < 1 || block_size > n_total) {
    throw input_error("sequential_blocks: need 1 <= block_size <= n_total");
  }
  std::size_t k = n_total / block_size;
  const std::size_t rem = n_total % block_size;
  if (rem >= 3) k += 1;  // remainder large enough to stand alone
  Partition p;
  p.K = static_cast<int>(k);
  p.assignments.resize(n_total);
  for (std::size_t i = 0; i < n_total; ++i) {
    std::size_t b = i / block_size;
    if (b >= k) b = k - 1;  // short remainder merged into the final block
    p.assignments[i] = static_cast<int>(b) + 1;
  }
  p.sizes.assign(k, 0);
  for (const int a : p.assignments) p.sizes[static_cast<std::size_t>(a - 1)] += 1;
  return p;
}

namespace {

double sq_dist(const double* a, const double* b, int dim) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) {
    const double diff = a[d] - b[d];
    s += diff * diff;
  }
  return s;
}

}  // namespace

Partition kmeans_partition(const std::vector<double>& coords, int dim, int K, int min_size,
                           std::uint64_t seed) {
  if (dim < 1) throw input_error("kmeans_partition: dim must be >= 1");
  const std::size_t n = coords.size() / static_cast<std::size_t>(dim);
  if (n * static_cast<std::size_t>(dim) != coords.size()) {
    throw input_error("kmeans_partition: coords size not a multiple of dim");
  }
  if (K < 1) throw input_error("kmeans_partition: K must be >= 1");
  if (min_size < 1) min_size = 1;
  if (static_cast<std::size_t>(K) * static_cast<std::size_t>(min_size) > n) {
    throw input_error("kmeans_partition: min_size infeasible for K clusters");
  }

  const auto pt = [&](std::size_t i) { return coords.data() + i * static_cast<std::size_t>(dim); };
  std::mt19937_64 rng(seed);

  // k-means++ initialization.
  std::vector<double> centroids(static_cast<std::size_t>(K) * static_cast<std::size_t>(dim));
  const auto cen = [&](int c) { return centroids.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(dim); };
  {
    std::uniform_int_distribution<std::size_t> first(0, n - 1);
    const std::size_t i0 = first(rng);
    std::copy_n(pt(i0), dim, cen(0));
    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(pt(i), cen(0), dim);
    for (int c = 1; c < K; ++c) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) total += d2[i];
      std::size_t chosen = 0;
      if (total > 0.0) {
        std::uniform_real_distribution<double> u(0.0, total);
        double target = u(rng), acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          acc += d2[i];
          if (acc >= target) { chosen = i; break; }
        }
      } else {
        std::uniform_int_distribution<std::size_t> any(0, n - 1);
        chosen = any(rng);
      }
      std::copy_n(pt(chosen), dim, cen(c));
      for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], sq_dist(pt(i), cen(c), dim));
    }
  }

  // Lloyd iterations: parallel assignment (per-point, deterministic), serial
  // centroid accumulation in index order so results are thread-count
  // independent.
  std::vector<int> assign(n, 0);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
#pragma omp parallel for schedule(static) reduction(|| : changed)
    for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < K; ++c) {
        const double d = sq_dist(pt(i), cen(c), dim);
        if (d < best_d) { best_d = d; best = c; }
      }
      if (assign[i] != best) { assign[i] = best; changed = true; }
    }
    std::vector<double> sums(centroids.size(), 0.0);
    std::vector<long> counts(static_cast<std::size_t>(K), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const int c = assign[i];
      counts[static_cast<std::size_t>(c)] += 1;
      double* s = sums.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(dim);
      const double* p = pt(i);
      for (int d = 0; d < dim; ++d) s[d] += p[d];
    }
    for (int c = 0; c < K; ++c) {
      if (counts[static_cast<std::size_t>(c)] == 0) continue;  // keep stale centroid
      double* ctr = cen(c);
      for (int d = 0; d < dim; ++d) {
        ctr[d] = sums[static_cast<std::size_t>(c) * static_cast<std::size_t>(dim) + d] /
                 static_cast<double>(counts[static_cast<std::size_t>(c)]);
      }
    }
    if (!changed && iter > 0) break;
  }

  // Dissolve undersized clusters into the nearest surviving centroid,
  // smallest (lowest id on ties) first.
  std::vector<bool> alive(static_cast<std::size_t>(K), true);
  std::vector<long> counts(static_cast<std::size_t>(K), 0);
  for (std::size_t i = 0; i < n; ++i) counts[static_cast<std::size_t>(assign[i])] += 1;
  for (;;) {
    int victim = -1;
    long victim_count = std::numeric_limits<long>::max();
    int n_alive = 0;
    for (int c = 0; c < K; ++c) {
      if (!alive[static_cast<std::size_t>(c)]) continue;
      ++n_alive;
      const long cnt = counts[static_cast<std::size_t>(c)];
      if (cnt < min_size && cnt < victim_count) { victim = c; victim_count = cnt; }
    }
    if (victim < 0 || n_alive <= 1) break;
    alive[static_cast<std::size_t>(victim)] = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (assign[i] != victim) continue;
      int best = -1;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < K; ++c) {
        if (!alive[static_cast<std::size_t>(c)]) continue;
        const double d = sq_dist(pt(i), cen(c), dim);
        if (d < best_d) { best_d = d; best = c; }
      }
      assign[i] = best;
      counts[static_cast<std::size_t>(best)] += 1;
    }
    counts[static_cast<std::size_t>(victim)] = 0;
  }

  // Relabel survivors to 1..K' in original id order.
  std::vector<int> relabel(static_cast<std::size_t>(K), 0);
  int next = 0;
  for (int c = 0; c < K; ++c) {
    if (alive[static_cast<std::size_t>(c)]) relabel[static_cast<std::size_t>(c)] = ++next;
  }
  Partition p;
  p.K = next;
  p.assignments.resize(n);
  p.sizes.assign(static_cast<std::size_t>(next), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int id = relabel[static_cast<std::size_t>(assign[i])];
    p.assignments[i] = id;
    p.sizes[static_cast<std::size_t>(id - 1)] += 1;
  }
  return p;
}

Partition kmeans_partition(const std::vector<Point>& locations, int K, int min_size,
                           std::uint64_t seed) {
  std::vector<double> coords;
  coords.reserve(locations.size() * 2);
  for (const Point& p : locations) {
    coords.push_back(p.x);
    coords.push_back(p.y);
  }
  return kmeans_partition(coords, 2, K, min_size, seed);
}

BandSet distance_bands(const std::vector<Point>& locations, const Partition& partition,
                       const std::vector<double>& boundaries) {
  if (boundaries.size() < 2) throw input_error("distance_bands: need at least 2 boundaries");
  for (std::size_t b = 1; b < boundaries.size(); ++b) {
    if (boundaries[b] <= boundaries[b - 1]) throw input_error("distance_bands: boundaries must ascend");
  }
  if (boundaries.front() < 0.0) throw input_error("distance_bands: boundaries must be >= 0");
  const std::size_t n_bands = boundaries.size() - 1;

  BandSet out;
  out.boundaries = boundaries;
  out.per_cluster.assign(static_cast<std::size_t>(partition.K), {});
  const auto groups = partition.members();
  for (int c = 0; c < partition.K; ++c) {
    auto& bands = out.per_cluster[static_cast<std::size_t>(c)];
    bands.resize(n_bands);
    for (std::size_t b = 0; b < n_bands; ++b) {
      bands[b].h_lo = boundaries[b];
      bands[b].h_hi = boundaries[b + 1];
    }
    const auto& idx = groups[static_cast<std::size_t>(c)];
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        const Point& p = locations[static_cast<std::size_t>(idx[a])];
        const Point& q = locations[static_cast<std::size_t>(idx[b])];
        const double d = std::hypot(p.x - q.x, p.y - q.y);
        const auto it = std::upper_bound(boundaries.begin(), boundaries.end(), d);
        if (it == boundaries.begin() || it == boundaries.end()) continue;
        const std::size_t band = static_cast<std::size_t>(it - boundaries.begin()) - 1;
        if (d >= boundaries[band] && d < boundaries[band + 1]) {
          bands[band].pairs.emplace_back(idx[a], idx[b]);
        }
      }
    }
  }
  out.valid.assign(n_bands, false);
  for (std::size_t b = 0; b < n_bands; ++b) {
    int nonempty = 0;
    for (int c = 0; c < partition.K; ++c) {
      if (!out.per_cluster[static_cast<std::size_t>(c)][b].pairs.empty()) ++nonempty;
    }
    out.valid[b] = 2 * nonempty > partition.K;
  }
  return out;
}

double min_points_per_cell(double volume, double epsilon, int p) {
  if (epsilon <= 0.0) throw input_error("min_points_per_cell: epsilon must be > 0");
  if (p < 1) throw input_error("min_points_per_cell: p must be >= 1");
  const double dp = static_cast<double>(p);
  return volume / std::pow(epsilon, dp) * std::tgamma(dp / 2.0 + 1.0) /
         std::pow(std::numbers::pi, dp / 2.0);
}

}  // namespace rbstat
