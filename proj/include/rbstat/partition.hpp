#ifndef RBSTAT_PARTITION_HPP
#define RBSTAT_PARTITION_HPP

// Partitioning of index sets into blocks N_1..N_K: contiguous blocks for
// 1-D index sets, seeded K-means (k-means++ init + Lloyd) for spatial and
// spatio-temporal locations, within-cluster distance bands, and the
// minimum-cardinality lower bound for cell occupancy.

#include <cstdint>
#include <vector>

#include "rbstat/common.hpp"
#include "rbstat/empirical.hpp"

namespace rbstat {

struct Partition {
  int K = 0;                     // number of blocks/clusters (1-based ids)
  std::vector<int> assignments;  // index -> cluster id in 1..K
  std::vector<int> sizes;        // per-cluster counts, size K

  // Observation indices of each cluster, in ascending index order.
  std::vector<std::vector<int>> members() const;
};

// Contiguous blocks of block_size indices; a trailing remainder shorter than
// 3 is merged into the final block.
Partition sequential_blocks(std::size_t n_total, std::size_t block_size);

// K-means over flattened row-major coordinates (dim values per location).
// k-means++ initialization from `seed`, Lloyd iterations until the assignment
// reaches a fixpoint or 100 iterations.  Clusters smaller than min_size are
// dissolved into the nearest surviving centroid; K in the returned partition
// is the surviving count.
Partition kmeans_partition(const std::vector<double>& coords, int dim, int K, int min_size,
                           std::uint64_t seed);
Partition kmeans_partition(const std::vector<Point>& locations, int K, int min_size,
                           std::uint64_t seed);

// Within-cluster pair sets binned by distance.  Band b covers
// [boundaries[b], boundaries[b+1]).  A band is valid when it is nonempty in
// more than half of the clusters.
struct BandSet {
  std::vector<double> boundaries;
  // per_cluster[c][b] holds the pairs of cluster c+1 falling in band b,
  // with indices referring to the global location array.
  std::vector<std::vector<CovBand>> per_cluster;
  std::vector<bool> valid;  // one flag per band
};

BandSet distance_bands(const std::vector<Point>& locations, const Partition& partition,
                       const std::vector<double>& boundaries);

// Lower bound on the number of epsilon-balls needed to cover a region of the
// given volume in dimension p: (volume / eps^p) * Gamma(p/2 + 1) / pi^(p/2).
double min_points_per_cell(double volume, double epsilon, int p);

}  // namespace rbstat

#endif  // RBSTAT_PARTITION_HPP
