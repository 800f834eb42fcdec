#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dirclust/clustering.hpp"
#include "dirclust/distributions.hpp"
#include "dirclust/similarity.hpp"

namespace dirclust {

struct KMeansConfig {
  std::size_t k = 44;
  std::size_t max_iterations = 50;
  std::uint64_t seed = 0;
  double convergence_tol = 1e-6;  // max centroid movement (Euclidean)
  unsigned threads = 1;           // 0 = hardware concurrency
};

struct DbscanConfig {
  double eps = 0.1;  // radius in raw dissimilarity (JS divergence or Hellinger)
  std::size_t min_pts = 50;
  std::size_t pivots = 16;  // reference points for pruning; 0 compares every pair
  unsigned threads = 1;
};

struct RandomConfig {
  std::size_t m = 44;
  std::uint64_t seed = 0;
};

struct KMeansModel {
  Clustering clustering;
  std::vector<std::vector<double>> centroids;
  std::vector<std::size_t> labels;  // centroid index per document
  std::size_t iterations = 0;       // assignment passes performed
  // Sum of squared distances to the assigned centroid, recorded after each
  // assignment pass.
  std::vector<double> objective;
};

/// k-means++ seeding followed by Lloyd iterations with Euclidean distance on
/// the weight vectors. Every point-to-centroid distance of an assignment pass
/// is counted, so the counter grows by k * n per iteration. Seeding distances
/// are not counted. Stops when assignments stop changing, when no centroid
/// moves more than convergence_tol, or after max_iterations passes.
KMeansModel fit_kmeans(const Dataset& dataset, const KMeansConfig& config, ComparisonCounter& counter);

Clustering kmeans(const Dataset& dataset, const KMeansConfig& config, ComparisonCounter& counter);

/// Density clustering with `measure`'s dissimilarity. A point's neighbourhood
/// includes itself; core points have at least min_pts neighbours within eps
/// (inclusive). Noise points come back as singleton groups; groups are
/// numbered by their smallest member.
///
/// Neighbourhoods are exact. Up to `pivots` reference points are picked by
/// farthest-first traversal from document 0 and compared with every document;
/// a remaining pair is evaluated (once) only when the triangle inequality on
/// sqrt(JS) or Hellinger cannot rule it out. With pivots = 0 all n(n-1)/2
/// pairs are evaluated.
Clustering dbscan(const Dataset& dataset, const DbscanConfig& config, Measure measure,
                  ComparisonCounter& counter);

/// Shuffles the documents with `seed` and deals them round-robin into m
/// groups. Performs no comparisons.
Clustering random_partition(const Dataset& dataset, std::size_t m, std::uint64_t seed);

}  // namespace dirclust
