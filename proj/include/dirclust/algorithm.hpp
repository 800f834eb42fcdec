#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "dirclust/baselines.hpp"
#include "dirclust/clustering.hpp"

namespace dirclust {

/// Any of the six partitioning algorithms with its parameters.
using AlgorithmConfig = std::variant<TdcConfig, RdcConfig, CrdcConfig, KMeansConfig, DbscanConfig, RandomConfig>;

/// "tdc", "rdc", "crdc", "kmeans", "dbscan" or "random".
std::string_view algorithm_name(const AlgorithmConfig& config);
/// Parameters as "key=value" items separated by ';' (CSV safe).
std::string algorithm_params(const AlgorithmConfig& config);
/// name, plus "(params)" when there are any.
std::string algorithm_label(const AlgorithmConfig& config);

/// Default configuration for `name` on a dataset of dimension `k`: RDC top 1,
/// CRDC w = 0.9, K-Means with k clusters and 50 iterations, DBSCAN eps 0.1 and
/// 50 points, Random with k groups.
AlgorithmConfig default_algorithm(std::string_view name, std::size_t k, std::uint64_t seed);

bool is_key_based(const AlgorithmConfig& config) noexcept;

/// Runs the algorithm. `measure` only matters to DBSCAN; `counter` receives
/// every pairwise evaluation made while partitioning.
Clustering run_clustering(const Dataset& dataset, const AlgorithmConfig& config, Measure measure,
                          ComparisonCounter& counter);

}  // namespace dirclust
