#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dirclust/distributions.hpp"

namespace dirclust {

/// One cluster: its label and the dataset indices of its members, ascending.
struct Group {
  std::string key;
  std::vector<std::size_t> members;

  friend bool operator==(const Group&, const Group&) = default;
};

/// A partition of a dataset.
struct Clustering {
  std::string algorithm;  // name and parameters, e.g. "crdc(w=0.9)"
  std::vector<Group> groups;
  // Pairwise evaluations spent deciding the partition. Always 0 for the
  // key-based algorithms.
  std::uint64_t assignment_comparisons = 0;
  // Per-document key derivations; n for the key-based algorithms, 0 otherwise.
  std::uint64_t key_computations = 0;

  std::size_t document_count() const noexcept;
};

// Default tolerance for the "sustained" trend digit.
inline constexpr double kTdcEpsilon = 1e-9;

/// Trend clustering: one digit per consecutive topic pair.
struct TdcConfig {
  double epsilon = kTdcEpsilon;
};

/// Ranking clustering: the `top` heaviest topics.
struct RdcConfig {
  std::size_t top = 1;
};

/// Cumulative ranking clustering: the heaviest topics until their weights sum
/// to at least `cum_weight`.
struct CrdcConfig {
  double cum_weight = 0.9;
};

using KeyAlgorithm = std::variant<TdcConfig, RdcConfig, CrdcConfig>;

/// e.g. "tdc", "rdc(top=1)", "crdc(w=0.9)".
std::string describe(const KeyAlgorithm& algo);

/// Digit i (0-based over the K-1 consecutive pairs) is '1' when the weight
/// rises by more than epsilon, '2' when it falls by more than epsilon, '0'
/// otherwise.
std::string tdc_key(std::span<const double> weights, double epsilon = kTdcEpsilon);

/// Topic indices sorted by descending weight; ties go to the lower index.
/// Indices are 0-based here.
std::vector<std::size_t> rank_topics(std::span<const double> weights);

/// 1-based indices of the `top` heaviest topics in rank order, joined by '|'.
/// Throws InvalidArgument unless 1 <= top <= K.
std::string rdc_key(std::span<const double> weights, std::size_t top);

// Slack on the cumulative sum, so that 0.6 + 0.3 reaches 0.9 despite rounding.
inline constexpr double kCrdcSumTolerance = 1e-12;

/// Shortest rank-order prefix whose weight sum reaches `cum_weight` (within
/// kCrdcSumTolerance), as 1-based indices joined by '|'. Throws InvalidArgument unless
/// 0 < cum_weight <= 1.
std::string crdc_key(std::span<const double> weights, double cum_weight);

std::string cluster_key(const KeyAlgorithm& algo, std::span<const double> weights);

/// Single pass over the dataset grouping documents by key. Groups come out
/// sorted by key. Throws InvalidArgument for an empty dataset, mixed
/// dimensions, or an invalid distribution.
Clustering assign_clusters(const Dataset& dataset, const KeyAlgorithm& algo);

/// Ordered intra-cluster pairs, self-pairs included: sum over groups of |g|^2.
std::uint64_t intra_pair_count(const Clustering& clustering) noexcept;

/// Calls fn(i, j) for every ordered pair of members of the same group,
/// including i == j.
template <class Fn>
void for_each_intra_pair(const Clustering& clustering, Fn&& fn) {
  for (const auto& g : clustering.groups) {
    for (std::size_t a : g.members) {
      for (std::size_t b : g.members) fn(a, b);
    }
  }
}

/// Checks that the groups partition {0, ..., n-1}.
Validation check_partition(const Clustering& clustering, std::size_t n);

/// Sorts members inside each group and orders groups by their smallest
/// member, relabelling them "0", "1", ... in that order.
void canonicalize_numbered(Clustering& clustering);

}  // namespace dirclust
