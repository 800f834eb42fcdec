#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace dirclust {

/// A document's mixture over K topics.
struct TopicDistribution {
  std::string doc_id;
  std::vector<double> weights;

  std::size_t dimension() const noexcept { return weights.size(); }
  std::span<const double> view() const noexcept { return weights; }

  friend bool operator==(const TopicDistribution&, const TopicDistribution&) = default;
};

using Dataset = std::vector<TopicDistribution>;

inline constexpr double kSumTolerance = 1e-6;

struct Validation {
  bool valid = true;
  std::string message;  // first violation found, empty when valid

  explicit operator bool() const noexcept { return valid; }
};

/// Checks K >= 2, non-negative weights and unit sum (within kSumTolerance).
Validation validate(const TopicDistribution& dist);

/// Common dimension of a dataset; 0 for an empty one. Throws InvalidArgument
/// if the members disagree.
std::size_t dataset_dimension(const Dataset& dataset);

struct HyperParams {
  std::size_t k = 0;
  double alpha = 0.0;
  double beta = 0.01;
};

/// LDA hyperparameter heuristic: k = floor(2 * sqrt(n / 2)), alpha = 50 / k,
/// beta = 0.01. Requires n >= 2.
HyperParams suggest_hyperparams(std::size_t n);

/// Parameters of a synthetic corpus.
///
/// With `modes == 1` every document is an independent draw from a symmetric
/// Dirichlet(alpha). With `modes > 1` each mode gets a base measure drawn from
/// Dirichlet(alpha), with its largest component moved onto a topic no other
/// mode leads (while modes <= k). A document picks a mode uniformly and is
/// drawn from Dirichlet(mode_concentration * base + mode_smoothing), i.e. a
/// tight draw around its mode plus a pseudo-count on every topic, the way an
/// inferred topic mixture keeps a little weight on every topic.
struct DatasetSpec {
  std::size_t n = 1000;
  std::size_t k = 44;
  double alpha = 50.0 / 44.0;
  std::size_t modes = 1;
  double mode_concentration = 1000.0;
  double mode_smoothing = 1.0;
  std::uint64_t seed = 0;
  double beta = 0.01;  // recorded for provenance only; generation ignores it
};

/// Throws InvalidArgument describing the first invalid field.
void check_spec(const DatasetSpec& spec);

/// Deterministic for a fixed spec (seed included).
Dataset sample_dataset(const DatasetSpec& spec);

/// Symmetric-or-not Dirichlet draw that stays well defined for tiny shape
/// parameters (gamma variates are handled in log space).
template <class Rng>
std::vector<double> sample_dirichlet(std::span<const double> shape, Rng& rng);

/// JSON Lines: one {"id": ..., "weights": [...]} object per line, weights with
/// 17 significant digits. An empty file is an empty dataset.
void save_dataset(const std::filesystem::path& path, const Dataset& dataset);
Dataset load_dataset(const std::filesystem::path& path);

/// First `size` documents of `dataset`.
Dataset prefix(const Dataset& dataset, std::size_t size);

}  // namespace dirclust

#include "dirclust/detail/dirichlet.hpp"
