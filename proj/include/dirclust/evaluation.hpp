#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dirclust/algorithm.hpp"
#include "dirclust/clustering.hpp"
#include "dirclust/distributions.hpp"
#include "dirclust/similarity.hpp"
#include "dirclust/threshold.hpp"

namespace dirclust {

/// Exhaustive pairwise similarity record of one dataset under one measure.
///
/// Pairs are ordered and self-pairs are included, so total_sim = n * n and
/// every self-pair is similar (sim(p, p) = 1).
struct GoldStandard {
  Measure measure = Measure::js;
  double threshold = 0.0;
  std::size_t n = 0;
  std::vector<std::string> doc_ids;
  std::vector<std::uint8_t> similar;  // row-major n x n, 1 when sim >= threshold
  std::uint64_t total_sim = 0;
  std::uint64_t min_sim = 0;          // number of similar ordered pairs

  // Filled by build_gold only. The histogram and the statistics cover the
  // n * (n - 1) distinct ordered pairs; self-pairs are always exactly 1.
  SimilarityHistogram histogram;
  double min_off_diagonal = 0.0;
  double mean_off_diagonal = 0.0;
  double max_off_diagonal = 0.0;

  bool is_similar(std::size_t i, std::size_t j) const noexcept { return similar[i * n + j] != 0; }
};

struct GoldOptions {
  std::optional<double> threshold;  // empty = estimate from the histogram
  unsigned threads = 0;             // 0 = hardware concurrency
  ThresholdOptions estimator;
};

/// Computes all n * n similarities (row blocks in parallel; the result does not
/// depend on the thread count). Throws InvalidArgument on an empty dataset or
/// a threshold outside [0, 1], EstimationFailed when the automatic threshold
/// cannot be found.
GoldStandard build_gold(const Dataset& dataset, Measure measure, const GoldOptions& options = {});

/// Text artifact: "key=value" header lines (measure, threshold, n, total_sim,
/// min_sim) followed by one tab-separated doc-id pair per similar pair, in
/// dataset order. Ids that are empty or contain tabs or line breaks are
/// rejected with InvalidArgument.
void save_gold(const std::filesystem::path& path, const GoldStandard& gold);
/// Needs the dataset to map ids back to positions.
GoldStandard load_gold(const std::filesystem::path& path, const Dataset& dataset);

/// Throws InvalidArgument unless `gold` was built on exactly these documents.
void check_gold_matches(const GoldStandard& gold, const Dataset& dataset);

/// (req_sim - min_sim) / (total_sim - min_sim). Negative when fewer pairs than
/// min_sim were compared. Throws UndefinedMetric when total_sim == min_sim.
double cost(std::uint64_t req_sim, std::uint64_t min_sim, std::uint64_t total_sim);
double cost(std::uint64_t req_sim, const GoldStandard& gold);

double effectiveness(double precision, double recall) noexcept;
double efficiency(double effectiveness, double cost) noexcept;

/// Which ordered pairs make up the precision/recall universe.
enum class PairUniverse {
  distinct,    // i != j only
  with_self,   // self-pairs included on both the predicted and the gold side
};

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  std::uint64_t predicted = 0;       // predicted-similar pairs in the universe
  std::uint64_t true_positives = 0;
  std::uint64_t gold_pairs = 0;      // gold-similar pairs in the universe
};

/// Predicted-similar pairs are the intra-cluster ordered pairs. The similarity
/// of every intra-cluster pair (self-pairs included) is evaluated through
/// `counter`. An empty predicted set gives precision 0; an empty gold set
/// gives recall 0.
PrecisionRecall precision_recall(const Dataset& dataset, const Clustering& clustering, const GoldStandard& gold,
                                 ComparisonCounter& counter, PairUniverse universe = PairUniverse::distinct);

struct EvaluationReport {
  std::string algorithm;
  std::string params;
  std::size_t size = 0;
  Measure measure = Measure::js;
  std::size_t clusters = 0;
  std::uint64_t req_sim = 0;
  double cost = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double effectiveness = 0.0;
  double efficiency = 0.0;

  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

struct EvaluationOptions {
  PairUniverse universe = PairUniverse::distinct;
};

/// Runs the algorithm, then scores it: req_sim = assignment comparisons +
/// intra-cluster evaluations.
EvaluationReport evaluate(const Dataset& dataset, const AlgorithmConfig& config, Measure measure,
                          const GoldStandard& gold, const EvaluationOptions& options = {});

/// Scores an existing clustering.
EvaluationReport evaluate_clustering(const Dataset& dataset, const Clustering& clustering,
                                     const AlgorithmConfig& config, Measure measure, const GoldStandard& gold,
                                     const EvaluationOptions& options = {});

/// algo,params,size,measure,clusters,req_sim,cost,precision,recall,effectiveness,efficiency
std::string csv_header();
std::string to_csv_row(const EvaluationReport& report);

}  // namespace dirclust
