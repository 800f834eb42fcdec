#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dirclust/algorithm.hpp"
#include "dirclust/evaluation.hpp"

namespace dirclust {

/// A size x measure x algorithm sweep over prefixes of one dataset.
struct ExperimentPlan {
  std::vector<std::size_t> sizes{200, 300, 400, 500, 600, 700, 800, 900, 1000};
  std::vector<Measure> measures{Measure::js, Measure::hellinger};
  std::vector<AlgorithmConfig> algorithms;
  std::filesystem::path out_dir = ".";
  std::optional<double> threshold;  // empty = estimate per gold standard
  unsigned threads = 0;
  EvaluationOptions evaluation;
};

/// Sizes ascending, each in [1, dataset_size]; at least one measure and one
/// algorithm. Throws InvalidArgument.
void check_plan(const ExperimentPlan& plan, std::size_t dataset_size);

/// The six algorithms with their default settings for dimension k.
std::vector<AlgorithmConfig> default_algorithms(std::size_t k, std::uint64_t seed);

struct SweepResult {
  std::vector<EvaluationReport> rows;
  bool complete = true;
  std::string error;  // set when a stage failed
};

std::string gold_file_name(Measure measure, std::size_t size);

/// Runs every (size, measure, algorithm) cell. Writes into out_dir:
///   report.csv                   one row per cell
///   gold_<measure>_<size>.txt    gold standard behind each row
///   plot_<metric>_<measure>.csv  size vs metric, one column per algorithm
/// A failing stage stops the sweep; report.csv then starts with a
/// "# partial results: <reason>" line and holds the rows finished so far.
/// Progress goes to `log` when given.
SweepResult run_sweep(const Dataset& dataset, const ExperimentPlan& plan, std::ostream* log = nullptr);

/// Plot tables: metric name -> CSV text, for one measure.
std::map<std::string, std::string> plot_tables(const std::vector<EvaluationReport>& rows, Measure measure);

}  // namespace dirclust
