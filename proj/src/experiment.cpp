#include "dirclust/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "dirclust/error.hpp"

namespace dirclust {

void check_plan(const ExperimentPlan& plan, std::size_t dataset_size) {
  if (plan.sizes.empty()) throw InvalidArgument("plan: no sizes");
  if (plan.measures.empty()) throw InvalidArgument("plan: at least one measure is required");
  if (plan.algorithms.empty()) throw InvalidArgument("plan: at least one algorithm is required");
  for (std::size_t i = 0; i < plan.sizes.size(); ++i) {
    const std::size_t s = plan.sizes[i];
    if (s < 1 || s > dataset_size) {
      throw InvalidArgument(fmt::format("plan: size {} outside [1, {}]", s, dataset_size));
    }
    if (i > 0 && s <= plan.sizes[i - 1]) throw InvalidArgument("plan: sizes must be strictly ascending");
  }
}

std::vector<AlgorithmConfig> default_algorithms(std::size_t k, std::uint64_t seed) {
  std::vector<AlgorithmConfig> out;
  for (const char* name : {"crdc", "dbscan", "kmeans", "rdc", "tdc", "random"}) {
    out.push_back(default_algorithm(name, k, seed));
  }
  return out;
}

std::string gold_file_name(Measure measure, std::size_t size) {
  return fmt::format("gold_{}_{}.txt", to_string(measure), size);
}

std::map<std::string, std::string> plot_tables(const std::vector<EvaluationReport>& rows, Measure measure) {
  std::vector<std::string> labels;
  std::set<std::size_t> sizes;
  for (const auto& r : rows) {
    if (r.measure != measure) continue;
    const std::string label = r.params.empty() ? r.algorithm : fmt::format("{}({})", r.algorithm, r.params);
    if (std::find(labels.begin(), labels.end(), label) == labels.end()) labels.push_back(label);
    sizes.insert(r.size);
  }

  struct Metric {
    const char* name;
    double (*get)(const EvaluationReport&);
  };
  static constexpr Metric metrics[] = {
      {"cost", [](const EvaluationReport& r) { return r.cost; }},
      {"precision", [](const EvaluationReport& r) { return r.precision; }},
      {"recall", [](const EvaluationReport& r) { return r.recall; }},
      {"effectiveness", [](const EvaluationReport& r) { return r.effectiveness; }},
      {"efficiency", [](const EvaluationReport& r) { return r.efficiency; }},
      {"clusters", [](const EvaluationReport& r) { return static_cast<double>(r.clusters); }},
  };

  std::map<std::string, std::string> out;
  for (const auto& metric : metrics) {
    std::string text = "size";
    for (const auto& l : labels) text += "," + l;
    text += '\n';
    for (std::size_t size : sizes) {
      text += std::to_string(size);
      for (const auto& l : labels) {
        text += ',';
        for (const auto& r : rows) {
          const std::string label = r.params.empty() ? r.algorithm : fmt::format("{}({})", r.algorithm, r.params);
          if (r.measure == measure && r.size == size && label == l) {
            text += fmt::format("{:.17g}", metric.get(r));
            break;
          }
        }
      }
      text += '\n';
    }
    out.emplace(metric.name, std::move(text));
  }
  return out;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  os << text;
  if (!os) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

void write_report(const std::filesystem::path& dir, const SweepResult& result) {
  std::string text;
  if (!result.complete) text += "# partial results: " + result.error + '\n';
  text += csv_header() + '\n';
  for (const auto& r : result.rows) text += to_csv_row(r) + '\n';
  write_text(dir / "report.csv", text);
}

}  // namespace

SweepResult run_sweep(const Dataset& dataset, const ExperimentPlan& plan, std::ostream* log) {
  check_plan(plan, dataset.size());
  std::error_code ec;
  std::filesystem::create_directories(plan.out_dir, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", plan.out_dir.string(), ec.message()));

  SweepResult result;
  try {
    for (std::size_t size : plan.sizes) {
      const Dataset part = prefix(dataset, size);
      for (Measure measure : plan.measures) {
        GoldOptions gold_opts;
        gold_opts.threshold = plan.threshold;
        gold_opts.threads = plan.threads;
        const GoldStandard gold = build_gold(part, measure, gold_opts);
        save_gold(plan.out_dir / gold_file_name(measure, size), gold);
        if (log) {
          *log << fmt::format("size={} measure={} threshold={:.4f} min_sim={} total_sim={}\n", size,
                              to_string(measure), gold.threshold, gold.min_sim, gold.total_sim);
        }
        for (const auto& algo : plan.algorithms) {
          result.rows.push_back(evaluate(part, algo, measure, gold, plan.evaluation));
          if (log) *log << "  " << to_csv_row(result.rows.back()) << '\n';
        }
      }
    }
  } catch (const std::exception& e) {
    result.complete = false;
    result.error = e.what();
  }

  write_report(plan.out_dir, result);
  for (Measure measure : plan.measures) {
    for (const auto& [metric, text] : plot_tables(result.rows, measure)) {
      write_text(plan.out_dir / fmt::format("plot_{}_{}.csv", metric, to_string(measure)), text);
    }
  }
  return result;
}

}  // namespace dirclust
