#include "dirclust/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <unordered_map>

#include <fmt/format.h>

#include "dirclust/detail/parallel.hpp"
#include "dirclust/error.hpp"

namespace dirclust {

GoldStandard build_gold(const Dataset& dataset, Measure measure, const GoldOptions& options) {
  if (dataset.empty()) throw InvalidArgument("cannot build a gold standard for an empty dataset");
  dataset_dimension(dataset);
  if (options.threshold && !(*options.threshold >= 0.0 && *options.threshold <= 1.0)) {
    throw InvalidArgument(fmt::format("threshold must be in [0, 1], got {}", *options.threshold));
  }

  const std::size_t n = dataset.size();
  std::vector<double> sims(n * n);

  struct BlockStats {
    SimilarityHistogram histogram;
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
  };
  // One stats slot per row keeps the merge order independent of the thread count.
  std::vector<BlockStats> rows(n);
  detail::parallel_blocks(0, n, options.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        // The measures are exactly symmetric; evaluate the upper triangle and
        // read the mirror for the lower one.
        const double s = j < i ? std::numeric_limits<double>::quiet_NaN()
                               : (measure == Measure::js ? sim_js(dataset[i].view(), dataset[j].view())
                                                         : sim_he(dataset[i].view(), dataset[j].view()));
        sims[i * n + j] = s;
      }
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) sims[i * n + j] = sims[j * n + i];
  }
  detail::parallel_blocks(0, n, options.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      auto& st = rows[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double s = sims[i * n + j];
        st.histogram.add(s);
        st.min = std::min(st.min, s);
        st.max = std::max(st.max, s);
        st.sum += s;
      }
    }
  });

  GoldStandard gold;
  gold.measure = measure;
  gold.n = n;
  gold.total_sim = static_cast<std::uint64_t>(n) * n;
  gold.doc_ids.reserve(n);
  for (const auto& d : dataset) gold.doc_ids.push_back(d.doc_id);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const auto& st : rows) {
    gold.histogram.merge(st.histogram);
    lo = std::min(lo, st.min);
    hi = std::max(hi, st.max);
    sum += st.sum;
  }
  if (n > 1) {
    gold.min_off_diagonal = lo;
    gold.max_off_diagonal = hi;
    gold.mean_off_diagonal = sum / static_cast<double>(n * (n - 1));
  }

  gold.threshold = options.threshold ? *options.threshold
                                     : estimate_threshold(gold.histogram, options.estimator);

  gold.similar.assign(n * n, 0);
  for (std::size_t idx = 0; idx < n * n; ++idx) {
    if (sims[idx] >= gold.threshold) {
      gold.similar[idx] = 1;
      ++gold.min_sim;
    }
  }
  // Self-similarity is exactly 1, so diagonal pairs are similar for any
  // threshold in [0, 1].
  return gold;
}

void save_gold(const std::filesystem::path& path, const GoldStandard& gold) {
  for (const auto& id : gold.doc_ids) {
    if (id.empty() || id.find_first_of("\t\r\n") != std::string::npos) {
      throw InvalidArgument(fmt::format("document id '{}' is empty or holds a tab or line break; it cannot be stored in a gold file", id));
    }
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  os << "# dirclust gold standard\n";
  os << "measure=" << to_string(gold.measure) << '\n';
  os << fmt::format("threshold={:.17g}\n", gold.threshold);
  os << "n=" << gold.n << '\n';
  os << "total_sim=" << gold.total_sim << '\n';
  os << "min_sim=" << gold.min_sim << '\n';
  std::string line;
  for (std::size_t i = 0; i < gold.n; ++i) {
    for (std::size_t j = 0; j < gold.n; ++j) {
      if (!gold.is_similar(i, j)) continue;
      line = gold.doc_ids[i];
      line += '\t';
      line += gold.doc_ids[j];
      line += '\n';
      os << line;
    }
  }
  if (!os) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

namespace {

std::uint64_t parse_count(const std::string& text, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(fmt::format("bad integer '{}'", text), line_no);
  return v;
}

}  // namespace

GoldStandard load_gold(const std::filesystem::path& path, const Dataset& dataset) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(fmt::format("cannot open gold standard '{}'", path.string()));

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < dataset.size(); ++i) index.emplace(dataset[i].doc_id, i);

  GoldStandard gold;
  gold.n = dataset.size();
  bool have_measure = false, have_threshold = false, have_n = false;
  std::optional<std::uint64_t> declared_total, declared_min;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("expected key=value or an id pair", line_no);
      const std::string key = line.substr(0, eq);
      const std::string value = line.substr(eq + 1);
      if (key == "measure") {
        gold.measure = parse_measure(value);
        have_measure = true;
      } else if (key == "threshold") {
        try {
          std::size_t used = 0;
          gold.threshold = std::stod(value, &used);
          if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
          throw ParseError(fmt::format("bad threshold '{}'", value), line_no);
        }
        have_threshold = true;
      } else if (key == "n") {
        if (parse_count(value, line_no) != dataset.size()) {
          throw InvalidArgument(fmt::format("gold standard is for n = {}, dataset has {} documents", value,
                                            dataset.size()));
        }
        have_n = true;
        gold.similar.assign(gold.n * gold.n, 0);
      } else if (key == "total_sim") {
        declared_total = parse_count(value, line_no);
      } else if (key == "min_sim") {
        declared_min = parse_count(value, line_no);
      } else {
        throw ParseError(fmt::format("unknown header key '{}'", key), line_no);
      }
      continue;
    }

    if (!have_n) throw ParseError("pair listed before the n= header", line_no);
    const auto a = index.find(line.substr(0, tab));
    const auto b = index.find(line.substr(tab + 1));
    if (a == index.end() || b == index.end()) {
      throw InvalidArgument(fmt::format("line {}: pair references a document not in the dataset", line_no));
    }
    auto& cell = gold.similar[a->second * gold.n + b->second];
    if (!cell) {
      cell = 1;
      ++gold.min_sim;
    }
  }
  if (!have_measure || !have_threshold || !have_n) {
    throw ParseError("gold standard header must define measure, threshold and n", 0);
  }
  gold.total_sim = static_cast<std::uint64_t>(gold.n) * gold.n;
  if (declared_total && *declared_total != gold.total_sim) {
    throw ParseError("total_sim header disagrees with n * n", 0);
  }
  if (declared_min && *declared_min != gold.min_sim) {
    throw ParseError(fmt::format("min_sim header says {}, file lists {} pairs", *declared_min, gold.min_sim), 0);
  }
  gold.doc_ids.reserve(dataset.size());
  for (const auto& d : dataset) gold.doc_ids.push_back(d.doc_id);
  return gold;
}

void check_gold_matches(const GoldStandard& gold, const Dataset& dataset) {
  if (gold.n != dataset.size() || gold.doc_ids.size() != dataset.size()) {
    throw InvalidArgument(
        fmt::format("gold standard covers {} documents, dataset has {}", gold.n, dataset.size()));
  }
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (gold.doc_ids[i] != dataset[i].doc_id) {
      throw InvalidArgument(fmt::format("gold standard document {} is '{}', dataset has '{}'", i,
                                        gold.doc_ids[i], dataset[i].doc_id));
    }
  }
}

double cost(std::uint64_t req_sim, std::uint64_t min_sim, std::uint64_t total_sim) {
  if (total_sim == min_sim) throw UndefinedMetric("cost is undefined when every pair is similar");
  return (static_cast<double>(req_sim) - static_cast<double>(min_sim)) /
         (static_cast<double>(total_sim) - static_cast<double>(min_sim));
}

double cost(std::uint64_t req_sim, const GoldStandard& gold) { return cost(req_sim, gold.min_sim, gold.total_sim); }

double effectiveness(double precision, double recall) noexcept {
  return (precision * precision + recall * recall) / 2.0;
}

double efficiency(double effectiveness, double cost) noexcept { return effectiveness - cost; }

PrecisionRecall precision_recall(const Dataset& dataset, const Clustering& clustering, const GoldStandard& gold,
                                 ComparisonCounter& counter, PairUniverse universe) {
  check_gold_matches(gold, dataset);
  if (auto v = check_partition(clustering, dataset.size()); !v) {
    throw InvalidArgument("clustering is not a partition of the dataset: " + v.message);
  }
  const bool with_self = universe == PairUniverse::with_self;

  PrecisionRecall pr;
  pr.gold_pairs = with_self ? gold.min_sim : gold.min_sim - gold.n;
  for_each_intra_pair(clustering, [&](std::size_t i, std::size_t j) {
    // The value is materialised for accounting; membership comes from the
    // gold record, which was built from the same computation.
    similarity(gold.measure, dataset[i], dataset[j], counter);
    if (i == j && !with_self) return;
    ++pr.predicted;
    if (gold.is_similar(i, j)) ++pr.true_positives;
  });

  pr.precision = pr.predicted ? static_cast<double>(pr.true_positives) / static_cast<double>(pr.predicted) : 0.0;
  pr.recall =
      pr.gold_pairs ? static_cast<double>(pr.true_positives) / static_cast<double>(pr.gold_pairs) : 0.0;
  return pr;
}

EvaluationReport evaluate_clustering(const Dataset& dataset, const Clustering& clustering,
                                     const AlgorithmConfig& config, Measure measure, const GoldStandard& gold,
                                     const EvaluationOptions& options) {
  if (gold.measure != measure) {
    throw InvalidArgument(fmt::format("gold standard was built with {}, evaluation asked for {}",
                                      to_string(gold.measure), to_string(measure)));
  }
  check_gold_matches(gold, dataset);

  ComparisonCounter intra;
  const auto pr = precision_recall(dataset, clustering, gold, intra, options.universe);

  EvaluationReport r;
  r.algorithm = std::string(algorithm_name(config));
  r.params = algorithm_params(config);
  r.size = dataset.size();
  r.measure = measure;
  r.clusters = clustering.groups.size();
  r.req_sim = clustering.assignment_comparisons + intra.count();
  r.cost = cost(r.req_sim, gold);
  r.precision = pr.precision;
  r.recall = pr.recall;
  r.effectiveness = effectiveness(r.precision, r.recall);
  r.efficiency = efficiency(r.effectiveness, r.cost);
  return r;
}

EvaluationReport evaluate(const Dataset& dataset, const AlgorithmConfig& config, Measure measure,
                          const GoldStandard& gold, const EvaluationOptions& options) {
  if (gold.measure != measure) {
    throw InvalidArgument(fmt::format("gold standard was built with {}, evaluation asked for {}",
                                      to_string(gold.measure), to_string(measure)));
  }
  check_gold_matches(gold, dataset);
  ComparisonCounter assignment;
  const Clustering clustering = run_clustering(dataset, config, measure, assignment);
  return evaluate_clustering(dataset, clustering, config, measure, gold, options);
}

std::string csv_header() {
  return "algo,params,size,measure,clusters,req_sim,cost,precision,recall,effectiveness,efficiency";
}

std::string to_csv_row(const EvaluationReport& r) {
  return fmt::format("{},{},{},{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}", r.algorithm, r.params, r.size,
                     to_string(r.measure), r.clusters, r.req_sim, r.cost, r.precision, r.recall, r.effectiveness,
                     r.efficiency);
}

}  // namespace dirclust
