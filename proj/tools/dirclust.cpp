// dirclust command line: generate, gold, cluster, evaluate, sweep.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dirclust/algorithm.hpp"
#include "dirclust/error.hpp"
#include "dirclust/evaluation.hpp"
#include "dirclust/experiment.hpp"

namespace fs = std::filesystem;
using namespace dirclust;

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalidArguments = 2,
  kIoFailure = 3,
  kEstimationFailed = 4,
};

struct GlobalFlags {
  std::uint64_t seed = 0;
  fs::path out_dir = ".";
  std::string measure = "js";
  std::string threshold = "auto";
  unsigned threads = 0;
};

struct SpecFlags {
  std::size_t n = 1000;
  std::size_t k = 44;
  std::optional<double> alpha;  // default 50 / k
  std::size_t modes = 1;
  double mode_concentration = 1000.0;
  double mode_smoothing = 1.0;
};

struct AlgoFlags {
  std::vector<std::string> algos;
  std::size_t top = 1;
  double cum_weight = 0.9;
  std::optional<std::size_t> k;  // K-Means clusters, default = dimension
  std::size_t max_iter = 50;
  double eps = 0.1;
  std::size_t min_pts = 50;
  std::size_t pivots = 16;
  std::optional<std::size_t> m;  // Random groups, default = dimension
};

void add_spec_flags(CLI::App* app, SpecFlags& f) {
  app->add_option("--n", f.n, "number of documents");
  app->add_option("--k", f.k, "number of topics");
  app->add_option("--alpha", f.alpha, "Dirichlet concentration per topic (default 50/k)");
  app->add_option("--modes", f.modes, "mixture components; 1 draws every document independently");
  app->add_option("--mode-concentration", f.mode_concentration, "tightness of documents around their mode");
  app->add_option("--mode-smoothing", f.mode_smoothing, "pseudo-count added to every topic of a mode");
}

void add_algo_flags(CLI::App* app, AlgoFlags& f, const std::string& algo_help, const std::string& k_name) {
  app->add_option("--algo", f.algos, algo_help)->delimiter(',');
  app->add_option("--top", f.top, "RDC: number of leading topics in the key");
  app->add_option("--cum-weight", f.cum_weight, "CRDC: cumulative weight threshold");
  app->add_option(k_name, f.k, "K-Means: cluster count (default: topic count)");
  app->add_option("--max-iter", f.max_iter, "K-Means: iteration cap");
  app->add_option("--eps", f.eps, "DBSCAN: radius in raw dissimilarity");
  app->add_option("--min-pts", f.min_pts, "DBSCAN: minimum neighbourhood size");
  app->add_option("--pivots", f.pivots, "DBSCAN: pruning reference points (0 compares every pair)");
  app->add_option("--m", f.m, "Random: group count (default: topic count)");
}

DatasetSpec make_spec(const SpecFlags& f, std::uint64_t seed) {
  DatasetSpec spec;
  spec.n = f.n;
  spec.k = f.k;
  if (f.k == 0) throw InvalidArgument("--k must be >= 2");
  spec.alpha = f.alpha.value_or(50.0 / static_cast<double>(f.k));
  spec.modes = f.modes;
  spec.mode_concentration = f.mode_concentration;
  spec.mode_smoothing = f.mode_smoothing;
  spec.seed = seed;
  check_spec(spec);
  return spec;
}

AlgorithmConfig make_algorithm(const std::string& name, const AlgoFlags& f, std::size_t dim, std::uint64_t seed,
                               unsigned threads) {
  if (name == "tdc") return TdcConfig{};
  if (name == "rdc") return RdcConfig{.top = f.top};
  if (name == "crdc") return CrdcConfig{.cum_weight = f.cum_weight};
  if (name == "kmeans") {
    return KMeansConfig{.k = f.k.value_or(dim), .max_iterations = f.max_iter, .seed = seed, .threads = threads};
  }
  if (name == "dbscan") {
    return DbscanConfig{.eps = f.eps, .min_pts = f.min_pts, .pivots = f.pivots, .threads = threads};
  }
  if (name == "random") return RandomConfig{.m = f.m.value_or(dim), .seed = seed};
  throw InvalidArgument(
      fmt::format("unknown algorithm '{}' (expected tdc, rdc, crdc, kmeans, dbscan or random)", name));
}

std::vector<AlgorithmConfig> make_algorithms(const AlgoFlags& f, std::size_t dim, std::uint64_t seed,
                                             unsigned threads) {
  std::vector<std::string> names = f.algos;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) {
    names = {"crdc", "dbscan", "kmeans", "rdc", "tdc", "random"};
  }
  std::vector<AlgorithmConfig> out;
  for (const auto& n : names) out.push_back(make_algorithm(n, f, dim, seed, threads));
  return out;
}

std::optional<double> parse_threshold(const std::string& text) {
  if (text == "auto") return std::nullopt;
  double v = 0.0;
  std::size_t used = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw InvalidArgument(fmt::format("--threshold must be 'auto' or a number in [0, 1], got '{}'", text));
  }
  return v;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  os << text;
  if (!os) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

void print_histogram(const SimilarityHistogram& h) {
  std::cout << "histogram (bin: ordered pairs, self-pairs excluded)\n";
  for (const auto& [bin, count] : h.bins()) {
    std::cout << fmt::format("  {:.2f}: {}\n", SimilarityHistogram::bin_label(bin), count);
  }
}

GoldStandard make_gold(const Dataset& data, Measure measure, const GlobalFlags& g, bool verbose) {
  GoldOptions opts;
  opts.threshold = parse_threshold(g.threshold);
  opts.threads = g.threads;
  try {
    GoldStandard gold = build_gold(data, measure, opts);
    if (verbose) print_histogram(gold.histogram);
    return gold;
  } catch (const EstimationFailed& e) {
    throw EstimationFailed(std::string(e.what()) + "; pass --threshold <value> to set it by hand");
  }
}

int cmd_generate(const GlobalFlags& g, const SpecFlags& f, const std::optional<fs::path>& output) {
  const DatasetSpec spec = make_spec(f, g.seed);
  const Dataset data = sample_dataset(spec);
  fs::path path = output.value_or(g.out_dir / "dataset.jsonl");
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  save_dataset(path, data);
  std::cout << fmt::format("wrote {} documents (k={}, alpha={}, modes={}) to {}\n", data.size(), spec.k, spec.alpha,
                           spec.modes, path.string());
  return kOk;
}

int cmd_gold(const GlobalFlags& g, const fs::path& input, const std::optional<fs::path>& output) {
  const Dataset data = load_dataset(input);
  const Measure measure = parse_measure(g.measure);
  const GoldStandard gold = make_gold(data, measure, g, true);
  fs::path path = output.value_or(g.out_dir / fmt::format("gold_{}.txt", to_string(measure)));
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  save_gold(path, gold);
  std::cout << fmt::format("measure={} threshold={:.4f}{} minSim={} totalSim={}\n", to_string(measure),
                           gold.threshold, g.threshold == "auto" ? " (estimated)" : "", gold.min_sim,
                           gold.total_sim);
  std::cout << "wrote " << path.string() << '\n';
  return kOk;
}

int cmd_cluster(const GlobalFlags& g, const AlgoFlags& f, const fs::path& input, const std::optional<fs::path>& output) {
  const Dataset data = load_dataset(input);
  if (data.empty()) throw InvalidArgument("dataset is empty");
  const Measure measure = parse_measure(g.measure);
  const auto algos = make_algorithms(f, dataset_dimension(data), g.seed, g.threads);
  if (algos.size() != 1) throw InvalidArgument("cluster takes exactly one --algo");
  ComparisonCounter counter;
  const Clustering c = run_clustering(data, algos[0], measure, counter);

  std::string text = "doc_id,cluster\n";
  for (const auto& group : c.groups) {
    for (std::size_t i : group.members) text += fmt::format("{},{}\n", data[i].doc_id, group.key);
  }
  fs::path path = output.value_or(g.out_dir / fmt::format("clusters_{}.csv", algorithm_name(algos[0])));
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  write_text(path, text);
  std::cout << fmt::format("{}: {} clusters, {} assignment comparisons, {} intra-cluster pairs\n",
                           algorithm_label(algos[0]), c.groups.size(), c.assignment_comparisons,
                           intra_pair_count(c));
  std::cout << "wrote " << path.string() << '\n';
  return kOk;
}

int cmd_evaluate(const GlobalFlags& g, const AlgoFlags& f, const fs::path& input,
                 const std::optional<fs::path>& gold_path, bool measure_given) {
  const Dataset data = load_dataset(input);
  if (data.empty()) throw InvalidArgument("dataset is empty");
  GoldStandard gold;
  if (gold_path) {
    gold = load_gold(*gold_path, data);
    if (measure_given && parse_measure(g.measure) != gold.measure) {
      throw InvalidArgument(fmt::format("--measure {} does not match the gold standard ({})", g.measure,
                                        to_string(gold.measure)));
    }
  } else {
    gold = make_gold(data, parse_measure(g.measure), g, false);
  }
  std::string text = csv_header() + '\n';
  std::cout << text;
  for (const auto& algo : make_algorithms(f, dataset_dimension(data), g.seed, g.threads)) {
    const auto row = to_csv_row(evaluate(data, algo, gold.measure, gold));
    std::cout << row << '\n';
    text += row + '\n';
  }
  ensure_dir(g.out_dir);
  write_text(g.out_dir / "report.csv", text);
  return kOk;
}

int cmd_sweep(const GlobalFlags& g, const SpecFlags& sf, const AlgoFlags& af, const std::optional<fs::path>& input,
              const std::vector<std::size_t>& sizes, const std::vector<std::string>& measures) {
  const Dataset data = input ? load_dataset(*input) : sample_dataset(make_spec(sf, g.seed));
  if (data.empty()) throw InvalidArgument("dataset is empty");
  ExperimentPlan plan;
  if (!sizes.empty()) plan.sizes = sizes;
  plan.measures.clear();
  for (const auto& m : measures) plan.measures.push_back(parse_measure(m));
  plan.algorithms = make_algorithms(af, dataset_dimension(data), g.seed, g.threads);
  plan.out_dir = g.out_dir;
  plan.threshold = parse_threshold(g.threshold);
  plan.threads = g.threads;
  const SweepResult result = run_sweep(data, plan, &std::cout);
  std::cout << "wrote " << (g.out_dir / "report.csv").string() << '\n';
  if (!result.complete) {
    std::cerr << "sweep stopped early: " << result.error << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topic-distribution clustering for pruning pairwise document similarity"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; [generate]-style sections address subcommands");

  GlobalFlags g;
  app.add_option("--seed", g.seed, "seed for generation, K-Means and Random");
  app.add_option("--out-dir", g.out_dir, "directory for outputs");
  auto* measure_opt = app.add_option("--measure", g.measure, "similarity measure")->check(CLI::IsMember({"js", "he"}));
  app.add_option("--threshold", g.threshold, "similarity threshold in [0, 1] or 'auto'");
  app.add_option("--threads", g.threads, "worker threads for pairwise work (0 = all cores)");

  std::optional<fs::path> output;
  fs::path input;
  std::optional<fs::path> sweep_input;
  std::optional<fs::path> gold_path;
  SpecFlags spec_flags;
  AlgoFlags algo_flags;
  std::vector<std::size_t> sizes;
  std::vector<std::string> measures{"js", "he"};

  auto* generate = app.add_subcommand("generate", "sample a synthetic Dirichlet dataset (JSONL)");
  add_spec_flags(generate, spec_flags);
  generate->add_option("-o,--output", output, "output file (default <out-dir>/dataset.jsonl)");

  auto* gold = app.add_subcommand("gold", "build the exhaustive gold standard of a dataset");
  gold->add_option("dataset", input, "dataset JSONL")->required();
  gold->add_option("-o,--output", output, "output file (default <out-dir>/gold_<measure>.txt)");

  auto* cluster = app.add_subcommand("cluster", "run one clustering algorithm");
  cluster->add_option("dataset", input, "dataset JSONL")->required();
  add_algo_flags(cluster, algo_flags, "tdc, rdc, crdc, kmeans, dbscan or random", "--k,--clusters");
  cluster->add_option("-o,--output", output, "output file (default <out-dir>/clusters_<algo>.csv)");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "score algorithms against a gold standard");
  evaluate_cmd->add_option("dataset", input, "dataset JSONL")->required();
  evaluate_cmd->add_option("--gold", gold_path, "gold file; built on the fly when omitted");
  add_algo_flags(evaluate_cmd, algo_flags, "comma-separated algorithms or 'all' (default)", "--k,--clusters");

  auto* sweep = app.add_subcommand("sweep", "evaluate every algorithm over growing prefixes of a dataset");
  sweep->add_option("dataset", sweep_input, "dataset JSONL; generated from --n, --k, --alpha and friends when omitted");
  add_spec_flags(sweep, spec_flags);
  add_algo_flags(sweep, algo_flags, "comma-separated algorithms or 'all' (default)", "--clusters");
  sweep->add_option("--sizes", sizes, "comma-separated prefix sizes")->delimiter(',');
  sweep->add_option("--measures", measures, "comma-separated measures")
      ->delimiter(',')
      ->check(CLI::IsMember({"js", "he"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::FileError& e) {
    app.exit(e);
    return kIoFailure;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidArguments;
  }

  try {
    if (*generate) return cmd_generate(g, spec_flags, output);
    if (*gold) return cmd_gold(g, input, output);
    if (*cluster) return cmd_cluster(g, algo_flags, input, output);
    if (*evaluate_cmd) return cmd_evaluate(g, algo_flags, input, gold_path, measure_opt->count() > 0);
    if (*sweep) {
      if (measure_opt->count() > 0 && sweep->get_option("--measures")->count() == 0) measures = {g.measure};
      return cmd_sweep(g, spec_flags, algo_flags, sweep_input, sizes, measures);
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const EstimationFailed& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kEstimationFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
