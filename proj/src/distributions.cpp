#include "dirclust/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "dirclust/error.hpp"

namespace dirclust {

Validation validate(const TopicDistribution& dist) {
  if (dist.weights.size() < 2) {
    return {false, fmt::format("dimension {} is below the minimum of 2", dist.weights.size())};
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < dist.weights.size(); ++i) {
    const double w = dist.weights[i];
    if (!std::isfinite(w)) return {false, fmt::format("weight {} is not finite", i)};
    if (w < 0.0) return {false, fmt::format("weight {} is negative ({})", i, w)};
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    return {false, fmt::format("weights sum to {:.12g}, not 1", sum)};
  }
  return {};
}

std::size_t dataset_dimension(const Dataset& dataset) {
  if (dataset.empty()) return 0;
  const std::size_t k = dataset.front().dimension();
  for (const auto& d : dataset) {
    if (d.dimension() != k) {
      throw InvalidArgument(fmt::format("document '{}' has dimension {}, expected {}", d.doc_id,
                                        d.dimension(), k));
    }
  }
  return k;
}

HyperParams suggest_hyperparams(std::size_t n) {
  if (n < 2) throw InvalidArgument("suggest_hyperparams requires n >= 2");
  const auto k = static_cast<std::size_t>(std::floor(2.0 * std::sqrt(static_cast<double>(n) / 2.0)));
  return {k, 50.0 / static_cast<double>(k), 0.01};
}

void check_spec(const DatasetSpec& spec) {
  if (spec.n < 1) throw InvalidArgument("dataset spec: n must be >= 1");
  if (spec.k < 2) throw InvalidArgument("dataset spec: k must be >= 2");
  if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha)) {
    throw InvalidArgument("dataset spec: alpha must be a positive number");
  }
  if (spec.modes < 1) throw InvalidArgument("dataset spec: modes must be >= 1");
  if (spec.modes > 1 && (!(spec.mode_concentration > 0.0) || !std::isfinite(spec.mode_concentration))) {
    throw InvalidArgument("dataset spec: mode_concentration must be a positive number");
  }
  if (!(spec.mode_smoothing >= 0.0) || !std::isfinite(spec.mode_smoothing)) {
    throw InvalidArgument("dataset spec: mode_smoothing must be a non-negative number");
  }
}

namespace {

std::string make_doc_id(std::size_t index, std::size_t n) {
  const std::size_t width = std::to_string(n > 0 ? n - 1 : 0).size();
  return fmt::format("doc{:0{}}", index, width);
}

}  // namespace

Dataset sample_dataset(const DatasetSpec& spec) {
  check_spec(spec);
  std::mt19937_64 rng(spec.seed);

  const std::vector<double> symmetric(spec.k, spec.alpha);
  std::vector<std::vector<double>> mode_shapes;
  if (spec.modes > 1) {
    // Leading topics of the modes are distinct while there are enough topics.
    std::vector<std::size_t> leads(spec.k);
    std::iota(leads.begin(), leads.end(), std::size_t{0});
    std::shuffle(leads.begin(), leads.end(), rng);
    mode_shapes.reserve(spec.modes);
    for (std::size_t m = 0; m < spec.modes; ++m) {
      auto base = sample_dirichlet(std::span<const double>(symmetric), rng);
      if (m < spec.k) {
        const auto top = static_cast<std::size_t>(std::max_element(base.begin(), base.end()) - base.begin());
        std::swap(base[top], base[leads[m]]);
      }
      for (double& b : base) b = b * spec.mode_concentration + spec.mode_smoothing;
      mode_shapes.push_back(std::move(base));
    }
  }

  Dataset out;
  out.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    std::span<const double> shape = symmetric;
    if (spec.modes > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, spec.modes - 1);
      shape = mode_shapes[pick(rng)];
    }
    out.push_back({make_doc_id(i, spec.n), sample_dirichlet(shape, rng)});
  }
  return out;
}

void save_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  std::string line;
  for (const auto& d : dataset) {
    line.clear();
    line += "{\"id\":";
    line += nlohmann::json(d.doc_id).dump();
    line += ",\"weights\":[";
    for (std::size_t i = 0; i < d.weights.size(); ++i) {
      if (i) line += ',';
      line += fmt::format("{:.17g}", d.weights[i]);
    }
    line += "]}\n";
    os << line;
  }
  if (!os) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(fmt::format("cannot open dataset '{}'", path.string()));

  Dataset out;
  std::unordered_set<std::string> seen;
  std::size_t expected_dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(fmt::format("malformed JSON: {}", e.what()), line_no);
    }
    if (!record.is_object() || !record.contains("id") || !record.contains("weights") ||
        !record["id"].is_string() || !record["weights"].is_array()) {
      throw ParseError("record must be an object with a string \"id\" and an array \"weights\"", line_no);
    }

    TopicDistribution d;
    d.doc_id = record["id"].get<std::string>();
    d.weights.reserve(record["weights"].size());
    for (const auto& w : record["weights"]) {
      if (!w.is_number()) throw ParseError("weights must be numbers", line_no);
      d.weights.push_back(w.get<double>());
    }

    if (expected_dim == 0) {
      expected_dim = d.dimension();
    } else if (d.dimension() != expected_dim) {
      throw DimensionMismatch(
          fmt::format("record has {} weights, dataset dimension is {}", d.dimension(), expected_dim),
          line_no);
    }
    if (auto v = validate(d); !v) throw ParseError("invalid distribution: " + v.message, line_no);
    if (!seen.insert(d.doc_id).second) {
      throw ParseError(fmt::format("duplicate document id '{}'", d.doc_id), line_no);
    }
    out.push_back(std::move(d));
  }
  if (is.bad()) throw IoError(fmt::format("read from '{}' failed", path.string()));
  return out;
}

Dataset prefix(const Dataset& dataset, std::size_t size) {
  if (size > dataset.size()) {
    throw InvalidArgument(fmt::format("prefix size {} exceeds dataset size {}", size, dataset.size()));
  }
  return Dataset(dataset.begin(), dataset.begin() + static_cast<std::ptrdiff_t>(size));
}

}  // namespace dirclust
