#include "dirclust/algorithm.hpp"

#include <fmt/format.h>

#include "dirclust/error.hpp"

namespace dirclust {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string_view algorithm_name(const AlgorithmConfig& config) {
  static constexpr std::string_view names[] = {"tdc", "rdc", "crdc", "kmeans", "dbscan", "random"};
  return names[config.index()];
}

std::string algorithm_params(const AlgorithmConfig& config) {
  return std::visit(
      overloaded{
          [](const TdcConfig& c) {
            return c.epsilon == kTdcEpsilon ? std::string() : fmt::format("eps={}", c.epsilon);
          },
          [](const RdcConfig& c) { return fmt::format("top={}", c.top); },
          [](const CrdcConfig& c) { return fmt::format("w={}", c.cum_weight); },
          [](const KMeansConfig& c) { return fmt::format("k={};max_iter={}", c.k, c.max_iterations); },
          [](const DbscanConfig& c) {
            auto p = fmt::format("eps={};min_pts={}", c.eps, c.min_pts);
            if (c.pivots != DbscanConfig{}.pivots) p += fmt::format(";pivots={}", c.pivots);
            return p;
          },
          [](const RandomConfig& c) { return fmt::format("m={}", c.m); },
      },
      config);
}

std::string algorithm_label(const AlgorithmConfig& config) {
  const auto params = algorithm_params(config);
  if (params.empty()) return std::string(algorithm_name(config));
  return fmt::format("{}({})", algorithm_name(config), params);
}

AlgorithmConfig default_algorithm(std::string_view name, std::size_t k, std::uint64_t seed) {
  if (name == "tdc") return TdcConfig{};
  if (name == "rdc") return RdcConfig{};
  if (name == "crdc") return CrdcConfig{};
  if (name == "kmeans") return KMeansConfig{.k = k, .max_iterations = 50, .seed = seed};
  if (name == "dbscan") return DbscanConfig{};
  if (name == "random") return RandomConfig{.m = k, .seed = seed};
  throw InvalidArgument(
      fmt::format("unknown algorithm '{}' (expected tdc, rdc, crdc, kmeans, dbscan or random)", name));
}

bool is_key_based(const AlgorithmConfig& config) noexcept { return config.index() <= 2; }

Clustering run_clustering(const Dataset& dataset, const AlgorithmConfig& config, Measure measure,
                          ComparisonCounter& counter) {
  return std::visit(
      overloaded{
          [&](const TdcConfig& c) { return assign_clusters(dataset, c); },
          [&](const RdcConfig& c) { return assign_clusters(dataset, c); },
          [&](const CrdcConfig& c) { return assign_clusters(dataset, c); },
          [&](const KMeansConfig& c) { return kmeans(dataset, c, counter); },
          [&](const DbscanConfig& c) { return dbscan(dataset, c, measure, counter); },
          [&](const RandomConfig& c) { return random_partition(dataset, c.m, c.seed); },
      },
      config);
}

}  // namespace dirclust
