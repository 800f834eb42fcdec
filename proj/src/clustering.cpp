#include "dirclust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "dirclust/error.hpp"

namespace dirclust {

std::size_t Clustering::document_count() const noexcept {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.members.size();
  return n;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string join_indices(std::span<const std::size_t> ranked) {
  std::string key;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (i) key += '|';
    key += std::to_string(ranked[i] + 1);
  }
  return key;
}

void check_config(const KeyAlgorithm& algo, std::size_t k) {
  std::visit(overloaded{
                 [](const TdcConfig& c) {
                   if (!(c.epsilon >= 0.0)) throw InvalidArgument("tdc: epsilon must be >= 0");
                 },
                 [k](const RdcConfig& c) {
                   if (c.top < 1 || c.top > k) {
                     throw InvalidArgument(fmt::format("rdc: top must be in [1, {}], got {}", k, c.top));
                   }
                 },
                 [](const CrdcConfig& c) {
                   if (!(c.cum_weight > 0.0 && c.cum_weight <= 1.0)) {
                     throw InvalidArgument(
                         fmt::format("crdc: cumulative weight must be in (0, 1], got {}", c.cum_weight));
                   }
                 },
             },
             algo);
}

}  // namespace

std::string describe(const KeyAlgorithm& algo) {
  return std::visit(overloaded{
                        [](const TdcConfig& c) {
                          return c.epsilon == kTdcEpsilon ? std::string("tdc")
                                                          : fmt::format("tdc(eps={})", c.epsilon);
                        },
                        [](const RdcConfig& c) { return fmt::format("rdc(top={})", c.top); },
                        [](const CrdcConfig& c) { return fmt::format("crdc(w={})", c.cum_weight); },
                    },
                    algo);
}

std::string tdc_key(std::span<const double> weights, double epsilon) {
  std::string key;
  if (weights.size() < 2) return key;
  key.reserve(weights.size() - 1);
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    const double cur = weights[i];
    const double next = weights[i + 1];
    if (cur < next - epsilon) {
      key += '1';
    } else if (cur > next + epsilon) {
      key += '2';
    } else {
      key += '0';
    }
  }
  return key;
}

std::vector<std::size_t> rank_topics(std::span<const double> weights) {
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  return order;
}

std::string rdc_key(std::span<const double> weights, std::size_t top) {
  if (top < 1 || top > weights.size()) {
    throw InvalidArgument(fmt::format("rdc: top must be in [1, {}], got {}", weights.size(), top));
  }
  const auto ranked = rank_topics(weights);
  return join_indices(std::span(ranked).first(top));
}

std::string crdc_key(std::span<const double> weights, double cum_weight) {
  if (!(cum_weight > 0.0 && cum_weight <= 1.0)) {
    throw InvalidArgument(fmt::format("crdc: cumulative weight must be in (0, 1], got {}", cum_weight));
  }
  const auto ranked = rank_topics(weights);
  double sum = 0.0;
  std::size_t taken = 0;
  while (taken < ranked.size()) {
    sum += weights[ranked[taken]];
    ++taken;
    if (sum >= cum_weight - kCrdcSumTolerance) break;
  }
  return join_indices(std::span(ranked).first(taken));
}

std::string cluster_key(const KeyAlgorithm& algo, std::span<const double> weights) {
  return std::visit(overloaded{
                        [&](const TdcConfig& c) { return tdc_key(weights, c.epsilon); },
                        [&](const RdcConfig& c) { return rdc_key(weights, c.top); },
                        [&](const CrdcConfig& c) { return crdc_key(weights, c.cum_weight); },
                    },
                    algo);
}

Clustering assign_clusters(const Dataset& dataset, const KeyAlgorithm& algo) {
  if (dataset.empty()) throw InvalidArgument("cannot cluster an empty dataset");
  const std::size_t k = dataset_dimension(dataset);
  check_config(algo, k);

  Clustering out;
  out.algorithm = describe(algo);
  std::map<std::string, std::vector<std::size_t>> by_key;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (auto v = validate(dataset[i]); !v) {
      throw InvalidArgument(fmt::format("document '{}': {}", dataset[i].doc_id, v.message));
    }
    by_key[cluster_key(algo, dataset[i].view())].push_back(i);
    ++out.key_computations;
  }
  out.groups.reserve(by_key.size());
  for (auto& [key, members] : by_key) out.groups.push_back({key, std::move(members)});
  return out;
}

std::uint64_t intra_pair_count(const Clustering& clustering) noexcept {
  std::uint64_t total = 0;
  for (const auto& g : clustering.groups) {
    const auto s = static_cast<std::uint64_t>(g.members.size());
    total += s * s;
  }
  return total;
}

Validation check_partition(const Clustering& clustering, std::size_t n) {
  std::vector<char> seen(n, 0);
  for (const auto& g : clustering.groups) {
    if (g.members.empty()) return {false, fmt::format("group '{}' is empty", g.key)};
    for (std::size_t m : g.members) {
      if (m >= n) return {false, fmt::format("member {} out of range (n = {})", m, n)};
      if (seen[m]) return {false, fmt::format("document {} appears in more than one group", m)};
      seen[m] = 1;
    }
  }
  const auto missing = std::find(seen.begin(), seen.end(), 0);
  if (missing != seen.end()) {
    return {false, fmt::format("document {} is in no group", missing - seen.begin())};
  }
  return {};
}

void canonicalize_numbered(Clustering& clustering) {
  auto& groups = clustering.groups;
  std::erase_if(groups, [](const Group& g) { return g.members.empty(); });
  for (auto& g : groups) std::sort(g.members.begin(), g.members.end());
  std::sort(groups.begin(), groups.end(),
            [](const Group& a, const Group& b) { return a.members.front() < b.members.front(); });
  for (std::size_t i = 0; i < groups.size(); ++i) groups[i].key = std::to_string(i);
}

}  // namespace dirclust
