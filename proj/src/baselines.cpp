#include "dirclust/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "dirclust/detail/parallel.hpp"
#include "dirclust/error.hpp"

namespace dirclust {

namespace {

// Bound tolerance in metric units, far above the rounding of either measure.
constexpr double kPivotSlack = 1e-6;

double squared_euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void require_nonempty(const Dataset& dataset, const char* who) {
  if (dataset.empty()) throw InvalidArgument(fmt::format("{}: empty dataset", who));
  dataset_dimension(dataset);
}

std::vector<std::vector<double>> seed_plus_plus(const Dataset& data, std::size_t k, std::mt19937_64& rng) {
  const std::size_t n = data.size();
  std::vector<std::vector<double>> centers;
  centers.reserve(k);
  std::vector<char> chosen(n, 0);

  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  std::size_t pick = first(rng);
  centers.push_back(data[pick].weights);
  chosen[pick] = 1;

  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  while (centers.size() < k) {
    const auto& last = centers.back();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], squared_euclidean(data[i].view(), last));
      if (!chosen[i]) total += d2[i];
    }
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      const double target = u(rng);
      double acc = 0.0;
      pick = n;
      std::size_t last_candidate = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i] || d2[i] <= 0.0) continue;
        last_candidate = i;
        acc += d2[i];
        if (acc > target) {
          pick = i;
          break;
        }
      }
      if (pick == n) pick = last_candidate;
    } else {
      // Every remaining point duplicates a center: take one uniformly.
      std::vector<std::size_t> rest;
      for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) rest.push_back(i);
      }
      std::uniform_int_distribution<std::size_t> u(0, rest.size() - 1);
      pick = rest[u(rng)];
    }
    chosen[pick] = 1;
    centers.push_back(data[pick].weights);
  }
  return centers;
}

}  // namespace

KMeansModel fit_kmeans(const Dataset& dataset, const KMeansConfig& config, ComparisonCounter& counter) {
  require_nonempty(dataset, "kmeans");
  const std::size_t n = dataset.size();
  const std::size_t dim = dataset.front().dimension();
  if (config.k < 1) throw InvalidArgument("kmeans: k must be >= 1");
  if (config.max_iterations < 1) throw InvalidArgument("kmeans: max_iterations must be >= 1");
  if (config.k > n) throw InvalidArgument(fmt::format("kmeans: k = {} exceeds n = {}", config.k, n));
  if (!(config.convergence_tol >= 0.0)) throw InvalidArgument("kmeans: convergence_tol must be >= 0");

  const std::uint64_t before = counter.count();
  std::mt19937_64 rng(config.seed);
  KMeansModel model;
  model.centroids = seed_plus_plus(dataset, config.k, rng);
  const std::size_t k = config.k;

  constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> labels(n, kUnassigned);
  std::vector<double> best_d2(n, 0.0);

  for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
    std::vector<char> changed(n, 0);
    detail::parallel_blocks(0, n, config.threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
          const double d = squared_euclidean(dataset[i].view(), model.centroids[c]);
          if (d < best_d) {
            best_d = d;
            best = c;
          }
        }
        changed[i] = labels[i] != best;
        labels[i] = best;
        best_d2[i] = best_d;
      }
    });
    counter.add(static_cast<std::uint64_t>(k) * n);
    ++model.iterations;
    model.objective.push_back(std::accumulate(best_d2.begin(), best_d2.end(), 0.0));

    if (iter > 0 && std::none_of(changed.begin(), changed.end(), [](char c) { return c != 0; })) break;

    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto& s = sums[labels[i]];
      for (std::size_t j = 0; j < dim; ++j) s[j] += dataset[i].weights[j];
      ++sizes[labels[i]];
    }
    double movement = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] == 0) continue;  // empty cluster keeps its centroid
      for (double& v : sums[c]) v /= static_cast<double>(sizes[c]);
      movement = std::max(movement, std::sqrt(squared_euclidean(sums[c], model.centroids[c])));
      model.centroids[c] = std::move(sums[c]);
    }
    if (movement <= config.convergence_tol) break;
  }

  model.labels = labels;
  Clustering& out = model.clustering;
  out.algorithm = fmt::format("kmeans(k={},max_iter={})", config.k, config.max_iterations);
  out.groups.resize(k);
  for (std::size_t i = 0; i < n; ++i) out.groups[labels[i]].members.push_back(i);
  canonicalize_numbered(out);
  out.assignment_comparisons = counter.count() - before;
  return model;
}

Clustering kmeans(const Dataset& dataset, const KMeansConfig& config, ComparisonCounter& counter) {
  return fit_kmeans(dataset, config, counter).clustering;
}

Clustering dbscan(const Dataset& dataset, const DbscanConfig& config, Measure measure,
                  ComparisonCounter& counter) {
  require_nonempty(dataset, "dbscan");
  if (!(config.eps > 0.0)) throw InvalidArgument("dbscan: eps must be > 0");
  if (config.min_pts < 1) throw InvalidArgument("dbscan: min_pts must be >= 1");
  const std::size_t n = dataset.size();
  const std::uint64_t before = counter.count();

  // Both dissimilarities are monotone in a metric (sqrt of JS, Hellinger
  // itself), so distances to a few pivots give exact lower bounds and pairs
  // that cannot be within eps are never evaluated.
  const bool js = measure == Measure::js;
  const auto to_metric = [js](double raw) { return js ? std::sqrt(std::max(raw, 0.0)) : raw; };
  const double radius = to_metric(config.eps) + kPivotSlack;

  const std::size_t pivot_count = std::min(config.pivots, n);
  std::vector<std::size_t> pivots;
  std::vector<long> pivot_slot(n, -1);
  std::vector<std::vector<double>> pivot_raw;  // pivot_raw[t][x]
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::size_t next = 0;
  while (pivots.size() < pivot_count) {
    const std::size_t t = pivots.size();
    pivot_slot[next] = static_cast<long>(t);
    pivots.push_back(next);
    std::vector<double> row(n, 0.0);
    std::uint64_t evaluated = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (x == next) continue;
      if (pivot_slot[x] >= 0) {
        row[x] = pivot_raw[static_cast<std::size_t>(pivot_slot[x])][next];
        continue;
      }
      row[x] = dissimilarity(measure, dataset[next].view(), dataset[x].view());
      ++evaluated;
    }
    counter.add(evaluated);
    for (std::size_t x = 0; x < n; ++x) nearest[x] = std::min(nearest[x], to_metric(row[x]));
    pivot_raw.push_back(std::move(row));
    next = static_cast<std::size_t>(std::max_element(nearest.begin(), nearest.end()) - nearest.begin());
    if (!(nearest[next] > 0.0)) break;
  }
  std::vector<std::vector<double>> pivot_metric(pivot_raw.size());
  for (std::size_t t = 0; t < pivot_raw.size(); ++t) {
    pivot_metric[t].reserve(n);
    for (double raw : pivot_raw[t]) pivot_metric[t].push_back(to_metric(raw));
  }

  // forward[i] holds neighbours j > i.
  std::vector<std::vector<std::size_t>> forward(n);
  detail::parallel_blocks(0, n, config.threads, [&](std::size_t lo, std::size_t hi) {
    std::uint64_t evaluated = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double raw;
        if (pivot_slot[i] >= 0) {
          raw = pivot_raw[static_cast<std::size_t>(pivot_slot[i])][j];
        } else if (pivot_slot[j] >= 0) {
          raw = pivot_raw[static_cast<std::size_t>(pivot_slot[j])][i];
        } else {
          bool far = false;
          for (const auto& m : pivot_metric) {
            if (std::abs(m[i] - m[j]) > radius) {
              far = true;
              break;
            }
          }
          if (far) continue;
          raw = dissimilarity(measure, dataset[i].view(), dataset[j].view());
          ++evaluated;
        }
        if (raw <= config.eps) forward[i].push_back(j);
      }
    }
    counter.add(evaluated);
  });

  std::vector<std::vector<std::size_t>> neighbours(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : forward[i]) neighbours[j].push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    neighbours[i].push_back(i);
    neighbours[i].insert(neighbours[i].end(), forward[i].begin(), forward[i].end());
  }

  constexpr long kUnvisited = -2;
  constexpr long kNoise = -1;
  std::vector<long> label(n, kUnvisited);
  long cluster = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != kUnvisited) continue;
    if (neighbours[i].size() < config.min_pts) {
      label[i] = kNoise;
      continue;
    }
    label[i] = ++cluster;
    std::deque<std::size_t> frontier(neighbours[i].begin(), neighbours[i].end());
    while (!frontier.empty()) {
      const std::size_t q = frontier.front();
      frontier.pop_front();
      if (label[q] == kNoise) label[q] = cluster;
      if (label[q] != kUnvisited) continue;
      label[q] = cluster;
      if (neighbours[q].size() >= config.min_pts) {
        frontier.insert(frontier.end(), neighbours[q].begin(), neighbours[q].end());
      }
    }
  }

  Clustering out;
  out.algorithm = fmt::format("dbscan(eps={},min_pts={})", config.eps, config.min_pts);
  out.groups.resize(static_cast<std::size_t>(cluster + 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] == kNoise) {
      out.groups.push_back({"", {i}});
    } else {
      out.groups[static_cast<std::size_t>(label[i])].members.push_back(i);
    }
  }
  canonicalize_numbered(out);
  out.assignment_comparisons = counter.count() - before;
  return out;
}

Clustering random_partition(const Dataset& dataset, std::size_t m, std::uint64_t seed) {
  require_nonempty(dataset, "random");
  const std::size_t n = dataset.size();
  if (m < 1 || m > n) throw InvalidArgument(fmt::format("random: m must be in [1, {}], got {}", n, m));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  Clustering out;
  out.algorithm = fmt::format("random(m={})", m);
  out.groups.resize(m);
  for (std::size_t i = 0; i < n; ++i) out.groups[i % m].members.push_back(order[i]);
  canonicalize_numbered(out);
  return out;
}

}  // namespace dirclust
