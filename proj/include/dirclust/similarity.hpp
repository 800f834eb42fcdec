#pragma once

#include <atomic>
#include <numbers>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "dirclust/distributions.hpp"

namespace dirclust {

enum class Measure { js, hellinger };

/// "js" or "he".
std::string_view to_string(Measure m) noexcept;
/// Accepts "js" and "he" (also "hellinger"); throws InvalidArgument otherwise.
Measure parse_measure(std::string_view name);

/// Counts pairwise evaluations. Increments are atomic so a single counter can
/// be shared by worker threads.
class ComparisonCounter {
 public:
  ComparisonCounter() = default;
  explicit ComparisonCounter(std::uint64_t start) : count_(start) {}
  ComparisonCounter(const ComparisonCounter&) = delete;
  ComparisonCounter& operator=(const ComparisonCounter&) = delete;

  void add(std::uint64_t n = 1) noexcept { count_.fetch_add(n, std::memory_order_relaxed); }
  std::uint64_t count() const noexcept { return count_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> count_{0};
};

// The JS divergence below uses the natural logarithm. Any other base only
// rescales the divergence.
inline constexpr double kJsLogBase = std::numbers::e;

/// sum_i p_i log(2 p_i / (p_i + q_i)) + q_i log(2 q_i / (q_i + p_i)).
///
/// This is twice the textbook (1/2-weighted) Jensen-Shannon divergence, so it
/// ranges over [0, 2 ln 2]. Terms with a zero weight contribute 0.
double js_divergence(std::span<const double> p, std::span<const double> q);

/// 10^(-js_divergence(p, q)), in (0, 1].
double sim_js(std::span<const double> p, std::span<const double> q);

/// (1/sqrt 2) * sqrt(sum_i (sqrt p_i - sqrt q_i)^2), in [0, 1].
double hellinger(std::span<const double> p, std::span<const double> q);

/// 1 - hellinger(p, q).
double sim_he(std::span<const double> p, std::span<const double> q);

/// Dissimilarity underlying `m`: JS divergence or Hellinger distance.
double dissimilarity(Measure m, std::span<const double> p, std::span<const double> q);

/// Similarity under `m`; bumps `counter` by exactly one.
double similarity(Measure m, std::span<const double> p, std::span<const double> q,
                  ComparisonCounter& counter);

inline double similarity(Measure m, const TopicDistribution& p, const TopicDistribution& q,
                         ComparisonCounter& counter) {
  return similarity(m, p.view(), q.view(), counter);
}

}  // namespace dirclust
