#include "dirclust/similarity.hpp"

#include <cmath>

#include <fmt/format.h>

#include "dirclust/error.hpp"

namespace dirclust {

std::string_view to_string(Measure m) noexcept {
  switch (m) {
    case Measure::js:
      return "js";
    case Measure::hellinger:
      return "he";
  }
  return "?";
}

Measure parse_measure(std::string_view name) {
  if (name == "js" || name == "JS") return Measure::js;
  if (name == "he" || name == "HE" || name == "hellinger") return Measure::hellinger;
  throw InvalidArgument(fmt::format("unknown measure '{}' (expected js or he)", name));
}

namespace {

void require_same_dimension(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw InvalidArgument(fmt::format("dimension mismatch: {} vs {}", p.size(), q.size()));
  }
}

// a * log(2a / (a + b)) with 0 * log(.) = 0.
inline double js_term(double a, double b) {
  if (a <= 0.0) return 0.0;
  return a * std::log(2.0 * a / (a + b));
}

}  // namespace

double js_divergence(std::span<const double> p, std::span<const double> q) {
  require_same_dimension(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    // Both orders produce the same per-coordinate value, keeping the sum
    // exactly symmetric.
    sum += js_term(p[i], q[i]) + js_term(q[i], p[i]);
  }
  // Rounding can leave a tiny negative residue for near-identical inputs.
  return sum < 0.0 ? 0.0 : sum;
}

double sim_js(std::span<const double> p, std::span<const double> q) {
  return std::pow(10.0, -js_divergence(p, q));
}

double hellinger(std::span<const double> p, std::span<const double> q) {
  require_same_dimension(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    sum += d * d;
  }
  const double h = std::sqrt(sum) / std::sqrt(2.0);
  return h > 1.0 ? 1.0 : h;
}

double sim_he(std::span<const double> p, std::span<const double> q) { return 1.0 - hellinger(p, q); }

double dissimilarity(Measure m, std::span<const double> p, std::span<const double> q) {
  return m == Measure::js ? js_divergence(p, q) : hellinger(p, q);
}

double similarity(Measure m, std::span<const double> p, std::span<const double> q,
                  ComparisonCounter& counter) {
  const double s = m == Measure::js ? sim_js(p, q) : sim_he(p, q);
  counter.add();
  return s;
}

}  // namespace dirclust
