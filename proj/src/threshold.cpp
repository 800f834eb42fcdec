#include "dirclust/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "dirclust/error.hpp"

namespace dirclust {

int SimilarityHistogram::bin_of(double similarity) noexcept {
  const double b = std::floor(similarity * 100.0);
  if (!(b > 0.0)) return 0;
  if (b > 100.0) return 100;
  return static_cast<int>(b);
}

void SimilarityHistogram::add(double similarity, std::uint64_t count) { add_bin(bin_of(similarity), count); }

void SimilarityHistogram::add_bin(int bin, std::uint64_t count) {
  if (count == 0) return;
  bins_[bin] += count;
}

void SimilarityHistogram::merge(const SimilarityHistogram& other) {
  for (const auto& [bin, count] : other.bins_) bins_[bin] += count;
}

std::uint64_t SimilarityHistogram::total() const noexcept {
  std::uint64_t t = 0;
  for (const auto& [bin, count] : bins_) t += count;
  return t;
}

double ThresholdEstimate::fitted(double x) const {
  const double t = (x - center) / half_width;
  double y = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) y = y * t + *it;
  return y;
}

ThresholdEstimate fit_polynomial(std::span<const double> xs, std::span<const double> ys, int degree) {
  if (xs.size() != ys.size()) throw InvalidArgument("fit_polynomial: xs and ys differ in length");
  if (degree < 0) throw InvalidArgument("fit_polynomial: degree must be >= 0");
  if (xs.size() < static_cast<std::size_t>(degree) + 1) {
    throw InvalidArgument("fit_polynomial: not enough points for the requested degree");
  }

  ThresholdEstimate fit;
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  fit.center = 0.5 * (*lo + *hi);
  fit.half_width = *hi > *lo ? 0.5 * (*hi - *lo) : 1.0;

  const auto rows = static_cast<Eigen::Index>(xs.size());
  const auto cols = static_cast<Eigen::Index>(degree + 1);
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double t = (xs[static_cast<std::size_t>(r)] - fit.center) / fit.half_width;
    double power = 1.0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      design(r, c) = power;
      power *= t;
    }
    rhs(r) = ys[static_cast<std::size_t>(r)];
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  fit.coefficients.assign(coef.data(), coef.data() + coef.size());
  return fit;
}

ThresholdEstimate estimate_threshold_detailed(const SimilarityHistogram& histogram,
                                              const ThresholdOptions& options) {
  if (options.degree < 1) throw InvalidArgument("threshold estimation: degree must be >= 1");
  if (!(options.step > 0.0)) throw InvalidArgument("threshold estimation: step must be > 0");
  const auto& bins = histogram.bins();
  if (bins.size() < static_cast<std::size_t>(options.degree) + 1) {
    throw EstimationFailed(fmt::format(
        "need at least {} non-empty similarity bins to fit a degree-{} polynomial, found {}",
        options.degree + 1, options.degree, bins.size()));
  }

  const int first = bins.begin()->first;
  const int last = bins.rbegin()->first;
  std::vector<double> xs;
  std::vector<double> ys;
  for (int b = first; b <= last; ++b) {
    const auto it = bins.find(b);
    xs.push_back(SimilarityHistogram::bin_center(b));
    ys.push_back(it == bins.end() ? 0.0 : static_cast<double>(it->second));
  }

  ThresholdEstimate fit = fit_polynomial(xs, ys, options.degree);

  const double lo = xs.front();
  const double hi = xs.back();
  const auto steps = static_cast<std::size_t>(std::floor((hi - lo) / options.step + 1e-9));
  std::vector<double> grid_x;
  std::vector<double> grid_y;
  grid_x.reserve(steps + 2);
  for (std::size_t i = 0; i <= steps; ++i) grid_x.push_back(lo + static_cast<double>(i) * options.step);
  if (grid_x.back() < hi) grid_x.push_back(hi);
  grid_y.reserve(grid_x.size());
  for (double x : grid_x) grid_y.push_back(fit.fitted(x));

  // Interior local minima of the fit; a plateau counts once, at its left end.
  std::vector<std::size_t> minima;
  for (std::size_t i = 1; i + 1 < grid_y.size(); ++i) {
    if (!(grid_y[i] < grid_y[i - 1])) continue;
    std::size_t j = i;
    while (j + 1 < grid_y.size() && grid_y[j + 1] == grid_y[i]) ++j;
    if (j + 1 < grid_y.size() && grid_y[j + 1] > grid_y[i]) minima.push_back(i);
  }
  // A dip is a valley only when it sits between two humps of the fit, the
  // lower of the two tallest rising above it by min_prominence of the fit's
  // full range. Humps are interior local maxima plus the global maximum; any
  // other rise towards the range boundary is polynomial overshoot.
  const auto [low_it, high_it] = std::minmax_element(grid_y.begin(), grid_y.end());
  const double needed = options.min_prominence * (*high_it - *low_it);
  const double none = -std::numeric_limits<double>::infinity();
  std::vector<double> hump(grid_y.size(), none);
  for (std::size_t i = 1; i + 1 < grid_y.size(); ++i) {
    if (grid_y[i] > grid_y[i - 1] && grid_y[i] >= grid_y[i + 1]) hump[i] = grid_y[i];
  }
  hump[static_cast<std::size_t>(high_it - grid_y.begin())] = *high_it;
  std::vector<double> left_hump(grid_y.size()), right_hump(grid_y.size());
  const auto taller = [](double a, double b) { return std::max(a, b); };
  std::partial_sum(hump.begin(), hump.end(), left_hump.begin(), taller);
  std::partial_sum(hump.rbegin(), hump.rend(), right_hump.rbegin(), taller);
  std::erase_if(minima, [&](std::size_t i) { return std::min(left_hump[i], right_hump[i]) - grid_y[i] < needed; });

  // The valley that closes the dominant peak on its high-similarity side,
  // else the one that opens it.
  const auto peak = static_cast<std::size_t>(high_it - grid_y.begin());
  std::optional<std::size_t> best;
  for (std::size_t i : minima) {
    if (i > peak) {
      best = i;
      break;
    }
  }
  if (!best) {
    for (std::size_t i : minima) {
      if (i < peak) best = i;
    }
  }
  if (best) {
    fit.threshold = grid_x[*best];
    return fit;
  }

  // No valley in the fit: take the emptiest bin between the two tallest ones.
  std::size_t top1 = 0;
  for (std::size_t i = 1; i < ys.size(); ++i) {
    if (ys[i] > ys[top1]) top1 = i;
  }
  std::size_t top2 = top1 == 0 ? 1 : 0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (i != top1 && ys[i] > ys[top2]) top2 = i;
  }
  const auto [a, b] = std::minmax(top1, top2);
  if (b - a < 2) {
    throw EstimationFailed("fitted curve is monotone and the two most frequent bins are adjacent");
  }
  std::size_t pick = a + 1;
  for (std::size_t i = a + 1; i < b; ++i) {
    if (ys[i] < ys[pick]) pick = i;
  }
  fit.threshold = xs[pick];
  fit.fallback = true;
  return fit;
}

double estimate_threshold(const SimilarityHistogram& histogram, const ThresholdOptions& options) {
  return estimate_threshold_detailed(histogram, options).threshold;
}

}  // namespace dirclust
