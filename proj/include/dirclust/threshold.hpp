#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace dirclust {

/// Pair similarities counted per two-decimal bin. Bin b holds similarities in
/// [b/100, (b+1)/100); a similarity of exactly 1 lands in bin 100.
class SimilarityHistogram {
 public:
  static int bin_of(double similarity) noexcept;
  static double bin_label(int bin) noexcept { return bin / 100.0; }
  static double bin_center(int bin) noexcept { return (bin + 0.5) / 100.0; }

  void add(double similarity, std::uint64_t count = 1);
  void add_bin(int bin, std::uint64_t count);
  void merge(const SimilarityHistogram& other);

  const std::map<int, std::uint64_t>& bins() const noexcept { return bins_; }
  std::uint64_t total() const noexcept;
  bool empty() const noexcept { return bins_.empty(); }

 private:
  std::map<int, std::uint64_t> bins_;
};

struct ThresholdOptions {
  int degree = 6;
  double step = 0.001;
  // Dips shallower than this fraction of the fitted range are ripples.
  double min_prominence = 0.05;
};

struct ThresholdEstimate {
  double threshold = 0.0;
  bool fallback = false;  // true when the fit had no interior minimum
  // Fitted polynomial in the normalised variable t = (x - center) / half_width.
  std::vector<double> coefficients;
  double center = 0.0;
  double half_width = 1.0;

  double fitted(double x) const;
};

/// Least-squares polynomial of `degree` through (xs, ys), returned in the
/// normalised variable described by ThresholdEstimate.
ThresholdEstimate fit_polynomial(std::span<const double> xs, std::span<const double> ys, int degree);

/// Fits a polynomial to (bin center, frequency) over every bin between the
/// lowest and highest non-empty bin (empty bins inside the range count as
/// zero) and samples it at `step` over [lowest center, highest center]. The
/// threshold is the first interior local minimum above the fit's highest
/// point, or failing that the last one below it. Boundary values are never
/// candidates, nor are dips shallower than `min_prominence` of the fitted
/// range (polynomial ripples in a sparse tail). When the fit has no such
/// minimum (e.g. it is monotone), returns the center of the least frequent bin
/// strictly between the two most frequent bins.
///
/// Throws EstimationFailed when fewer than degree + 1 bins are non-empty or
/// the fallback has no bin to pick.
ThresholdEstimate estimate_threshold_detailed(const SimilarityHistogram& histogram,
                                              const ThresholdOptions& options = {});

double estimate_threshold(const SimilarityHistogram& histogram, const ThresholdOptions& options = {});

}  // namespace dirclust
