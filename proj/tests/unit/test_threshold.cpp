#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "dirclust/error.hpp"
#include "dirclust/threshold.hpp"

using namespace dirclust;

namespace {

double normal_pdf(double x, double mu, double sd) {
  const double z = (x - mu) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

struct Mixture {
  double w1, mu1, sd1, mu2, sd2;
  double density(double x) const { return w1 * normal_pdf(x, mu1, sd1) + (1.0 - w1) * normal_pdf(x, mu2, sd2); }

  // Valley between the two means by a fine scan of the density.
  double valley() const {
    double best = mu1, low = density(mu1);
    for (double x = mu1; x <= mu2; x += 1e-6) {
      if (double v = density(x); v < low) {
        low = v;
        best = x;
      }
    }
    return best;
  }

  SimilarityHistogram histogram(double scale) const {
    SimilarityHistogram h;
    for (int b = 0; b < 100; ++b) {
      const auto count = static_cast<std::uint64_t>(std::llround(scale * density(SimilarityHistogram::bin_center(b))));
      if (count > 0) h.add_bin(b, count);
    }
    return h;
  }
};

// Independent least-squares fit: modified Gram-Schmidt in long double on the
// raw monomials of the bin center, every bin of the range included.
std::vector<long double> reference_fit(const SimilarityHistogram& h, int degree) {
  const int lo = h.bins().begin()->first, hi = h.bins().rbegin()->first;
  const std::size_t m = static_cast<std::size_t>(hi - lo + 1), cols = static_cast<std::size_t>(degree + 1);
  std::vector<std::vector<long double>> q(cols, std::vector<long double>(m));
  std::vector<long double> y(m);
  for (std::size_t r = 0; r < m; ++r) {
    const int bin = lo + static_cast<int>(r);
    const long double x = SimilarityHistogram::bin_center(bin);
    auto it = h.bins().find(bin);
    y[r] = it == h.bins().end() ? 0.0L : static_cast<long double>(it->second);
    long double p = 1.0L;
    for (std::size_t c = 0; c < cols; ++c, p *= x) q[c][r] = p;
  }
  std::vector<std::vector<long double>> rmat(cols, std::vector<long double>(cols, 0.0L));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t j = 0; j < c; ++j) {
      long double dot = 0.0L;
      for (std::size_t r = 0; r < m; ++r) dot += q[j][r] * q[c][r];
      rmat[j][c] = dot;
      for (std::size_t r = 0; r < m; ++r) q[c][r] -= dot * q[j][r];
    }
    long double norm = 0.0L;
    for (std::size_t r = 0; r < m; ++r) norm += q[c][r] * q[c][r];
    norm = std::sqrt(norm);
    rmat[c][c] = norm;
    for (std::size_t r = 0; r < m; ++r) q[c][r] /= norm;
  }
  std::vector<long double> qty(cols, 0.0L), coef(cols, 0.0L);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < m; ++r) qty[c] += q[c][r] * y[r];
  }
  for (std::size_t c = cols; c-- > 0;) {
    long double s = qty[c];
    for (std::size_t j = c + 1; j < cols; ++j) s -= rmat[c][j] * coef[j];
    coef[c] = s / rmat[c][c];
  }
  return coef;
}

long double eval(const std::vector<long double>& coef, long double x) {
  long double v = 0.0L;
  for (std::size_t c = coef.size(); c-- > 0;) v = v * x + coef[c];
  return v;
}

}  // namespace

TEST_SUITE("threshold") {

TEST_CASE("binning floors to two decimals") {
  CHECK(SimilarityHistogram::bin_of(0.0) == 0);
  CHECK(SimilarityHistogram::bin_of(0.349) == 34);
  CHECK(SimilarityHistogram::bin_of(0.35) == 35);
  CHECK(SimilarityHistogram::bin_of(0.999999) == 99);
  CHECK(SimilarityHistogram::bin_of(1.0) == 100);
  CHECK(SimilarityHistogram::bin_label(83) == doctest::Approx(0.83));

  SimilarityHistogram h;
  h.add(0.831);
  h.add(0.839);
  h.add(0.12, 5);
  CHECK(h.bins().at(83) == 2);
  CHECK(h.bins().at(12) == 5);
  CHECK(h.total() == 7);
  SimilarityHistogram g;
  g.add(0.835);
  h.merge(g);
  CHECK(h.bins().at(83) == 3);
}

TEST_CASE("polynomial fit reproduces a polynomial exactly") {
  std::vector<double> xs, ys;
  for (int i = 0; i < 40; ++i) {
    const double x = 0.2 + 0.015 * i;
    xs.push_back(x);
    ys.push_back(3.0 - 2.0 * x + 5.0 * x * x * x - x * x * x * x * x * x);
  }
  auto fit = fit_polynomial(xs, ys, 6);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(fit.fitted(xs[i]) == doctest::Approx(ys[i]).epsilon(1e-9));
}

TEST_CASE("symmetric bimodal histogram: valley at 0.55") {
  const Mixture mix{0.5, 0.2, 0.1, 0.9, 0.1};
  CHECK(mix.valley() == doctest::Approx(0.55).epsilon(1e-5));
  auto h = mix.histogram(1e5);
  const double t = estimate_threshold(h);
  CHECK(std::abs(t - 0.55) <= 0.02);

  // Oracle: minimum of an independently fitted polynomial between the modes.
  auto coef = reference_fit(h, 6);
  long double best_x = 0.3L, best = eval(coef, 0.3L);
  for (long double x = 0.3L; x <= 0.8L; x += 1e-4L) {
    if (auto v = eval(coef, x); v < best) {
      best = v;
      best_x = x;
    }
  }
  CHECK(std::abs(t - static_cast<double>(best_x)) <= 0.0015);
}

// Minimum of the independent fit between the two means.
double reference_valley(const Mixture& mix, const SimilarityHistogram& h) {
  auto coef = reference_fit(h, 6);
  long double best_x = mix.mu1, best = eval(coef, mix.mu1);
  for (long double x = mix.mu1; x <= mix.mu2; x += 1e-4L) {
    if (auto v = eval(coef, x); v < best) {
      best = v;
      best_x = x;
    }
  }
  return static_cast<double>(best_x);
}

TEST_CASE("asymmetric bimodal mixtures land near their valley") {
  // Includes a taller high-similarity hump, whose fit overshoots near the
  // upper boundary.
  const Mixture mixes[] = {
      {0.6, 0.25, 0.08, 0.8, 0.08},
      {0.3, 0.3, 0.07, 0.75, 0.1},
      {0.6, 0.25, 0.1, 0.85, 0.1},
      {0.4, 0.2, 0.1, 0.85, 0.1},
      {0.35, 0.25, 0.1, 0.85, 0.1},
  };
  for (const auto& mix : mixes) {
    auto h = mix.histogram(2e5);
    const double t = estimate_threshold(h);
    CAPTURE(mix.valley());
    CHECK(std::abs(t - mix.valley()) <= 0.02);
    CHECK(std::abs(t - reference_valley(mix, h)) <= 0.0015);
  }
}

TEST_CASE("narrow humps: the estimate follows the fit, not the data") {
  // A degree-6 curve cannot resolve a hump this narrow; the answer is the
  // fitted minimum, which sits 0.04 above the true valley.
  const Mixture mix{0.7, 0.15, 0.06, 0.65, 0.09};
  auto h = mix.histogram(2e5);
  const double t = estimate_threshold(h);
  CHECK(std::abs(t - reference_valley(mix, h)) <= 0.0015);
  CHECK(std::abs(t - mix.valley()) > 0.02);
}

TEST_CASE("estimator depends on shape only") {
  const Mixture mix{0.5, 0.2, 0.1, 0.9, 0.1};
  const auto h = mix.histogram(1e5);
  const double base = estimate_threshold(h);
  for (std::uint64_t factor : {2u, 7u, 1000u}) {
    SimilarityHistogram scaled;
    for (auto [b, c] : h.bins()) scaled.add_bin(b, c * factor);
    CHECK(estimate_threshold(scaled) == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("too few bins cannot be fitted") {
  SimilarityHistogram h;
  for (int b = 10; b < 16; ++b) h.add_bin(b, 10);
  CHECK_THROWS_AS(estimate_threshold(h), EstimationFailed);
  CHECK_THROWS_AS(estimate_threshold(SimilarityHistogram{}), EstimationFailed);
}

TEST_CASE("monotone data without a valley cannot be estimated") {
  // Linear decay: no interior minimum and the two tallest bins are adjacent.
  SimilarityHistogram h;
  for (int b = 0; b < 20; ++b) h.add_bin(40 + b, 2000 - 90 * static_cast<std::uint64_t>(b));
  CHECK_THROWS_AS(estimate_threshold(h), EstimationFailed);
}

TEST_CASE("fallback picks the emptiest bin between the two tallest bins") {
  // Rising counts with one shallow dip: the degree-6 fit stays monotone, the
  // raw data has its tallest bins at 0.59 and 0.57.
  SimilarityHistogram h;
  for (int b = 0; b < 20; ++b) {
    if (b != 18) h.add_bin(40 + b, 100 + 50 * static_cast<std::uint64_t>(b));
  }
  h.add_bin(58, 900);
  auto est = estimate_threshold_detailed(h);
  CHECK(est.fallback);
  CHECK(est.threshold == doctest::Approx(SimilarityHistogram::bin_center(58)));
}

}  // TEST_SUITE
