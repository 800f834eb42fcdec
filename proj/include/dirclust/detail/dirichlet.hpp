#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace dirclust {

namespace detail {

// Uniform variate on (0, 1].
template <class Rng>
double open_unit(Rng& rng) {
  return 1.0 - std::generate_canonical<double, std::numeric_limits<double>::digits>(rng);
}

// log of a Gamma(shape, 1) variate. For shape < 1 uses
// Gamma(a) = Gamma(a + 1) * U^(1/a), kept in log space so that very small
// shapes do not underflow to zero.
template <class Rng>
double log_gamma_variate(double shape, Rng& rng) {
  if (shape >= 1.0) {
    std::gamma_distribution<double> gamma(shape, 1.0);
    double g = 0.0;
    while (g <= 0.0) g = gamma(rng);
    return std::log(g);
  }
  std::gamma_distribution<double> gamma(shape + 1.0, 1.0);
  double g = 0.0;
  while (g <= 0.0) g = gamma(rng);
  return std::log(g) + std::log(open_unit(rng)) / shape;
}

}  // namespace detail

template <class Rng>
std::vector<double> sample_dirichlet(std::span<const double> shape, Rng& rng) {
  std::vector<double> out(shape.size());
  if (shape.empty()) return out;
  for (std::size_t i = 0; i < shape.size(); ++i) out[i] = detail::log_gamma_variate(shape[i], rng);

  const double top = *std::max_element(out.begin(), out.end());
  double sum = 0.0;
  for (double& v : out) {
    v = std::exp(v - top);
    sum += v;
  }
  for (double& v : out) v /= sum;
  return out;
}

}  // namespace dirclust
