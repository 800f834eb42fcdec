#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "dirclust/distributions.hpp"

namespace testing {

// Random point of the simplex, built with the standard library only so the
// tests do not lean on the generator they check. `zero_prob` blanks
// coordinates to exercise the 0 log 0 convention.
inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t k, double zero_prob = 0.0) {
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution blank(zero_prob);
  std::vector<double> w(k);
  double sum = 0.0;
  for (auto& x : w) {
    x = blank(rng) ? 0.0 : expo(rng);
    sum += x;
  }
  if (sum == 0.0) {
    w[0] = 1.0;
    return w;
  }
  for (auto& x : w) x /= sum;
  return w;
}

inline dirclust::Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t k, double zero_prob = 0.0) {
  dirclust::Dataset d;
  for (std::size_t i = 0; i < n; ++i) d.push_back({"doc" + std::to_string(i), random_simplex(rng, k, zero_prob)});
  return d;
}

inline dirclust::Dataset make_dataset(const std::vector<std::vector<double>>& rows) {
  dirclust::Dataset d;
  for (std::size_t i = 0; i < rows.size(); ++i) d.push_back({"p" + std::to_string(i + 1), rows[i]});
  return d;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("dirclust_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path data_dir() { return DIRCLUST_TEST_DATA; }

}  // namespace testing
