#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "dirclust/clustering.hpp"
#include "dirclust/error.hpp"
#include "support.hpp"

using namespace dirclust;
using V = std::vector<double>;

TEST_SUITE("clustering") {

TEST_CASE("trend keys") {
  CHECK(tdc_key(V{0.23, 0.18, 0.33, 0.13, 0.13}) == "2120");
  CHECK(tdc_key(V{0.25, 0.25, 0.25, 0.25}) == "000");
  CHECK(tdc_key(V{0.1, 0.2, 0.3, 0.4}) == "111");
  CHECK(tdc_key(V{0.5, 0.5}).size() == 1);
}

TEST_CASE("trend epsilon decides the sustained digit") {
  V w{0.5, 0.5 - 1e-12};
  CHECK(tdc_key(w) == "0");
  CHECK(tdc_key(w, 0.0) == "2");
  V close{0.333, 0.334, 0.333};
  CHECK(tdc_key(close, 1e-2) == "00");
  CHECK(tdc_key(close, 1e-4) == "12");
}

TEST_CASE("trend keys see coordinate order") {
  V up{0.1, 0.2, 0.3, 0.4};
  CHECK(tdc_key(V{0.4, 0.3, 0.2, 0.1}) != tdc_key(up));
  CHECK(tdc_key(V{0.2, 0.1, 0.3, 0.4}) != tdc_key(up));
  // Swapping 0.1 and 0.2 in (0.1, 0.3, 0.2, 0.4) keeps every consecutive
  // relation, so the key survives.
  CHECK(tdc_key(V{0.1, 0.3, 0.2, 0.4}) == "121");
  CHECK(tdc_key(V{0.2, 0.3, 0.1, 0.4}) == "121");
}

TEST_CASE("ranking keys") {
  V w{0.23, 0.18, 0.33, 0.13, 0.13};
  CHECK(rdc_key(w, 1) == "3");
  CHECK(rdc_key(w, 2) == "3|1");
  CHECK(rdc_key(w, 5) == "3|1|2|4|5");
  CHECK(rdc_key(V{0.5, 0.5}, 1) == "1");
  CHECK_THROWS_AS(rdc_key(w, 0), InvalidArgument);
  CHECK_THROWS_AS(rdc_key(w, 6), InvalidArgument);
  CHECK(rank_topics(w) == std::vector<std::size_t>{2, 0, 1, 3, 4});
}

TEST_CASE("cumulative ranking keys") {
  CHECK(crdc_key(V{0.36, 0.58, 0.05, 0.01}, 0.9) == "2|1");
  CHECK(crdc_key(V{0.5, 0.5, 0.0, 0.0}, 0.9) == "1|2");
  CHECK(crdc_key(V{0.5, 0.5, 0.0, 0.0}, 1.0) == "1|2");
  CHECK(crdc_key(V{0.36, 0.58, 0.05, 0.01}, 1e-9) == "2");
  // Reaching the threshold exactly stops the prefix.
  CHECK(crdc_key(V{0.5, 0.25, 0.25}, 0.75) == "1|2");
  // 0.6 + 0.3 is 0.8999999999999999 in binary floating point.
  CHECK(crdc_key(V{0.6, 0.3, 0.1}, 0.9) == "1|2");
  CHECK(crdc_key(V{0.6, 0.29, 0.11}, 0.9) == "1|2|3");
  CHECK_THROWS_AS(crdc_key(V{0.5, 0.5}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(crdc_key(V{0.5, 0.5}, 1.5), InvalidArgument);
}

TEST_CASE("cumulative key equals top-1 key when w is below the top weight") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 2000; ++t) {
    auto w = testing::random_simplex(rng, 2 + t % 20, 0.2);
    const double top = *std::max_element(w.begin(), w.end());
    std::uniform_real_distribution<double> below(1e-9, top);
    if (crdc_key(w, below(rng)) != rdc_key(w, 1)) FAIL("crdc/rdc disagree");
  }
}

TEST_CASE("key invariants on random vectors") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t k = 2 + t % 30;
    auto w = testing::random_simplex(rng, k, 0.3);
    auto tk = tdc_key(w);
    if (tk.size() != k - 1 || tk.find_first_not_of("012") != std::string::npos) FAIL("bad trend key " << tk);

    const std::size_t top = 1 + t % k;
    auto rk = rdc_key(w, top);
    std::set<std::string> parts;
    std::size_t count = 0, start = 0;
    while (true) {
      auto bar = rk.find('|', start);
      auto idx = std::stoul(rk.substr(start, bar - start));
      if (idx < 1 || idx > k) FAIL("index out of range");
      parts.insert(rk.substr(start, bar - start));
      ++count;
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    if (count != top || parts.size() != top) FAIL("ranking key must list distinct indices");
  }
}

TEST_CASE("worked examples group as expected") {
  auto d = testing::make_dataset({{0.23, 0.18, 0.33, 0.13, 0.13},
                                  {0.23, 0.18, 0.33, 0.13, 0.13},
                                  {0.10, 0.55, 0.05, 0.20, 0.10}});
  auto c = assign_clusters(d, RdcConfig{1});
  REQUIRE(c.groups.size() == 2);
  CHECK(c.groups[0].key == "2");
  CHECK(c.groups[0].members == std::vector<std::size_t>{2});
  CHECK(c.groups[1].key == "3");
  CHECK(c.groups[1].members == std::vector<std::size_t>{0, 1});
  CHECK(c.assignment_comparisons == 0);
  CHECK(c.key_computations == 3);
  CHECK(c.algorithm == "rdc(top=1)");
}

TEST_CASE("identical vectors share a group under every algorithm") {
  auto d = testing::make_dataset({{0.2, 0.3, 0.5}, {0.6, 0.3, 0.1}, {0.2, 0.3, 0.5}});
  for (KeyAlgorithm a : {KeyAlgorithm{TdcConfig{}}, KeyAlgorithm{RdcConfig{2}}, KeyAlgorithm{CrdcConfig{0.9}}}) {
    auto c = assign_clusters(d, a);
    bool together = false;
    for (const auto& g : c.groups) together = together || g.members == std::vector<std::size_t>{0, 2};
    CHECK(together);
  }
}

TEST_CASE("grouping equals the brute-force pairwise key comparison") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t * 5;
    const std::size_t k = 3 + t % 4;
    auto d = testing::random_dataset(rng, n, k);
    // Coarse weights produce many equal keys.
    for (auto& doc : d) {
      double s = 0.0;
      for (auto& w : doc.weights) s += (w = std::round(w * 4.0) + 0.1);
      for (auto& w : doc.weights) w /= s;
    }
    const KeyAlgorithm algos[] = {TdcConfig{}, RdcConfig{2}, CrdcConfig{0.8}};
    for (const auto& a : algos) {
      auto c = assign_clusters(d, a);
      REQUIRE(check_partition(c, n).valid);
      CHECK(c.assignment_comparisons == 0);
      CHECK(c.key_computations == n);
      std::vector<std::size_t> group_of(n);
      for (std::size_t g = 0; g < c.groups.size(); ++g) {
        for (auto i : c.groups[g].members) group_of[i] = g;
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const bool same_key = cluster_key(a, d[i].weights) == cluster_key(a, d[j].weights);
          if (same_key != (group_of[i] == group_of[j])) FAIL("grouping differs from key equality");
        }
      }
      for (std::size_t g = 1; g < c.groups.size(); ++g) CHECK(c.groups[g - 1].key < c.groups[g].key);
    }
  }
}

TEST_CASE("assignment input errors") {
  CHECK_THROWS_AS(assign_clusters({}, TdcConfig{}), InvalidArgument);
  auto mixed = testing::make_dataset({{0.5, 0.5}, {0.2, 0.3, 0.5}});
  CHECK_THROWS_AS(assign_clusters(mixed, TdcConfig{}), InvalidArgument);
  auto bad = testing::make_dataset({{0.5, 0.4}});
  CHECK_THROWS_AS(assign_clusters(bad, TdcConfig{}), InvalidArgument);
  auto one = testing::make_dataset({{0.5, 0.5}});
  CHECK_THROWS_AS(assign_clusters(one, RdcConfig{3}), InvalidArgument);
}

TEST_CASE("intra-cluster ordered pairs") {
  Clustering three;
  three.groups = {{"a", {0, 1, 2}}};
  CHECK(intra_pair_count(three) == 9);

  Clustering singles;
  for (std::size_t i = 0; i < 6; ++i) singles.groups.push_back({std::to_string(i), {i}});
  CHECK(intra_pair_count(singles) == 6);
  std::size_t self = 0;
  for_each_intra_pair(singles, [&](std::size_t i, std::size_t j) { self += i == j; });
  CHECK(self == 6);

  Clustering mixed;
  mixed.groups = {{"a", {0, 2}}, {"b", {1}}};
  CHECK(intra_pair_count(mixed) == 5);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for_each_intra_pair(mixed, [&](std::size_t i, std::size_t j) { seen.emplace(i, j); });
  CHECK(seen == std::set<std::pair<std::size_t, std::size_t>>{{0, 0}, {0, 2}, {2, 0}, {2, 2}, {1, 1}});
}

TEST_CASE("partition check and canonical numbering") {
  Clustering c;
  c.groups = {{"x", {3, 1}}, {"y", {2, 0}}};
  CHECK(check_partition(c, 4).valid);
  CHECK_FALSE(check_partition(c, 5).valid);
  canonicalize_numbered(c);
  CHECK(c.groups[0] == Group{"0", {0, 2}});
  CHECK(c.groups[1] == Group{"1", {1, 3}});
  c.groups[1].members.push_back(0);
  CHECK_FALSE(check_partition(c, 4).valid);
}

TEST_CASE("algorithm descriptions") {
  CHECK(describe(TdcConfig{}) == "tdc");
  CHECK(describe(RdcConfig{1}) == "rdc(top=1)");
  CHECK(describe(CrdcConfig{0.9}) == "crdc(w=0.9)");
}

}  // TEST_SUITE
