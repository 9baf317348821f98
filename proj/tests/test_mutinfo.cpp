#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "wmrmr/mutinfo.hpp"
#include "wmrmr/random.hpp"

using namespace wmrmr;

namespace {

std::vector<int> random_symbols(Rng& rng, std::size_t n, int alphabet) {
  std::vector<int> out(n);
  for (auto& v : out) v = static_cast<int>(rng.index(static_cast<std::uint64_t>(alphabet)));
  return out;
}

DiscretizedDataset table(const std::vector<std::vector<int>>& columns) {
  DiscretizedDataset dd;
  const auto n = static_cast<Eigen::Index>(columns.front().size());
  dd.bins.resize(n, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (Eigen::Index i = 0; i < n; ++i) dd.bins(i, static_cast<Eigen::Index>(j)) = columns[j][static_cast<std::size_t>(i)];
    dd.bin_count_per_feature.push_back(*std::max_element(columns[j].begin(), columns[j].end()) + 1);
  }
  dd.source_edges.resize(columns.size());
  dd.requested_bins = 10;
  return dd;
}

}  // namespace

TEST_CASE("entropy examples") {
  CHECK(entropy(std::vector<int>{0, 1, 0, 1}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(entropy(std::vector<int>{3, 3, 3}) == 0.0);
  const double expected = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
  CHECK(std::abs(entropy(std::vector<int>{7, 7, 7, -2}) - expected) < 1e-12);
  CHECK(std::abs(expected - 0.8113) < 1e-4);
  CHECK_THROWS_AS(entropy(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("mutual information examples") {
  CHECK(std::abs(mutual_information(std::vector<int>{0, 0, 1, 1}, std::vector<int>{0, 1, 0, 1})) < 1e-15);
  CHECK(mutual_information(std::vector<int>{0, 1, 0, 1}, std::vector<int>{0, 1, 0, 1}) ==
        doctest::Approx(1.0).epsilon(1e-15));
  // 4-cell joint table: p(0,0)=1/2, p(1,0)=1/4, p(1,1)=1/4
  const double by_hand = 0.5 * std::log2(0.5 / (0.5 * 0.75)) + 0.25 * std::log2(0.25 / (0.5 * 0.75)) +
                         0.25 * std::log2(0.25 / (0.5 * 0.25));
  const double mi = mutual_information(std::vector<int>{0, 0, 1, 1}, std::vector<int>{0, 0, 0, 1});
  CHECK(std::abs(mi - by_hand) < 1e-12);
  CHECK(std::abs(mi - 0.3113) < 1e-4);
  CHECK_THROWS_AS(mutual_information(std::vector<int>{0, 1}, std::vector<int>{0}), std::invalid_argument);
  CHECK_THROWS_AS(mutual_information(std::vector<int>{}, std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("mutual information agrees with the joint-entropy identity") {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + rng.index(120);
    auto x = random_symbols(rng, n, 1 + static_cast<int>(rng.index(6)));
    auto y = random_symbols(rng, n, 1 + static_cast<int>(rng.index(6)));
    if (trial % 3 == 0) {
      for (std::size_t i = 0; i < n; ++i) if (rng.uniform() < 0.6) y[i] = x[i];  // correlated pairs
    }
    const double mi = mutual_information(x, y);
    CHECK(std::abs(mi - oracle::mutual_information(x, y)) < 1e-10);
    CHECK(mi == mutual_information(y, x));
    CHECK(mi >= -1e-12);
  }
}

TEST_CASE("relabeling symbols leaves MI unchanged") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_symbols(rng, 80, 5);
    const auto y = random_symbols(rng, 80, 4);
    std::vector<int> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(std::span<int>(perm));
    std::vector<int> relabeled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) relabeled[i] = perm[static_cast<std::size_t>(x[i])] * 17 - 3;
    CHECK(std::abs(mutual_information(x, y) - mutual_information(relabeled, y)) < 1e-12);
  }
}

TEST_CASE("class relevance") {
  const std::vector<int> labels{0, 1, 1, 0, 1, 0, 0, 1};
  std::vector<int> noisy{0, 1, 0, 0, 1, 1, 0, 1};
  const DiscretizedDataset dd = table({labels, std::vector<int>(8, 0), noisy});
  const auto rel = class_relevance_vector(dd, labels);
  CHECK(rel[0] == doctest::Approx(entropy(labels)).epsilon(1e-14));
  CHECK(rel[1] == 0.0);
  CHECK(rel[2] == mutual_information(noisy, labels));
}

TEST_CASE("pairwise MI matrix") {
  SUBCASE("identical features") {
    const std::vector<int> a{0, 1, 2, 0, 1, 2, 2, 1};
    const std::vector<int> labels{0, 1, 0, 1, 0, 1, 0, 1};
    const MIMatrix mi = pairwise_mi_matrix(table({a, a}), labels);
    CHECK(mi.pairwise(0, 1) == doctest::Approx(mi.pairwise(0, 0)).epsilon(1e-14));
    CHECK(mi.pairwise(1, 1) == doctest::Approx(entropy(a)).epsilon(1e-14));
  }
  SUBCASE("N=3 symmetric with entropies on the diagonal") {
    Rng rng(4);
    std::vector<std::vector<int>> cols;
    for (int j = 0; j < 3; ++j) cols.push_back(random_symbols(rng, 40, 3 + j));
    const auto labels = random_symbols(rng, 40, 2);
    const MIMatrix mi = pairwise_mi_matrix(table(cols), labels);
    for (Eigen::Index i = 0; i < 3; ++i) {
      CHECK(std::abs(mi.pairwise(i, i) - entropy(cols[static_cast<std::size_t>(i)])) < 1e-12);
      for (Eigen::Index j = 0; j < 3; ++j) CHECK(mi.pairwise(i, j) == mi.pairwise(j, i));
    }
  }
  SUBCASE("N=5 random table matches scalar calls cell by cell") {
    Rng rng(5);
    std::vector<std::vector<int>> cols;
    for (int j = 0; j < 5; ++j) cols.push_back(random_symbols(rng, 60, 2 + j));
    const auto labels = random_symbols(rng, 60, 2);
    for (unsigned threads : {1u, 3u}) {
      const MIMatrix mi = pairwise_mi_matrix(table(cols), labels, threads);
      for (std::size_t i = 0; i < 5; ++i) {
        CHECK(mi.class_relevance[i] == mutual_information(cols[i], labels));
        for (std::size_t j = 0; j < 5; ++j) {
          CHECK(std::abs(mi.pairwise(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                         mutual_information(cols[i], cols[j])) < 1e-12);
        }
      }
    }
  }
  SUBCASE("non-negative within 1e-12 and carries the bin record") {
    Rng rng(6);
    std::vector<std::vector<int>> cols;
    for (int j = 0; j < 8; ++j) cols.push_back(random_symbols(rng, 25, 1 + j % 4));
    const MIMatrix mi = pairwise_mi_matrix(table(cols), random_symbols(rng, 25, 2));
    CHECK(mi.pairwise.minCoeff() >= -1e-12);
    CHECK(mi.requested_bins == 10);
    CHECK(mi.bin_count_per_feature.size() == 8);
  }
  SUBCASE("label length must match") {
    CHECK_THROWS(pairwise_mi_matrix(table({{0, 1, 0, 1}}), std::vector<int>{0, 1}));
  }
}
