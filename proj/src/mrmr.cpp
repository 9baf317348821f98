#include "wmrmr/mrmr.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace wmrmr {
namespace {

void check_subset(std::span<const int> subset, const MIMatrix& mi) {
  if (subset.empty()) throw std::invalid_argument("feature subset is empty");
  for (int i : subset) {
    if (i < 0 || static_cast<std::size_t>(i) >= mi.size()) {
      throw std::out_of_range(fmt::format("feature index {} out of range", i));
    }
  }
}

}  // namespace

void MrmrConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument(fmt::format("alpha {} outside [0, 1]", alpha));
  }
}

double relevance(std::span<const int> subset, const MIMatrix& mi) {
  check_subset(subset, mi);
  double sum = 0.0;
  for (int i : subset) sum += mi.class_relevance[static_cast<std::size_t>(i)];
  return sum / static_cast<double>(subset.size());
}

double redundancy(std::span<const int> subset, const MIMatrix& mi) {
  check_subset(subset, mi);
  double sum = 0.0;
  for (int i : subset) {
    for (int j : subset) sum += mi.pairwise(i, j);
  }
  const auto n = static_cast<double>(subset.size());
  return sum / (n * n);
}

double weighted_phi(double d_value, double r_value, const MrmrConfig& cfg) {
  return cfg.alpha * d_value - (1.0 - cfg.alpha) * r_value;
}

RankingResult incremental_rank(const MIMatrix& mi, const MrmrConfig& cfg) {
  cfg.validate();
  const std::size_t n = mi.size();
  if (n == 0) throw std::invalid_argument("incremental_rank: empty MI matrix");

  RankingResult out;
  out.alpha = cfg.alpha;
  std::vector<bool> taken(n, false);
  // Running sum over the selected set of I(x_j; x_i), per candidate j.
  std::vector<double> redundancy_sum(n, 0.0);
  double relevance_total = 0.0;
  double pair_total = 0.0;  // sum over ordered pairs, diagonal included

  for (std::size_t m = 1; m <= n; ++m) {
    int best = -1;
    double best_score = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (taken[j]) continue;
      double score = 0.0;
      if (m == 1) {
        score = mi.class_relevance[j];
      } else {
        score = cfg.alpha * mi.class_relevance[j] -
                (1.0 - cfg.alpha) * (redundancy_sum[j] / static_cast<double>(m - 1));
      }
      if (best < 0 || score > best_score) {
        best = static_cast<int>(j);
        best_score = score;
      }
    }
    const auto b = static_cast<std::size_t>(best);
    if (m == 1) best_score = cfg.alpha * mi.class_relevance[b];

    // Cross terms with earlier picks appear twice among ordered pairs.
    pair_total += 2.0 * redundancy_sum[b] + mi.pairwise(best, best);
    relevance_total += mi.class_relevance[b];
    taken[b] = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (!taken[j]) redundancy_sum[j] += mi.pairwise(static_cast<Eigen::Index>(j), best);
    }

    const auto size = static_cast<double>(m);
    out.order.push_back(best);
    out.step_scores.push_back(best_score);
    out.relevance_curve.push_back(relevance_total / size);
    out.redundancy_curve.push_back(pair_total / (size * size));
  }
  return out;
}

}  // namespace wmrmr
