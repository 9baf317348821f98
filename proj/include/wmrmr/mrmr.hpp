#pragma once

#include <span>
#include <vector>

#include "wmrmr/mutinfo.hpp"

namespace wmrmr {

// Weight factor trading relevance against redundancy: alpha * D - (1 - alpha) * R.
// alpha = 0.5 ranks identically to plain D - R.
struct MrmrConfig {
  double alpha = 0.5;

  void validate() const;
};

// One greedy ranking. Prefix m of `order` is the candidate subset S_m.
struct RankingResult {
  double alpha = 0.0;
  std::vector<int> order;
  std::vector<double> step_scores;      // maximized step objective per step
  std::vector<double> relevance_curve;  // D(S_m)
  std::vector<double> redundancy_curve; // R(S_m)

  std::vector<int> prefix(std::size_t m) const {
    return {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m)};
  }
};

// Mean feature-class information over the subset.
double relevance(std::span<const int> subset, const MIMatrix& mi);

// Mean pairwise information over all ordered pairs of the subset, diagonal
// included: (1/|S|^2) sum_{i,j in S} I(x_i; x_j).
double redundancy(std::span<const int> subset, const MIMatrix& mi);

double weighted_phi(double d_value, double r_value, const MrmrConfig& cfg);

// Step 1 takes the most relevant feature regardless of alpha. Step m >= 2
// takes the remaining feature maximizing
//   alpha * I(x_j; c) - (1 - alpha) / (m - 1) * sum_{i in S_{m-1}} I(x_j; x_i).
// Ties go to the lowest feature index.
RankingResult incremental_rank(const MIMatrix& mi, const MrmrConfig& cfg);

}  // namespace wmrmr
