#pragma once

#include <vector>

#include "wmrmr/dataset.hpp"

namespace wmrmr {

// Principal axes of a (z-scored) dataset, truncated to the smallest number of
// components whose cumulative explained variance reaches the threshold.
struct PcaProjection {
  std::vector<double> mean_vector;
  Eigen::MatrixXd component_matrix;  // n_features x retained_k, orthonormal columns
  std::vector<double> explained_ratio;  // retained components only, non-increasing
  std::vector<double> eigenvalues;      // all components, descending
  double total_variance = 0.0;
  double variance_threshold = 0.95;
  int retained_k = 0;

  double cumulative_ratio() const;
};

// Each component's largest-magnitude loading is made positive.
PcaProjection pca_fit(const Dataset& d, double variance_threshold = 0.95);

// Features are named PC1..PCk; labels pass through.
Dataset pca_transform(const PcaProjection& p, const Dataset& d);

// Scores for a single sample.
std::vector<double> pca_transform_row(const PcaProjection& p, std::span<const double> x);

}  // namespace wmrmr
