#pragma once

#include <span>
#include <vector>

#include "wmrmr/dataset.hpp"

namespace wmrmr {

// Plug-in (maximum likelihood) estimators over observed frequencies, in bits.
// Symbols are arbitrary ints; only equality matters.

double entropy(std::span<const int> column);

double mutual_information(std::span<const int> a, std::span<const int> b);

// Feature-feature and feature-class mutual information, computed once per
// discretization and shared by every ranking.
struct MIMatrix {
  Eigen::MatrixXd pairwise;       // symmetric, diagonal = feature entropy
  std::vector<double> class_relevance;
  int requested_bins = 0;
  std::vector<int> bin_count_per_feature;

  std::size_t size() const { return class_relevance.size(); }
};

std::vector<double> class_relevance_vector(const DiscretizedDataset& dd, std::span<const int> labels);

// Upper triangle is computed and mirrored, so symmetry is exact.
MIMatrix pairwise_mi_matrix(const DiscretizedDataset& dd, std::span<const int> labels, unsigned threads = 1);

}  // namespace wmrmr
