#include "wmrmr/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include <fmt/format.h>

#include "wmrmr/random.hpp"

namespace wmrmr {

Dataset::Dataset(Matrix values, std::vector<int> labels, std::vector<std::string> feature_names)
    : values_(std::move(values)), labels_(std::move(labels)), feature_names_(std::move(feature_names)) {
  if (static_cast<std::size_t>(values_.rows()) != labels_.size()) {
    throw DataError(fmt::format("dataset has {} rows but {} labels", values_.rows(), labels_.size()));
  }
  if (static_cast<std::size_t>(values_.cols()) != feature_names_.size()) {
    throw DataError(fmt::format("dataset has {} columns but {} feature names", values_.cols(),
                                feature_names_.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : feature_names_) {
    if (!seen.insert(name).second) throw DataError(fmt::format("duplicate feature name '{}'", name));
  }
  if (!values_.allFinite()) throw DataError("dataset contains NaN or infinite values");
  for (int y : labels_) {
    if (y != kStable && y != kUnstable) throw DataError(fmt::format("label {} is not 0 or 1", y));
  }
  const auto [n0, n1] = class_counts();
  if (n0 == 0 || n1 == 0) throw DataError("single-class dataset");
  if (n0 < 2 || n1 < 2) {
    throw DataError(fmt::format("each class needs at least 2 samples (got {} and {})", n0, n1));
  }
}

std::pair<std::size_t, std::size_t> Dataset::class_counts() const {
  const auto n1 = static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), kUnstable));
  return {labels_.size() - n1, n1};
}

int Dataset::feature_index(const std::string& name) const {
  auto it = std::find(feature_names_.begin(), feature_names_.end(), name);
  return it == feature_names_.end() ? -1 : static_cast<int>(it - feature_names_.begin());
}

Dataset Dataset::select_features(std::span<const int> columns) const {
  Matrix out(values_.rows(), static_cast<Eigen::Index>(columns.size()));
  std::vector<std::string> names;
  names.reserve(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const int j = columns[c];
    if (j < 0 || static_cast<std::size_t>(j) >= n_features()) {
      throw std::out_of_range(fmt::format("feature index {} out of range", j));
    }
    out.col(static_cast<Eigen::Index>(c)) = values_.col(j);
    names.push_back(feature_names_[static_cast<std::size_t>(j)]);
  }
  return Dataset(std::move(out), labels_, std::move(names));
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(static_cast<Eigen::Index>(rows.size()), values_.cols());
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= n_samples()) throw std::out_of_range(fmt::format("row {} out of range", rows[r]));
    out.row(static_cast<Eigen::Index>(r)) = values_.row(static_cast<Eigen::Index>(rows[r]));
    labels.push_back(labels_[rows[r]]);
  }
  return Dataset(std::move(out), std::move(labels), feature_names_);
}

// ---------------------------------------------------------------------------

ZScore ZScore::fit(const Matrix& values) {
  ZScore z;
  const auto n = static_cast<double>(values.rows());
  z.mean.resize(static_cast<std::size_t>(values.cols()));
  z.stddev.resize(static_cast<std::size_t>(values.cols()));
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    const double mean = values.col(j).sum() / n;
    const double var = (values.col(j).array() - mean).square().sum() / n;
    double sd = std::sqrt(var);
    if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) sd = 0.0;
    z.mean[static_cast<std::size_t>(j)] = mean;
    z.stddev[static_cast<std::size_t>(j)] = sd;
  }
  return z;
}

Matrix ZScore::apply(const Matrix& values) const {
  if (static_cast<std::size_t>(values.cols()) != mean.size()) {
    throw std::invalid_argument("z-score record does not match column count");
  }
  Matrix out(values.rows(), values.cols());
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    const auto uj = static_cast<std::size_t>(j);
    if (stddev[uj] == 0.0) {
      out.col(j).setZero();
    } else {
      out.col(j) = (values.col(j).array() - mean[uj]) / stddev[uj];
    }
  }
  return out;
}

void ZScore::apply_row(std::span<const double> in, std::span<double> out) const {
  if (in.size() != mean.size() || out.size() != mean.size()) {
    throw std::invalid_argument("z-score record does not match row length");
  }
  for (std::size_t j = 0; j < in.size(); ++j) {
    out[j] = stddev[j] == 0.0 ? 0.0 : (in[j] - mean[j]) / stddev[j];
  }
}

std::pair<Dataset, ZScore> zscore_normalize(const Dataset& d) {
  ZScore z = ZScore::fit(d.values());
  return {Dataset(z.apply(d.values()), d.labels(), d.feature_names()), std::move(z)};
}

// ---------------------------------------------------------------------------

ColumnBins discretize_column(std::span<const double> column, int requested_bins) {
  if (requested_bins < 2) throw std::invalid_argument("requested_bins must be at least 2");
  ColumnBins out;
  const std::size_t n = column.size();
  out.bins.assign(n, 0);
  if (n == 0) return out;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return column[a] < column[b]; });

  // Runs of equal values in sorted order.
  struct Group {
    std::size_t begin, end;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && column[order[j]] == column[order[i]]) ++j;
    groups.push_back({i, j});
    i = j;
  }

  const int n_bins = static_cast<int>(std::min<std::size_t>(groups.size(), requested_bins));
  out.count = n_bins;

  // Greedy fill: each bin takes whole groups until it reaches its share of
  // the remaining samples, leaving at least one group per remaining bin.
  std::size_t g = 0;
  std::size_t remaining = n;
  for (int b = 0; b < n_bins; ++b) {
    const int bins_left = n_bins - b;
    const double target = static_cast<double>(remaining) / bins_left;
    std::size_t taken = 0;
    do {
      taken += groups[g].end - groups[g].begin;
      for (std::size_t i = groups[g].begin; i < groups[g].end; ++i) out.bins[order[i]] = b;
      ++g;
    } while (g < groups.size() && groups.size() - g > static_cast<std::size_t>(bins_left - 1) &&
             (b == n_bins - 1 || static_cast<double>(taken) < target));
    remaining -= taken;
    if (b + 1 < n_bins) {
      const double lo = column[order[groups[g - 1].begin]];
      const double hi = column[order[groups[g].begin]];
      out.edges.push_back(lo + (hi - lo) / 2.0);
    }
  }
  return out;
}

DiscretizedDataset discretize_equal_frequency(const Dataset& d, int requested_bins) {
  if (requested_bins < 2) throw std::invalid_argument("requested_bins must be at least 2");
  DiscretizedDataset out;
  out.requested_bins = requested_bins;
  const auto rows = static_cast<Eigen::Index>(d.n_samples());
  out.bins.resize(rows, static_cast<Eigen::Index>(d.n_features()));
  std::vector<double> column(d.n_samples());
  for (std::size_t j = 0; j < d.n_features(); ++j) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      column[static_cast<std::size_t>(r)] = d.values()(r, static_cast<Eigen::Index>(j));
    }
    ColumnBins cb = discretize_column(column, requested_bins);
    for (Eigen::Index r = 0; r < rows; ++r) {
      out.bins(r, static_cast<Eigen::Index>(j)) = cb.bins[static_cast<std::size_t>(r)];
    }
    out.bin_count_per_feature.push_back(cb.count);
    out.source_edges.push_back(std::move(cb.edges));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> FoldAssignment::training_rows(int fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_of_sample.size(); ++i) {
    if (fold_of_sample[i] != fold) rows.push_back(i);
  }
  return rows;
}

std::vector<std::size_t> FoldAssignment::validation_rows(int fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_of_sample.size(); ++i) {
    if (fold_of_sample[i] == fold) rows.push_back(i);
  }
  return rows;
}

FoldAssignment stratified_kfold(std::span<const int> labels, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("fold count k must be at least 2");
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_class[labels[i] == kUnstable ? 1 : 0].push_back(i);
  }
  for (const auto& members : by_class) {
    if (members.size() < static_cast<std::size_t>(k)) {
      throw std::invalid_argument(fmt::format(
          "class with {} samples is smaller than fold count {}", members.size(), k));
    }
  }
  Rng rng(seed);
  FoldAssignment folds;
  folds.k = k;
  folds.seed = seed;
  folds.fold_of_sample.assign(labels.size(), -1);
  std::size_t position = 0;
  for (auto& members : by_class) {
    rng.shuffle(std::span<std::size_t>(members));
    for (std::size_t idx : members) {
      folds.fold_of_sample[idx] = static_cast<int>(position++ % static_cast<std::size_t>(k));
    }
  }
  return folds;
}

FoldAssignment stratified_kfold(const Dataset& d, int k, std::uint64_t seed) {
  return stratified_kfold(d.labels(), k, seed);
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_holdout(
    const Dataset& d, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("test_fraction must lie in (0, 1)");
  }
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> train, test;
  for (int cls : {kStable, kUnstable}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < d.n_samples(); ++i) {
      if (d.labels()[i] == cls) members.push_back(i);
    }
    rng.shuffle(std::span<std::size_t>(members));
    const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(members.size())));
    if (n_test < 2 || members.size() - n_test < 2) {
      throw std::invalid_argument("holdout split leaves a class with fewer than 2 samples");
    }
    test.insert(test.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_test));
    train.insert(train.end(), members.begin() + static_cast<std::ptrdiff_t>(n_test), members.end());
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

}  // namespace wmrmr
