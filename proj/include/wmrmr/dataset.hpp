#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wmrmr/common.hpp"

namespace wmrmr {

// Class encoding: stable = 0, unstable = 1. The SVM sees -1 / +1.
inline constexpr int kStable = 0;
inline constexpr int kUnstable = 1;

// Real-valued samples with binary labels and unique feature names.
// Construction validates every invariant; a Dataset is immutable afterwards.
class Dataset {
 public:
  Dataset(Matrix values, std::vector<int> labels, std::vector<std::string> feature_names);

  const Matrix& values() const { return values_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }

  std::size_t n_samples() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t n_features() const { return static_cast<std::size_t>(values_.cols()); }

  // Per-class sample counts, indexed by label.
  std::pair<std::size_t, std::size_t> class_counts() const;

  // Index of a feature by name, or -1.
  int feature_index(const std::string& name) const;

  // Keeps the given columns, in the given order.
  Dataset select_features(std::span<const int> columns) const;

  // Keeps the given rows, in the given order. The result must still satisfy
  // the class invariants.
  Dataset select_rows(std::span<const std::size_t> rows) const;

 private:
  Matrix values_;
  std::vector<int> labels_;
  std::vector<std::string> feature_names_;
};

// ---------------------------------------------------------------------------
// CSV ingestion

struct CsvOptions {
  std::string label_column = "label";
  std::string negative_label = "0";  // stable
  std::string positive_label = "1";  // unstable
};

// Header row required. Features keep header order, label column excluded.
// Throws DataError with the offending row/column on malformed content.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});
Dataset parse_csv(const std::string& text, const CsvOptions& options = {});

// Writes features then the label column ("label" unless overridden), using
// the 0/1 encoding. Values use shortest round-trip formatting.
void write_csv(const Dataset& d, const std::filesystem::path& path,
               const std::string& label_column = "label");

// ---------------------------------------------------------------------------
// Normalization

// Per-feature affine map fitted on one sample set and reusable on another.
// A zero stddev marks a constant feature, which maps to 0.
struct ZScore {
  std::vector<double> mean;
  std::vector<double> stddev;

  static ZScore fit(const Matrix& values);
  Matrix apply(const Matrix& values) const;
  void apply_row(std::span<const double> in, std::span<double> out) const;
};

// Population (1/n) standard deviation.
std::pair<Dataset, ZScore> zscore_normalize(const Dataset& d);

// ---------------------------------------------------------------------------
// Equal-frequency discretization

struct DiscretizedDataset {
  // Column-major: bins.col(j) is a contiguous run of sample bins.
  Eigen::MatrixXi bins;
  std::vector<int> bin_count_per_feature;
  // Cut points between consecutive bins (midpoints of adjacent distinct
  // values); bin_count_per_feature[j] - 1 entries per feature.
  std::vector<std::vector<double>> source_edges;
  int requested_bins = 0;

  std::size_t n_samples() const { return static_cast<std::size_t>(bins.rows()); }
  std::size_t n_features() const { return static_cast<std::size_t>(bins.cols()); }
  std::span<const int> column(std::size_t j) const {
    return {bins.data() + j * bins.rows(), static_cast<std::size_t>(bins.rows())};
  }
};

// Quantile binning of one column. Tied values always share a bin; the number
// of bins produced is min(requested_bins, distinct values).
struct ColumnBins {
  std::vector<int> bins;
  std::vector<double> edges;
  int count = 0;
};
ColumnBins discretize_column(std::span<const double> column, int requested_bins);

DiscretizedDataset discretize_equal_frequency(const Dataset& d, int requested_bins);

// ---------------------------------------------------------------------------
// Fold assignment

struct FoldAssignment {
  std::vector<int> fold_of_sample;
  int k = 0;
  std::uint64_t seed = 0;

  std::vector<std::size_t> training_rows(int fold) const;
  std::vector<std::size_t> validation_rows(int fold) const;
};

// Shuffles each class with the seed, then deals the concatenated class lists
// round-robin. Fold sizes differ by at most one overall and per class.
FoldAssignment stratified_kfold(const Dataset& d, int k, std::uint64_t seed);
FoldAssignment stratified_kfold(std::span<const int> labels, int k, std::uint64_t seed);

// Stratified random split into (train, test) row lists.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_holdout(
    const Dataset& d, double test_fraction, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Synthetic data

struct RedundantFeature {
  int source = 0;  // informative feature index
  double scale = 1.0;
  double offset = 0.0;
  double noise = 0.0;  // stddev of additive gaussian noise
};

// Informative features are N(0,1); label = [w.x + label_noise * eps > threshold].
// Samples whose score falls within margin of the threshold are redrawn.
// Columns are laid out informative, then redundant, then noise.
struct SyntheticRecipe {
  std::string name = "custom";
  int informative = 2;
  std::vector<double> weights;  // empty means all ones
  std::vector<RedundantFeature> redundant;
  int noise = 0;
  double label_noise = 0.1;
  double threshold = 0.0;
  double margin = 0.0;
  std::vector<std::string> feature_names;  // empty means generated names

  int n_features() const { return informative + static_cast<int>(redundant.size()) + noise; }
};

// Named recipes: "default" (33 features named Tz1..Tz33) and "redundancy"
// (2 informative, an exact copy of each, 6 noise, labels kept 0.25 away from
// the threshold).
SyntheticRecipe named_recipe(const std::string& name);

struct SyntheticDataset {
  Dataset dataset;
  SyntheticRecipe recipe;
  std::uint64_t seed = 0;
};

SyntheticDataset generate_synthetic(int n_samples, const SyntheticRecipe& recipe,
                                    std::uint64_t seed);

// ---------------------------------------------------------------------------
// Feature catalog for the 33 system-level transient stability features.

enum class Snapshot { Static, T0, Tcl, Tcl3c, Tcl6c, Tcl9c };

std::string to_string(Snapshot s);

struct CatalogEntry {
  std::string id;
  Snapshot snapshot;
  std::string description;
};

using FeatureCatalog = std::vector<CatalogEntry>;

const FeatureCatalog& tz_catalog();

}  // namespace wmrmr
