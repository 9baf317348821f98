#pragma once

#include <span>
#include <vector>

#include "wmrmr/dataset.hpp"

namespace wmrmr {

struct SvmConfig {
  double c_param = 1.0;
  double gamma = 1.0;
  double tolerance = 1e-3;  // stopping gap on the maximal violating pair
  long max_passes = 100000; // cap on SMO pair updates

  void validate() const;
};

struct TrainingDiagnostics {
  long iterations = 0;
  bool converged = false;
  double final_gap = 0.0;
  double dual_objective = 0.0;
  std::vector<double> alphas;           // one per training sample, in [0, C]
  std::vector<double> objective_trace;  // dual objective after each update, if requested
};

// Decision function: sum_s coef_s * K(sv_s, x) + bias, coef_s = alpha_s * y_s.
struct SvmModel {
  Matrix support_vectors;
  std::vector<double> dual_coefficients;
  double bias = 0.0;
  SvmConfig config;
  std::vector<int> training_feature_subset;
  TrainingDiagnostics diagnostics;

  std::size_t dimension() const { return static_cast<std::size_t>(support_vectors.cols()); }
};

struct TrainOptions {
  bool trace_objective = false;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

// exp(-gamma * ||a - b||^2)
double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

// Soft-margin RBF SVM trained by SMO with maximal-violating-pair working set
// selection. Labels are +1/-1. Hitting max_passes is not an error: the model
// is returned with diagnostics.converged == false.
SvmModel train(const Matrix& x, std::span<const int> y, const SvmConfig& cfg,
               const TrainOptions& options = {});

double decision_function(const SvmModel& m, std::span<const double> x);

// +1 when the decision value is positive, else -1.
int predict(const SvmModel& m, std::span<const double> x);

// Maps 0/1 class labels to -1/+1.
std::vector<int> to_signed_labels(std::span<const int> labels);

// ---------------------------------------------------------------------------
// Wrapper scoring of feature subsets

struct SubsetEvaluation {
  std::vector<int> subset;
  std::vector<double> fold_accuracies;
  double j_score = 0.0;
  SvmConfig chosen_config;
  // Folds whose training part had every subset feature constant; scored at
  // the training part's majority class.
  int degenerate_folds = 0;
  int unconverged_fits = 0;
};

// For each fold: z-score fitted on the training part only, SVM trained on the
// training part, accuracy measured on the validation part.
SubsetEvaluation cross_validated_accuracy(const Dataset& d, std::span<const int> subset,
                                          const SvmConfig& cfg, const FoldAssignment& folds);

// Scores every (C, gamma) cell on shared folds and keeps the best mean
// accuracy; ties prefer smaller C, then smaller gamma.
SubsetEvaluation grid_search(const Dataset& d, std::span<const int> subset,
                             std::span<const double> c_grid, std::span<const double> gamma_grid,
                             const FoldAssignment& folds, const SvmConfig& base = {},
                             unsigned threads = 1);

// One fold trained through the public train() path; the reference for what
// cross_validated_accuracy computes per fold.
struct FoldModel {
  ZScore normalization;
  SvmModel model;
  double accuracy = 0.0;
  bool degenerate = false;
};
FoldModel fit_fold(const Dataset& d, std::span<const int> subset, const SvmConfig& cfg,
                   const FoldAssignment& folds, int fold);

// {2^lo, 2^(lo+step), ..., 2^hi}
std::vector<double> exponent_grid(int lo, int hi, int step);
std::vector<double> default_c_grid();      // 2^-5 .. 2^15, step 2
std::vector<double> default_gamma_grid();  // 2^-15 .. 2^3, step 2
std::vector<double> coarse_c_grid();       // 2^-1 .. 2^11, step 4
std::vector<double> coarse_gamma_grid();   // 2^-7 .. 2^1, step 4

}  // namespace wmrmr
