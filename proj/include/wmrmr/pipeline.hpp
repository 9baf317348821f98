#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wmrmr/dataset.hpp"
#include "wmrmr/metrics.hpp"
#include "wmrmr/mrmr.hpp"
#include "wmrmr/pca.hpp"
#include "wmrmr/svm.hpp"

namespace wmrmr {

// How J(S) is computed for each candidate subset during selection.
enum class ScoringMode {
  CoarseGrid,  // re-tune (C, gamma) per subset over the selection grid
  Fixed,       // one (C, gamma) for every subset
};

struct PipelineConfig {
  int bins = 10;
  int folds = 5;
  std::uint64_t seed = 42;
  ScoringMode scoring = ScoringMode::CoarseGrid;
  std::vector<double> select_c_grid = coarse_c_grid();
  std::vector<double> select_gamma_grid = coarse_gamma_grid();
  SvmConfig fixed_config{1.0, 0.125};
  std::vector<double> final_c_grid = default_c_grid();
  std::vector<double> final_gamma_grid = default_gamma_grid();
  double pca_variance = 0.95;
  double tolerance = 1e-3;
  long max_passes = 100000;
  unsigned threads = 1;

  void validate() const;
  SvmConfig base_svm() const;
};

std::vector<double> default_alphas();  // 0, 0.25, 0.5, 0.75, 1

struct AlphaResult {
  RankingResult ranking;
  std::vector<SubsetEvaluation> curve;  // curve[m-1] scores prefix S_m
  double best_score = 0.0;              // e* for this alpha
  int best_size = 0;                    // smallest prefix attaining e*
  std::vector<int> best_subset;
};

struct GlobalBest {
  double alpha = 0.0;
  std::vector<int> subset;
  double score = 0.0;
};

// A model trained on the full training set and scored once on the test set.
struct FinalEvaluation {
  std::string name;
  std::vector<std::string> features;
  SubsetEvaluation tuning;  // grid search on the training folds
  ZScore normalization;
  SvmModel model;
  MetricsBundle metrics;
  int test_samples = 0;
};

struct SelectionReport {
  std::vector<std::string> feature_names;
  std::vector<AlphaResult> alpha_results;
  GlobalBest global_best;
  std::vector<FinalEvaluation> final_metrics;
  PipelineConfig config;
  MIMatrix mi;
  std::vector<std::string> log;
};

// Ranks features for every alpha, scores every prefix of every ranking with
// cross-validated SVM accuracy on one shared fold assignment, and picks the
// best subset: highest score, then fewest features, then lowest alpha.
// Only the training set is consulted.
SelectionReport select_features(const Dataset& train, std::span<const double> alphas, const PipelineConfig& config);

// Full-grid search on the training folds, refit on all training rows with the
// chosen (C, gamma), one pass over the test set.
FinalEvaluation evaluate_final(const Dataset& train, const Dataset& test, std::span<const int> subset,
                               const PipelineConfig& config, std::string name = "subset");

// Correlation PCA fitted on the training set, then evaluate_final on the
// retained components.
struct PcaBaseline {
  PcaProjection projection;
  FinalEvaluation evaluation;
};
PcaBaseline evaluate_pca_baseline(const Dataset& train, const Dataset& test, const PipelineConfig& config);

// Appends final evaluations for the selected subset, the full feature set and
// the PCA baseline.
void attach_final_metrics(SelectionReport& report, const Dataset& train, const Dataset& test);

struct CurveRow {
  double alpha = 0.0;
  int subset_size = 0;
  double j_score = 0.0;
};

std::vector<CurveRow> emit_curves(const SelectionReport& report);

// Header "alpha,subset_size,j_score"; scores at 6 decimals.
std::string curves_csv(std::span<const CurveRow> rows);
std::vector<CurveRow> parse_curves_csv(const std::string& text);

}  // namespace wmrmr
