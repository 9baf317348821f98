#pragma once

#include <span>

namespace wmrmr {

// Predictions and labels use the same binary encoding (0/1 or -1/+1); the
// larger value is the positive class.

double accuracy(std::span<const int> predictions, std::span<const int> labels);

struct ConfusionCounts {
  long tp = 0, tn = 0, fp = 0, fn = 0;
  long total() const { return tp + tn + fp + fn; }
};

ConfusionCounts confusion(std::span<const int> predictions, std::span<const int> labels, int positive);

// Cohen's kappa from the 2x2 table: (p_o - p_e) / (1 - p_e); 0 when p_e = 1.
double kappa(const ConfusionCounts& counts);
double kappa(std::span<const int> predictions, std::span<const int> labels);

// Mann-Whitney estimate of P(score_pos > score_neg) + 1/2 P(tie), midranks.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

// Composite index: mean of test accuracy, kappa and AUC.
double eta(double a_test, double kappa_value, double auc);

struct MetricsBundle {
  double a_test = 0.0;
  double kappa = 0.0;
  double auc = 0.0;
  double eta = 0.0;

  static MetricsBundle from(double a_test, double kappa_value, double auc);
};

}  // namespace wmrmr
