#include "wmrmr/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace wmrmr {
namespace {

void check_pair(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument(fmt::format("length mismatch ({} vs {})", a, b));
  if (a == 0) throw std::invalid_argument("empty input");
}

int positive_label(std::span<const int> labels) {
  return *std::max_element(labels.begin(), labels.end());
}

}  // namespace

double accuracy(std::span<const int> predictions, std::span<const int> labels) {
  check_pair(predictions.size(), labels.size());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) correct += predictions[i] == labels[i];
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

ConfusionCounts confusion(std::span<const int> predictions, std::span<const int> labels, int positive) {
  check_pair(predictions.size(), labels.size());
  ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool pred_pos = predictions[i] == positive;
    const bool true_pos = labels[i] == positive;
    if (pred_pos && true_pos) ++c.tp;
    else if (!pred_pos && !true_pos) ++c.tn;
    else if (pred_pos) ++c.fp;
    else ++c.fn;
  }
  return c;
}

double kappa(const ConfusionCounts& counts) {
  const double n = static_cast<double>(counts.total());
  if (n == 0.0) throw std::invalid_argument("kappa of an empty confusion table");
  const double p_o = static_cast<double>(counts.tp + counts.tn) / n;
  const double p_e = (static_cast<double>(counts.tp + counts.fp) * static_cast<double>(counts.tp + counts.fn) +
                      static_cast<double>(counts.tn + counts.fn) * static_cast<double>(counts.tn + counts.fp)) /
                     (n * n);
  if (p_e == 1.0) return 0.0;
  return (p_o - p_e) / (1.0 - p_e);
}

double kappa(std::span<const int> predictions, std::span<const int> labels) {
  check_pair(predictions.size(), labels.size());
  const int positive = std::max(positive_label(labels), positive_label(predictions));
  return kappa(confusion(predictions, labels, positive));
}

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
  check_pair(scores.size(), labels.size());
  const int positive = positive_label(labels);
  const auto n_pos = static_cast<double>(std::count(labels.begin(), labels.end(), positive));
  const double n_neg = static_cast<double>(labels.size()) - n_pos;
  if (n_neg == 0.0) throw std::invalid_argument("roc_auc needs both classes");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of 1-based midranks of the positives.
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] == positive) rank_sum += midrank;
    }
    i = j;
  }
  const double u = rank_sum - n_pos * (n_pos + 1.0) / 2.0;
  return u / (n_pos * n_neg);
}

double eta(double a_test, double kappa_value, double auc) { return (a_test + kappa_value + auc) / 3.0; }

MetricsBundle MetricsBundle::from(double a_test, double kappa_value, double auc) {
  return {a_test, kappa_value, auc, wmrmr::eta(a_test, kappa_value, auc)};
}

}  // namespace wmrmr
