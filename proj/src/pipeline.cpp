#include "wmrmr/pipeline.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "wmrmr/parallel.hpp"

namespace wmrmr {

void PipelineConfig::validate() const {
  if (bins < 2) throw std::invalid_argument(fmt::format("bins must be at least 2 (got {})", bins));
  if (folds < 2) throw std::invalid_argument(fmt::format("folds must be at least 2 (got {})", folds));
  if (!(pca_variance > 0.0 && pca_variance <= 1.0)) {
    throw std::invalid_argument(fmt::format("PCA variance threshold {} outside (0, 1]", pca_variance));
  }
  if (select_c_grid.empty() || select_gamma_grid.empty() || final_c_grid.empty() || final_gamma_grid.empty()) {
    throw std::invalid_argument("parameter grids must be non-empty");
  }
  auto check_grid = [](const std::vector<double>& g, const char* what) {
    for (double v : g) {
      if (!(v > 0.0)) throw std::invalid_argument(fmt::format("{} grid value {} is not positive", what, v));
    }
  };
  check_grid(select_c_grid, "C");
  check_grid(final_c_grid, "C");
  check_grid(select_gamma_grid, "gamma");
  check_grid(final_gamma_grid, "gamma");
  base_svm().validate();
  if (scoring == ScoringMode::Fixed) {
    SvmConfig f = base_svm();
    f.c_param = fixed_config.c_param;
    f.gamma = fixed_config.gamma;
    f.validate();
  }
}

SvmConfig PipelineConfig::base_svm() const {
  SvmConfig cfg;
  cfg.tolerance = tolerance;
  cfg.max_passes = max_passes;
  return cfg;
}

std::vector<double> default_alphas() { return {0.0, 0.25, 0.5, 0.75, 1.0}; }

namespace {

SubsetEvaluation score_subset(const Dataset& train, std::span<const int> subset, const FoldAssignment& folds,
                              const PipelineConfig& config, unsigned threads) {
  if (config.scoring == ScoringMode::Fixed) {
    SvmConfig cfg = config.base_svm();
    cfg.c_param = config.fixed_config.c_param;
    cfg.gamma = config.fixed_config.gamma;
    return cross_validated_accuracy(train, subset, cfg, folds);
  }
  return grid_search(train, subset, config.select_c_grid, config.select_gamma_grid, folds, config.base_svm(),
                     threads);
}

void check_schema(const Dataset& train, const Dataset& test) {
  if (train.feature_names() != test.feature_names()) {
    throw DataError("schema mismatch: train and test feature columns differ");
  }
}

}  // namespace

SelectionReport select_features(const Dataset& train, std::span<const double> alphas, const PipelineConfig& config) {
  config.validate();
  if (alphas.empty()) throw std::invalid_argument("alpha list is empty");
  for (double a : alphas) MrmrConfig{a}.validate();

  SelectionReport report;
  report.config = config;
  report.feature_names = train.feature_names();

  const DiscretizedDataset dd = discretize_equal_frequency(train, config.bins);
  report.mi = pairwise_mi_matrix(dd, train.labels(), config.threads);
  const FoldAssignment folds = stratified_kfold(train, config.folds, config.seed);

  for (double a : alphas) {
    AlphaResult ar;
    ar.ranking = incremental_rank(report.mi, MrmrConfig{a});
    report.alpha_results.push_back(std::move(ar));
  }

  // J(S) depends only on the set, so every prefix is evaluated in sorted
  // column order and shared between alphas.
  std::map<std::vector<int>, std::size_t> slot_of;
  std::vector<std::vector<int>> unique_subsets;
  for (const auto& ar : report.alpha_results) {
    for (std::size_t m = 1; m <= ar.ranking.order.size(); ++m) {
      auto key = ar.ranking.prefix(m);
      std::sort(key.begin(), key.end());
      if (slot_of.emplace(key, unique_subsets.size()).second) unique_subsets.push_back(std::move(key));
    }
  }
  std::vector<SubsetEvaluation> scored(unique_subsets.size());
  parallel_for(unique_subsets.size(), config.threads, [&](std::size_t i) {
    scored[i] = score_subset(train, unique_subsets[i], folds, config, 1);
  });

  for (auto& ar : report.alpha_results) {
    const std::size_t n = ar.ranking.order.size();
    for (std::size_t m = 1; m <= n; ++m) {
      auto key = ar.ranking.prefix(m);
      std::sort(key.begin(), key.end());
      SubsetEvaluation ev = scored[slot_of.at(key)];
      ev.subset = ar.ranking.prefix(m);
      if (ev.degenerate_folds > 0) {
        report.log.push_back(fmt::format("alpha={} size={}: {} fold(s) with constant features scored at majority class",
                                         ar.ranking.alpha, m, ev.degenerate_folds));
      }
      if (ev.unconverged_fits > 0) {
        report.log.push_back(fmt::format("alpha={} size={}: {} fold fit(s) stopped at max_passes", ar.ranking.alpha,
                                         m, ev.unconverged_fits));
      }
      ar.curve.push_back(std::move(ev));
    }
    ar.best_size = 1;
    ar.best_score = ar.curve[0].j_score;
    for (std::size_t m = 2; m <= n; ++m) {
      if (ar.curve[m - 1].j_score > ar.best_score) {
        ar.best_score = ar.curve[m - 1].j_score;
        ar.best_size = static_cast<int>(m);
      }
    }
    ar.best_subset = ar.ranking.prefix(static_cast<std::size_t>(ar.best_size));
  }

  const AlphaResult* winner = nullptr;
  for (const auto& ar : report.alpha_results) {
    if (winner == nullptr || ar.best_score > winner->best_score ||
        (ar.best_score == winner->best_score &&
         (ar.best_size < winner->best_size ||
          (ar.best_size == winner->best_size && ar.ranking.alpha < winner->ranking.alpha)))) {
      winner = &ar;
    }
  }
  report.global_best = {winner->ranking.alpha, winner->best_subset, winner->best_score};
  return report;
}

FinalEvaluation evaluate_final(const Dataset& train, const Dataset& test, std::span<const int> subset,
                               const PipelineConfig& config, std::string name) {
  config.validate();
  check_schema(train, test);
  if (subset.empty()) throw std::invalid_argument("evaluate_final: empty feature subset");

  const FoldAssignment folds = stratified_kfold(train, config.folds, config.seed);
  FinalEvaluation out;
  out.name = std::move(name);
  for (int j : subset) {
    if (j < 0 || static_cast<std::size_t>(j) >= train.n_features()) {
      throw std::out_of_range(fmt::format("feature index {} out of range", j));
    }
    out.features.push_back(train.feature_names()[static_cast<std::size_t>(j)]);
  }
  out.tuning = grid_search(train, subset, config.final_c_grid, config.final_gamma_grid, folds, config.base_svm(),
                           config.threads);

  const Dataset train_sub = train.select_features(subset);
  out.normalization = ZScore::fit(train_sub.values());
  out.model = wmrmr::train(out.normalization.apply(train_sub.values()), to_signed_labels(train.labels()),
                    out.tuning.chosen_config);
  out.model.training_feature_subset.assign(subset.begin(), subset.end());

  const Dataset test_sub = test.select_features(subset);
  const Matrix scaled = out.normalization.apply(test_sub.values());
  std::vector<double> scores(test.n_samples());
  std::vector<int> predicted(test.n_samples());
  for (Eigen::Index r = 0; r < scaled.rows(); ++r) {
    const std::span<const double> row(scaled.data() + r * scaled.cols(), static_cast<std::size_t>(scaled.cols()));
    const double s = decision_function(out.model, row);
    scores[static_cast<std::size_t>(r)] = s;
    predicted[static_cast<std::size_t>(r)] = s > 0.0 ? kUnstable : kStable;
  }
  out.metrics = MetricsBundle::from(accuracy(predicted, test.labels()), kappa(predicted, test.labels()),
                                    roc_auc(scores, test.labels()));
  out.test_samples = static_cast<int>(test.n_samples());
  return out;
}

PcaBaseline evaluate_pca_baseline(const Dataset& train, const Dataset& test, const PipelineConfig& config) {
  check_schema(train, test);
  const ZScore z = ZScore::fit(train.values());
  const Dataset train_z(z.apply(train.values()), train.labels(), train.feature_names());
  const Dataset test_z(z.apply(test.values()), test.labels(), test.feature_names());
  PcaBaseline out;
  out.projection = pca_fit(train_z, config.pca_variance);
  const Dataset train_pc = pca_transform(out.projection, train_z);
  const Dataset test_pc = pca_transform(out.projection, test_z);
  std::vector<int> all(train_pc.n_features());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = static_cast<int>(j);
  out.evaluation = evaluate_final(train_pc, test_pc, all, config, "pca");
  return out;
}

void attach_final_metrics(SelectionReport& report, const Dataset& train, const Dataset& test) {
  const auto& cfg = report.config;
  report.final_metrics.push_back(evaluate_final(train, test, report.global_best.subset, cfg, "selected"));
  std::vector<int> all(train.n_features());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = static_cast<int>(j);
  report.final_metrics.push_back(evaluate_final(train, test, all, cfg, "full"));
  report.final_metrics.push_back(evaluate_pca_baseline(train, test, cfg).evaluation);
}

std::vector<CurveRow> emit_curves(const SelectionReport& report) {
  std::vector<CurveRow> rows;
  for (const auto& ar : report.alpha_results) {
    for (std::size_t m = 0; m < ar.curve.size(); ++m) {
      rows.push_back({ar.ranking.alpha, static_cast<int>(m + 1), ar.curve[m].j_score});
    }
  }
  return rows;
}

std::string curves_csv(std::span<const CurveRow> rows) {
  std::string out = "alpha,subset_size,j_score\n";
  for (const auto& r : rows) out += fmt::format("{},{},{:.6f}\n", r.alpha, r.subset_size, r.j_score);
  return out;
}

std::vector<CurveRow> parse_curves_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "alpha,subset_size,j_score") {
    throw DataError("curves CSV: unexpected header");
  }
  std::vector<CurveRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CurveRow r;
    char c1 = 0, c2 = 0;
    std::istringstream ls(line);
    if (!(ls >> r.alpha >> c1 >> r.subset_size >> c2 >> r.j_score) || c1 != ',' || c2 != ',') {
      throw DataError(fmt::format("curves CSV: malformed row '{}'", line));
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace wmrmr
