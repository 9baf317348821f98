#include "wmrmr/serialize.hpp"

#include <cmath>

namespace wmrmr {
namespace {

std::vector<std::string> names_of(std::span<const int> idx, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (int i : idx) out.push_back(names.at(static_cast<std::size_t>(i)));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).data(), m.row(r).data() + m.cols()));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, Eigen::Index cols) {
  Matrix m(static_cast<Eigen::Index>(j.size()), cols);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const auto row = j.at(static_cast<std::size_t>(r)).get<std::vector<double>>();
    if (static_cast<Eigen::Index>(row.size()) != cols) throw DataError("model JSON: ragged support vector matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

const char* scoring_name(ScoringMode m) { return m == ScoringMode::Fixed ? "fixed" : "coarse_grid"; }

}  // namespace

double round4(double v) { return std::round(v * 1e4) / 1e4; }

Json mi_matrix_to_json(const MIMatrix& mi, const std::vector<std::string>& names) {
  Json pairwise = Json::array();
  for (Eigen::Index i = 0; i < mi.pairwise.rows(); ++i) {
    std::vector<double> row;
    for (Eigen::Index j = 0; j < mi.pairwise.cols(); ++j) row.push_back(std::max(0.0, mi.pairwise(i, j)));
    pairwise.push_back(row);
  }
  std::vector<double> rel;
  for (double v : mi.class_relevance) rel.push_back(std::max(0.0, v));
  return Json{{"feature_names", names},
              {"units", "bits"},
              {"pairwise", pairwise},
              {"class_relevance", rel},
              {"bin_config",
               {{"method", "equal_frequency"},
                {"requested_bins", mi.requested_bins},
                {"bin_count_per_feature", mi.bin_count_per_feature}}}};
}

Json ranking_to_json(const RankingResult& r, const std::vector<std::string>& names) {
  return Json{{"alpha", r.alpha},
              {"order", names_of(r.order, names)},
              {"order_indices", r.order},
              {"step_scores", r.step_scores},
              {"relevance_curve", r.relevance_curve},
              {"redundancy_curve", r.redundancy_curve}};
}

Json svm_config_to_json(const SvmConfig& c) {
  return Json{{"C", c.c_param}, {"gamma", c.gamma}, {"tolerance", c.tolerance}, {"max_passes", c.max_passes}};
}

SvmConfig svm_config_from_json(const Json& j) {
  SvmConfig c;
  c.c_param = j.at("C").get<double>();
  c.gamma = j.at("gamma").get<double>();
  c.tolerance = j.value("tolerance", c.tolerance);
  c.max_passes = j.value("max_passes", c.max_passes);
  c.validate();
  return c;
}

Json zscore_to_json(const ZScore& z) { return Json{{"mean", z.mean}, {"stddev", z.stddev}}; }

ZScore zscore_from_json(const Json& j) {
  ZScore z;
  z.mean = j.at("mean").get<std::vector<double>>();
  z.stddev = j.at("stddev").get<std::vector<double>>();
  if (z.mean.size() != z.stddev.size()) throw DataError("normalization JSON: mean/stddev length mismatch");
  return z;
}

Json final_model_to_json(const FinalEvaluation& fe) {
  const auto& m = fe.model;
  return Json{{"features", fe.features},
              {"feature_indices", m.training_feature_subset},
              {"normalization", zscore_to_json(fe.normalization)},
              {"config", svm_config_to_json(m.config)},
              {"bias", m.bias},
              {"dual_coefficients", m.dual_coefficients},
              {"support_vectors", matrix_to_json(m.support_vectors)},
              {"diagnostics",
               {{"iterations", m.diagnostics.iterations},
                {"converged", m.diagnostics.converged},
                {"final_gap", m.diagnostics.final_gap},
                {"dual_objective", m.diagnostics.dual_objective}}}};
}

LoadedModel final_model_from_json(const Json& j) {
  LoadedModel out;
  out.features = j.at("features").get<std::vector<std::string>>();
  out.normalization = zscore_from_json(j.at("normalization"));
  out.model.config = svm_config_from_json(j.at("config"));
  out.model.bias = j.at("bias").get<double>();
  out.model.dual_coefficients = j.at("dual_coefficients").get<std::vector<double>>();
  out.model.training_feature_subset = j.at("feature_indices").get<std::vector<int>>();
  const auto cols = static_cast<Eigen::Index>(out.features.size());
  out.model.support_vectors = matrix_from_json(j.at("support_vectors"), cols);
  if (out.model.dual_coefficients.size() != static_cast<std::size_t>(out.model.support_vectors.rows())) {
    throw DataError("model JSON: coefficient count does not match support vectors");
  }
  if (out.normalization.mean.size() != out.features.size()) {
    throw DataError("model JSON: normalization does not match feature count");
  }
  return out;
}

Json metrics_to_json(const MetricsBundle& m) {
  return Json{{"a_test", round4(m.a_test)}, {"kappa", round4(m.kappa)}, {"auc", round4(m.auc)}, {"eta", round4(m.eta)}};
}

Json final_evaluation_to_json(const FinalEvaluation& fe) {
  return Json{{"name", fe.name},
              {"features", fe.features},
              {"dimension", fe.features.size()},
              {"C", fe.tuning.chosen_config.c_param},
              {"gamma", fe.tuning.chosen_config.gamma},
              {"cv_score", fe.tuning.j_score},
              {"test_samples", fe.test_samples},
              {"metrics", metrics_to_json(fe.metrics)}};
}

Json pca_to_json(const PcaProjection& p) {
  Json comps = Json::array();
  for (Eigen::Index c = 0; c < p.component_matrix.cols(); ++c) {
    comps.push_back(std::vector<double>(p.component_matrix.col(c).data(),
                                        p.component_matrix.col(c).data() + p.component_matrix.rows()));
  }
  return Json{{"variance_threshold", p.variance_threshold},
              {"retained_k", p.retained_k},
              {"explained_ratio", p.explained_ratio},
              {"cumulative_ratio", p.cumulative_ratio()},
              {"eigenvalues", p.eigenvalues},
              {"total_variance", p.total_variance},
              {"mean_vector", p.mean_vector},
              {"components", comps}};
}

PcaProjection pca_from_json(const Json& j) {
  PcaProjection p;
  p.variance_threshold = j.at("variance_threshold").get<double>();
  p.retained_k = j.at("retained_k").get<int>();
  p.explained_ratio = j.at("explained_ratio").get<std::vector<double>>();
  p.eigenvalues = j.value("eigenvalues", std::vector<double>{});
  p.total_variance = j.value("total_variance", 0.0);
  p.mean_vector = j.at("mean_vector").get<std::vector<double>>();
  const auto& comps = j.at("components");
  if (static_cast<int>(comps.size()) != p.retained_k) throw DataError("PCA JSON: component count mismatch");
  p.component_matrix.resize(static_cast<Eigen::Index>(p.mean_vector.size()), p.retained_k);
  for (int c = 0; c < p.retained_k; ++c) {
    const auto col = comps.at(static_cast<std::size_t>(c)).get<std::vector<double>>();
    if (col.size() != p.mean_vector.size()) throw DataError("PCA JSON: component length mismatch");
    for (std::size_t r = 0; r < col.size(); ++r) p.component_matrix(static_cast<Eigen::Index>(r), c) = col[r];
  }
  return p;
}

Json recipe_to_json(const SyntheticRecipe& r) {
  Json red = Json::array();
  for (const auto& f : r.redundant) {
    red.push_back({{"source", f.source}, {"scale", f.scale}, {"offset", f.offset}, {"noise", f.noise}});
  }
  return Json{{"name", r.name},     {"informative", r.informative}, {"weights", r.weights},
              {"redundant", red},   {"noise", r.noise},             {"label_noise", r.label_noise},
              {"threshold", r.threshold}, {"margin", r.margin},     {"feature_names", r.feature_names}};
}

SyntheticRecipe recipe_from_json(const Json& j) {
  SyntheticRecipe r;
  r.name = j.value("name", std::string("custom"));
  r.informative = j.at("informative").get<int>();
  r.weights = j.value("weights", std::vector<double>{});
  for (const auto& f : j.value("redundant", Json::array())) {
    r.redundant.push_back({f.at("source").get<int>(), f.value("scale", 1.0), f.value("offset", 0.0),
                           f.value("noise", 0.0)});
  }
  r.noise = j.value("noise", 0);
  r.label_noise = j.value("label_noise", r.label_noise);
  r.threshold = j.value("threshold", 0.0);
  r.margin = j.value("margin", 0.0);
  r.feature_names = j.value("feature_names", std::vector<std::string>{});
  return r;
}

Json report_to_json(const SelectionReport& report) {
  const auto& names = report.feature_names;
  Json alpha_results = Json::array();
  for (const auto& ar : report.alpha_results) {
    Json curve = Json::array();
    for (const auto& ev : ar.curve) {
      curve.push_back({{"subset_size", ev.subset.size()},
                       {"j_score", ev.j_score},
                       {"fold_accuracies", ev.fold_accuracies},
                       {"C", ev.chosen_config.c_param},
                       {"gamma", ev.chosen_config.gamma}});
    }
    alpha_results.push_back({{"alpha", ar.ranking.alpha},
                             {"ranking", ranking_to_json(ar.ranking, names)},
                             {"accuracy_curve", curve},
                             {"best_score", ar.best_score},
                             {"best_size", ar.best_size},
                             {"best_subset", names_of(ar.best_subset, names)}});
  }
  Json finals = Json::array();
  for (const auto& fe : report.final_metrics) finals.push_back(final_evaluation_to_json(fe));
  const auto& c = report.config;
  return Json{{"feature_names", names},
              {"alpha_results", alpha_results},
              {"global_best",
               {{"alpha", report.global_best.alpha},
                {"subset", names_of(report.global_best.subset, names)},
                {"subset_indices", report.global_best.subset},
                {"size", report.global_best.subset.size()},
                {"score", report.global_best.score}}},
              {"final_metrics", finals},
              {"settings",
               {{"bins", c.bins},
                {"folds", c.folds},
                {"fold_seed", c.seed},
                {"scoring", scoring_name(c.scoring)},
                {"select_c_grid", c.select_c_grid},
                {"select_gamma_grid", c.select_gamma_grid},
                {"fixed_config", svm_config_to_json(c.fixed_config)},
                {"final_c_grid", c.final_c_grid},
                {"final_gamma_grid", c.final_gamma_grid},
                {"pca_variance", c.pca_variance},
                {"tolerance", c.tolerance},
                {"max_passes", c.max_passes}}},
              {"log", report.log}};
}

}  // namespace wmrmr
