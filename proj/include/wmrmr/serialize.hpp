#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "wmrmr/pipeline.hpp"

namespace wmrmr {

using Json = nlohmann::ordered_json;

// Rounds to 4 decimals for report rendering.
double round4(double v);

Json mi_matrix_to_json(const MIMatrix& mi, const std::vector<std::string>& names);
Json ranking_to_json(const RankingResult& r, const std::vector<std::string>& names);

Json svm_config_to_json(const SvmConfig& c);
SvmConfig svm_config_from_json(const Json& j);

Json zscore_to_json(const ZScore& z);
ZScore zscore_from_json(const Json& j);

// Support vectors, coefficients, bias, config, subset (and its names), and
// the normalization applied before the kernel.
Json final_model_to_json(const FinalEvaluation& fe);
struct LoadedModel {
  std::vector<std::string> features;
  ZScore normalization;
  SvmModel model;
};
LoadedModel final_model_from_json(const Json& j);

Json metrics_to_json(const MetricsBundle& m);
Json final_evaluation_to_json(const FinalEvaluation& fe);

Json pca_to_json(const PcaProjection& p);
PcaProjection pca_from_json(const Json& j);

Json recipe_to_json(const SyntheticRecipe& r);
SyntheticRecipe recipe_from_json(const Json& j);

// Stable field names: feature_names, alpha_results, global_best,
// final_metrics, log, settings. Callers add a provenance block.
Json report_to_json(const SelectionReport& report);

}  // namespace wmrmr
