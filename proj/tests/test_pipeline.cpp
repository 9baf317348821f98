#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "wmrmr/pipeline.hpp"
#include "wmrmr/random.hpp"
#include "wmrmr/serialize.hpp"

using namespace wmrmr;

namespace {

PipelineConfig quick_config() {
  PipelineConfig cfg;
  cfg.scoring = ScoringMode::Fixed;
  cfg.fixed_config = SvmConfig{1.0, 0.125};
  cfg.final_c_grid = {0.5, 8.0};
  cfg.final_gamma_grid = {0.03125, 0.5};
  cfg.threads = 2;
  return cfg;
}

Dataset small_synthetic(int n, std::uint64_t seed) {
  SyntheticRecipe r;
  r.informative = 2;
  r.redundant = {{0, 2.0, 1.0, 0.3}};
  r.noise = 3;
  r.label_noise = 0.2;
  return generate_synthetic(n, r, seed).dataset;
}

// Rows of a dataset with the other class shifted well apart on feature 0.
Dataset separable(int n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix x(n, 3);
  std::vector<int> labels;
  for (int i = 0; i < n; ++i) {
    const int label = i % 2;
    x(i, 0) = rng.normal() * 0.3 + (label == 1 ? 3.0 : -3.0);
    x(i, 1) = rng.normal();
    x(i, 2) = rng.normal();
    labels.push_back(label);
  }
  return Dataset(x, labels, {"a", "b", "c"});
}

}  // namespace

TEST_CASE("default alphas") { CHECK(default_alphas() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}); }

TEST_CASE("selection report structure") {
  const Dataset d = small_synthetic(150, 3);
  const auto alphas = default_alphas();
  const SelectionReport rep = select_features(d, alphas, quick_config());
  REQUIRE(rep.alpha_results.size() == 5);
  CHECK(rep.feature_names == d.feature_names());

  for (std::size_t a = 0; a < 5; ++a) {
    const AlphaResult& ar = rep.alpha_results[a];
    CHECK(ar.ranking.alpha == alphas[a]);
    REQUIRE(ar.curve.size() == d.n_features());
    double top = 0.0;
    for (std::size_t m = 0; m < ar.curve.size(); ++m) {
      CHECK(ar.curve[m].subset == ar.ranking.prefix(m + 1));
      top = std::max(top, ar.curve[m].j_score);
    }
    CHECK(ar.best_score == top);
    // smallest prefix reaching the maximum
    for (int m = 1; m < ar.best_size; ++m) CHECK(ar.curve[static_cast<std::size_t>(m - 1)].j_score < top);
    CHECK(ar.curve[static_cast<std::size_t>(ar.best_size - 1)].j_score == top);
    CHECK(ar.best_subset == ar.ranking.prefix(static_cast<std::size_t>(ar.best_size)));
  }

  // Global choice: best score, then fewest features, then smallest alpha.
  const AlphaResult* expect = &rep.alpha_results[0];
  for (const auto& ar : rep.alpha_results) {
    if (ar.best_score > expect->best_score ||
        (ar.best_score == expect->best_score && ar.best_size < expect->best_size)) {
      expect = &ar;
    }
  }
  CHECK(rep.global_best.alpha == expect->ranking.alpha);
  CHECK(rep.global_best.subset == expect->best_subset);
  CHECK(rep.global_best.score == expect->best_score);
}

TEST_CASE("identical subsets score identically across alphas") {
  const Dataset d = small_synthetic(120, 5);
  const auto alphas = default_alphas();
  const SelectionReport rep = select_features(d, alphas, quick_config());
  const std::size_t n = d.n_features();
  for (const auto& a : rep.alpha_results) CHECK(a.curve[n - 1].j_score == rep.alpha_results[0].curve[n - 1].j_score);
}

TEST_CASE("a smaller subset wins a tie with a larger one") {
  // Feature 0 separates the classes; every superset scores the same 1.0.
  const Dataset d = separable(80, 2);
  const auto alphas = default_alphas();
  const SelectionReport rep = select_features(d, alphas, quick_config());
  CHECK(rep.global_best.score == 1.0);
  CHECK(rep.global_best.subset == std::vector<int>{0});
  CHECK(rep.global_best.alpha == 0.0);
  for (const auto& ar : rep.alpha_results) CHECK(ar.best_size == 1);
}

TEST_CASE("selection is deterministic and thread-count independent") {
  const Dataset d = small_synthetic(120, 9);
  const std::vector<double> alphas{0.25, 0.75};
  PipelineConfig cfg = quick_config();
  cfg.scoring = ScoringMode::CoarseGrid;
  const Json a = report_to_json(select_features(d, alphas, cfg));
  cfg.threads = 1;
  const Json b = report_to_json(select_features(d, alphas, cfg));
  CHECK(a.dump() == b.dump());
}

TEST_CASE("curve rows and CSV") {
  const Dataset d = small_synthetic(100, 4);
  const SelectionReport rep = select_features(d, default_alphas(), quick_config());
  const auto rows = emit_curves(rep);
  CHECK(rows.size() == 5 * d.n_features());
  CHECK(rows.front().subset_size == 1);
  CHECK(rows.back().alpha == 1.0);
  const std::string csv = curves_csv(rows);
  CHECK(csv.rfind("alpha,subset_size,j_score\n", 0) == 0);
  const auto parsed = parse_curves_csv(csv);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].alpha == rows[i].alpha);
    CHECK(parsed[i].subset_size == rows[i].subset_size);
    CHECK(std::abs(parsed[i].j_score - rows[i].j_score) <= 5e-7);
  }
  CHECK_THROWS_AS(parse_curves_csv("a,b,c\n"), DataError);
  CHECK_THROWS_AS(parse_curves_csv("alpha,subset_size,j_score\n0.5;3;0.9\n"), DataError);
}

TEST_CASE("config validation") {
  const Dataset d = small_synthetic(60, 1);
  PipelineConfig cfg = quick_config();
  cfg.folds = 1;
  CHECK_THROWS_AS(select_features(d, default_alphas(), cfg), std::invalid_argument);
  cfg = quick_config();
  cfg.bins = 1;
  CHECK_THROWS_AS(select_features(d, default_alphas(), cfg), std::invalid_argument);
  const std::vector<double> bad{0.5, 1.2}, none;
  CHECK_THROWS_AS(select_features(d, bad, quick_config()), std::invalid_argument);
  CHECK_THROWS_AS(select_features(d, none, quick_config()), std::invalid_argument);
}

TEST_CASE("final evaluation") {
  const Dataset train = separable(80, 5);
  const Dataset test = separable(40, 6);
  const std::vector<int> subset{0};
  const FinalEvaluation fe = evaluate_final(train, test, subset, quick_config(), "sep");
  CHECK(fe.metrics.a_test == 1.0);
  CHECK(fe.metrics.kappa == 1.0);
  CHECK(fe.metrics.auc == 1.0);
  CHECK(fe.metrics.eta == 1.0);
  CHECK(fe.test_samples == 40);
  CHECK(fe.features == std::vector<std::string>{"a"});

  const FinalEvaluation again = evaluate_final(train, test, subset, quick_config(), "sep");
  CHECK(final_evaluation_to_json(fe).dump() == final_evaluation_to_json(again).dump());

  const Dataset renamed(test.values(), test.labels(), {"a", "b", "z"});
  CHECK_THROWS_AS(evaluate_final(train, renamed, subset, quick_config()), DataError);
  const std::vector<int> empty, out{7};
  CHECK_THROWS_AS(evaluate_final(train, test, empty, quick_config()), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_final(train, test, out, quick_config()), std::out_of_range);
}

TEST_CASE("the test set never feeds back into selection") {
  const Dataset d = small_synthetic(150, 8);
  const Dataset t1 = small_synthetic(60, 100);
  const Dataset t2 = small_synthetic(60, 200);
  SelectionReport r1 = select_features(d, default_alphas(), quick_config());
  SelectionReport r2 = r1;
  attach_final_metrics(r1, d, t1);
  attach_final_metrics(r2, d, t2);
  CHECK(r1.global_best.subset == r2.global_best.subset);
  REQUIRE(r1.final_metrics.size() == 3);
  CHECK(r1.final_metrics[0].name == "selected");
  CHECK(r1.final_metrics[1].name == "full");
  CHECK(r1.final_metrics[2].name == "pca");
  // tuning happens on training folds only
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r1.final_metrics[i].tuning.j_score == r2.final_metrics[i].tuning.j_score);
    CHECK(r1.final_metrics[i].model.bias == r2.final_metrics[i].model.bias);
  }
}

TEST_CASE("pca baseline") {
  const Dataset train = small_synthetic(120, 11);
  const Dataset test = small_synthetic(50, 12);
  const PcaBaseline pb = evaluate_pca_baseline(train, test, quick_config());
  CHECK(pb.projection.cumulative_ratio() >= 0.95);
  CHECK(pb.evaluation.features.size() == static_cast<std::size_t>(pb.projection.retained_k));
  CHECK(pb.evaluation.features.front() == "PC1");
}

TEST_CASE("model json round trip") {
  const Dataset train = small_synthetic(90, 13);
  const Dataset test = small_synthetic(30, 14);
  const std::vector<int> subset{1, 0, 3};
  const FinalEvaluation fe = evaluate_final(train, test, subset, quick_config());
  const LoadedModel lm = final_model_from_json(Json::parse(final_model_to_json(fe).dump()));
  CHECK(lm.features == fe.features);
  CHECK(lm.model.training_feature_subset == subset);
  CHECK(lm.normalization.mean == fe.normalization.mean);
  CHECK(lm.normalization.stddev == fe.normalization.stddev);
  const Dataset sub = test.select_features(subset);
  const Matrix x = fe.normalization.apply(sub.values());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const std::span<const double> row(x.data() + r * x.cols(), static_cast<std::size_t>(x.cols()));
    CHECK(decision_function(lm.model, row) == decision_function(fe.model, row));
  }
}
