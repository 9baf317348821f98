#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "wmrmr/dataset.hpp"
#include "wmrmr/random.hpp"

namespace wmrmr {

SyntheticRecipe named_recipe(const std::string& name) {
  SyntheticRecipe r;
  r.name = name;
  if (name == "redundancy") {
    r.informative = 2;
    r.weights = {1.0, 0.7};
    r.redundant = {{0, 1.0, 0.0, 0.0}, {1, 1.0, 0.0, 0.0}};
    r.noise = 6;
    r.label_noise = 0.1;
    r.margin = 0.25;
    r.feature_names = {"inf1", "inf2", "copy_inf1", "copy_inf2", "noise1", "noise2",
                       "noise3", "noise4", "noise5", "noise6"};
    return r;
  }
  if (name == "default") {
    // 33 columns named like the transient stability catalog: 5 informative,
    // 8 noisy affine copies at mixed physical scales, 20 pure noise.
    r.informative = 5;
    r.weights = {1.2, 1.0, 0.8, 0.6, 0.5};
    r.redundant = {{0, 40.0, 100.0, 0.2}, {0, -3.0, 0.0, 0.5},  {1, 0.01, 1.0, 0.1},
                   {1, 250.0, -20.0, 0.6}, {2, 5.0, 2.0, 0.3},   {2, 1.0, 0.0, 0.05},
                   {3, 12.0, 60.0, 0.4},  {4, -0.5, 10.0, 0.2}};
    r.noise = 20;
    r.label_noise = 0.3;
    for (int i = 1; i <= 33; ++i) r.feature_names.push_back(fmt::format("Tz{}", i));
    return r;
  }
  throw std::invalid_argument(fmt::format("unknown recipe '{}' (expected 'default' or 'redundancy')", name));
}

SyntheticDataset generate_synthetic(int n_samples, const SyntheticRecipe& recipe, std::uint64_t seed) {
  if (n_samples < 20) throw std::invalid_argument("n_samples must be at least 20");
  if (recipe.informative < 1) throw std::invalid_argument("recipe needs at least one informative feature");
  if (recipe.noise < 0) throw std::invalid_argument("noise feature count must be non-negative");
  if (!recipe.weights.empty() && static_cast<int>(recipe.weights.size()) != recipe.informative) {
    throw std::invalid_argument("recipe weights must match the informative feature count");
  }
  for (const auto& red : recipe.redundant) {
    if (red.source < 0 || red.source >= recipe.informative) {
      throw std::invalid_argument(fmt::format("redundant feature source {} is not informative", red.source));
    }
    if (red.noise < 0.0) throw std::invalid_argument("redundant noise must be non-negative");
  }
  // Bounded by the score's standard deviation so rejection stays cheap.
  double score_var = recipe.label_noise * recipe.label_noise;
  for (int f = 0; f < recipe.informative; ++f) {
    const double w = recipe.weights.empty() ? 1.0 : recipe.weights[static_cast<std::size_t>(f)];
    score_var += w * w;
  }
  if (!(recipe.margin >= 0.0 && recipe.margin < std::sqrt(score_var))) {
    throw std::invalid_argument(fmt::format("recipe margin {} outside [0, {:.4g})", recipe.margin, std::sqrt(score_var)));
  }
  const int n_features = recipe.n_features();
  if (!recipe.feature_names.empty() && static_cast<int>(recipe.feature_names.size()) != n_features) {
    throw std::invalid_argument("recipe feature_names must cover every column");
  }

  std::vector<std::string> names = recipe.feature_names;
  if (names.empty()) {
    for (int i = 0; i < recipe.informative; ++i) names.push_back(fmt::format("inf{}", i + 1));
    for (std::size_t i = 0; i < recipe.redundant.size(); ++i) names.push_back(fmt::format("red{}", i + 1));
    for (int i = 0; i < recipe.noise; ++i) names.push_back(fmt::format("noise{}", i + 1));
  }

  Rng rng(seed);
  Matrix values(n_samples, n_features);
  std::vector<int> labels(static_cast<std::size_t>(n_samples));
  const int red_begin = recipe.informative;
  const int noise_begin = red_begin + static_cast<int>(recipe.redundant.size());
  for (int i = 0; i < n_samples; ++i) {
    double score = 0.0;
    do {
      score = 0.0;
      for (int f = 0; f < recipe.informative; ++f) {
        const double x = rng.normal();
        values(i, f) = x;
        score += (recipe.weights.empty() ? 1.0 : recipe.weights[static_cast<std::size_t>(f)]) * x;
      }
      for (std::size_t r = 0; r < recipe.redundant.size(); ++r) {
        const auto& red = recipe.redundant[r];
        const double eps = red.noise > 0.0 ? red.noise * rng.normal() : 0.0;
        values(i, red_begin + static_cast<int>(r)) = red.offset + red.scale * (values(i, red.source) + eps);
      }
      for (int f = noise_begin; f < n_features; ++f) values(i, f) = rng.normal();
      score += recipe.label_noise * rng.normal();
    } while (std::abs(score - recipe.threshold) < recipe.margin);
    labels[static_cast<std::size_t>(i)] = score > recipe.threshold ? kUnstable : kStable;
  }
  return {Dataset(std::move(values), std::move(labels), std::move(names)), recipe, seed};
}

}  // namespace wmrmr
