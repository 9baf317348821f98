#include "wmrmr/pca.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace wmrmr {

double PcaProjection::cumulative_ratio() const {
  double s = 0.0;
  for (double r : explained_ratio) s += r;
  return s;
}

PcaProjection pca_fit(const Dataset& d, double variance_threshold) {
  if (!(variance_threshold > 0.0 && variance_threshold <= 1.0)) {
    throw std::invalid_argument(fmt::format("variance threshold {} outside (0, 1]", variance_threshold));
  }
  const auto n = static_cast<Eigen::Index>(d.n_samples());
  const auto p = static_cast<Eigen::Index>(d.n_features());
  if (n < 2) throw std::invalid_argument("pca_fit needs at least two samples");

  PcaProjection out;
  out.variance_threshold = variance_threshold;
  const Eigen::RowVectorXd mean = d.values().colwise().mean();
  out.mean_vector.assign(mean.data(), mean.data() + p);
  const Eigen::MatrixXd centered = d.values().rowwise() - mean;
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw std::runtime_error("pca_fit: eigendecomposition failed");
  // Eigen returns ascending order; clamp round-off negatives.
  std::vector<double> eig(static_cast<std::size_t>(p));
  for (Eigen::Index i = 0; i < p; ++i) eig[static_cast<std::size_t>(i)] = std::max(0.0, solver.eigenvalues()(p - 1 - i));
  double total = 0.0;
  for (double v : eig) total += v;
  if (!(total > 0.0)) throw DataError("pca_fit: all features are constant");
  out.eigenvalues = eig;
  out.total_variance = total;

  // Smallest k reaching the threshold; the slack absorbs round-off when the
  // threshold is exactly 1.
  double cum = 0.0;
  int k = 0;
  while (k < p) {
    cum += eig[static_cast<std::size_t>(k)] / total;
    ++k;
    if (cum >= variance_threshold - 1e-12) break;
  }
  out.retained_k = k;
  out.component_matrix.resize(p, k);
  for (int c = 0; c < k; ++c) {
    Eigen::VectorXd v = solver.eigenvectors().col(p - 1 - c);
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < p; ++i) {
      if (std::abs(v(i)) > std::abs(v(arg))) arg = i;
    }
    if (v(arg) < 0.0) v = -v;
    out.component_matrix.col(c) = v;
    out.explained_ratio.push_back(eig[static_cast<std::size_t>(c)] / total);
  }
  return out;
}

Dataset pca_transform(const PcaProjection& p, const Dataset& d) {
  if (d.n_features() != p.mean_vector.size()) {
    throw std::invalid_argument(fmt::format("pca_transform: expected {} features, got {}", p.mean_vector.size(), d.n_features()));
  }
  const Eigen::Map<const Eigen::RowVectorXd> mean(p.mean_vector.data(), static_cast<Eigen::Index>(p.mean_vector.size()));
  Matrix scores = (d.values().rowwise() - mean) * p.component_matrix;
  std::vector<std::string> names;
  for (int c = 0; c < p.retained_k; ++c) names.push_back(fmt::format("PC{}", c + 1));
  return Dataset(std::move(scores), d.labels(), std::move(names));
}

std::vector<double> pca_transform_row(const PcaProjection& p, std::span<const double> x) {
  if (x.size() != p.mean_vector.size()) {
    throw std::invalid_argument(fmt::format("pca_transform_row: expected {} features, got {}", p.mean_vector.size(), x.size()));
  }
  std::vector<double> out(static_cast<std::size_t>(p.retained_k), 0.0);
  for (int c = 0; c < p.retained_k; ++c) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - p.mean_vector[j]) * p.component_matrix(static_cast<Eigen::Index>(j), c);
    out[static_cast<std::size_t>(c)] = s;
  }
  return out;
}

}  // namespace wmrmr
