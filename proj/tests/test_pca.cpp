#include <cmath>

#include "doctest.h"
#include "wmrmr/pca.hpp"
#include "wmrmr/random.hpp"
#include "wmrmr/serialize.hpp"

using namespace wmrmr;

namespace {

Dataset from_matrix(const Matrix& x) {
  std::vector<int> labels;
  for (Eigen::Index i = 0; i < x.rows(); ++i) labels.push_back(static_cast<int>(i % 2));
  std::vector<std::string> names;
  for (Eigen::Index j = 0; j < x.cols(); ++j) names.push_back("x" + std::to_string(j));
  return Dataset(x, labels, names);
}

Dataset standardized(const Matrix& x) { return zscore_normalize(from_matrix(x)).first; }

// Correlated gaussian sample: latent factors mixed into p columns.
Matrix mixed_sample(Rng& rng, int n, int p, int factors) {
  Matrix mix(factors, p);
  for (int f = 0; f < factors; ++f) for (int j = 0; j < p; ++j) mix(f, j) = rng.normal();
  Matrix x(n, p);
  for (int i = 0; i < n; ++i) {
    Eigen::RowVectorXd z(factors);
    for (int f = 0; f < factors; ++f) z(f) = rng.normal();
    x.row(i) = z * mix;
    for (int j = 0; j < p; ++j) x(i, j) += 0.3 * rng.normal();
  }
  return x;
}

}  // namespace

TEST_CASE("rank-1 data keeps one component") {
  Rng rng(1);
  Matrix x(50, 3);
  for (int i = 0; i < 50; ++i) {
    const double t = rng.normal();
    x(i, 0) = t;
    x(i, 1) = 2.0 * t + 1.0;
    x(i, 2) = -0.5 * t;
  }
  const Dataset d = standardized(x);
  const PcaProjection p = pca_fit(d);
  CHECK(p.retained_k == 1);
  CHECK(p.explained_ratio[0] == doctest::Approx(1.0).epsilon(1e-10));
  // scores reproduce the standardized coordinate along (1, 1, -1)/sqrt(3)
  const Dataset t = pca_transform(p, d);
  for (Eigen::Index i = 0; i < 50; ++i) {
    const double along = (d.values()(i, 0) + d.values()(i, 1) - d.values()(i, 2)) / std::sqrt(3.0);
    CHECK(std::abs(std::abs(t.values()(i, 0)) - std::abs(along)) < 1e-9);
  }
}

TEST_CASE("isotropic 2D sample needs both components") {
  Rng rng(2);
  Matrix x(400, 2);
  for (int i = 0; i < 400; ++i) x(i, 0) = rng.normal(), x(i, 1) = rng.normal();
  CHECK(pca_fit(standardized(x), 0.95).retained_k == 2);
}

TEST_CASE("threshold 1 keeps min(n - 1, p) components") {
  Rng rng(3);
  Matrix wide(6, 10), tall(40, 5);
  for (Eigen::Index i = 0; i < wide.size(); ++i) wide.data()[i] = rng.normal();
  for (Eigen::Index i = 0; i < tall.size(); ++i) tall.data()[i] = rng.normal();
  CHECK(pca_fit(standardized(wide), 1.0).retained_k == 5);
  CHECK(pca_fit(standardized(tall), 1.0).retained_k == 5);
}

TEST_CASE("projection properties on random datasets") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 30 + static_cast<int>(rng.index(100));
    const int p = 2 + static_cast<int>(rng.index(10));
    const Dataset d = standardized(mixed_sample(rng, n, p, 1 + static_cast<int>(rng.index(3))));
    const double thr = 0.5 + 0.5 * rng.uniform();
    const PcaProjection proj = pca_fit(d, thr);
    const int k = proj.retained_k;
    REQUIRE(proj.component_matrix.cols() == k);

    const Eigen::MatrixXd gram = proj.component_matrix.transpose() * proj.component_matrix;
    CHECK((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(proj.cumulative_ratio() >= thr - 1e-12);
    if (k > 1) {
      double before = 0.0;
      for (int c = 0; c < k - 1; ++c) before += proj.explained_ratio[static_cast<std::size_t>(c)];
      CHECK(before < thr);
    }
    for (int c = 1; c < k; ++c) CHECK(proj.explained_ratio[static_cast<std::size_t>(c)] <= proj.explained_ratio[static_cast<std::size_t>(c - 1)]);
    for (int c = 0; c < k; ++c) {
      Eigen::Index at = 0;
      proj.component_matrix.col(c).cwiseAbs().maxCoeff(&at);
      CHECK(proj.component_matrix(at, c) > 0.0);
    }

    // Reconstruction error against the discarded variance.
    const Dataset t = pca_transform(proj, d);
    Eigen::MatrixXd centered = d.values();
    for (Eigen::Index j = 0; j < centered.cols(); ++j) centered.col(j).array() -= proj.mean_vector[static_cast<std::size_t>(j)];
    const Eigen::MatrixXd recon = Eigen::MatrixXd(t.values()) * proj.component_matrix.transpose();
    const double err = (centered - recon).squaredNorm() / static_cast<double>(n - 1);
    CHECK(err <= (1.0 - proj.cumulative_ratio()) * proj.total_variance + 1e-8);

    // Scores are centered and uncorrelated.
    const Eigen::MatrixXd s = t.values();
    for (Eigen::Index c = 0; c < s.cols(); ++c) CHECK(std::abs(s.col(c).mean()) < 1e-9);
    const Eigen::MatrixXd cov = s.transpose() * s / static_cast<double>(n - 1);
    for (Eigen::Index a = 0; a < cov.rows(); ++a) {
      for (Eigen::Index b = 0; b < cov.cols(); ++b) {
        if (a != b) CHECK(std::abs(cov(a, b)) < 1e-8);
      }
    }
  }
}

TEST_CASE("single-row transform matches the batch") {
  Rng rng(5);
  const Dataset d = standardized(mixed_sample(rng, 60, 6, 2));
  const PcaProjection p = pca_fit(d);
  const Dataset t = pca_transform(p, d);
  CHECK(t.feature_names().front() == "PC1");
  CHECK(t.labels() == d.labels());
  for (Eigen::Index i = 0; i < 60; i += 7) {
    const std::span<const double> x(d.values().data() + i * d.values().cols(), static_cast<std::size_t>(d.values().cols()));
    const auto row = pca_transform_row(p, x);
    for (std::size_t c = 0; c < row.size(); ++c) CHECK(std::abs(row[c] - t.values()(i, static_cast<Eigen::Index>(c))) < 1e-12);
  }
}

TEST_CASE("errors") {
  Matrix constant(6, 2);
  constant.setConstant(3.0);
  CHECK_THROWS_AS(pca_fit(from_matrix(constant)), DataError);
  Rng rng(6);
  const Dataset d = standardized(mixed_sample(rng, 20, 3, 1));
  CHECK_THROWS(pca_fit(d, 0.0));
  CHECK_THROWS(pca_fit(d, 1.5));
  const Dataset narrow = standardized(mixed_sample(rng, 20, 2, 1));
  CHECK_THROWS(pca_transform(pca_fit(d), narrow));
}

TEST_CASE("json round trip") {
  Rng rng(7);
  const Dataset d = standardized(mixed_sample(rng, 40, 5, 2));
  const PcaProjection p = pca_fit(d, 0.9);
  const PcaProjection q = pca_from_json(Json::parse(pca_to_json(p).dump()));
  CHECK(q.retained_k == p.retained_k);
  CHECK(q.mean_vector == p.mean_vector);
  CHECK(q.explained_ratio == p.explained_ratio);
  CHECK(q.component_matrix == p.component_matrix);
  CHECK(q.total_variance == p.total_variance);
}
