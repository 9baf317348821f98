#include "wmrmr/mutinfo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wmrmr/parallel.hpp"

namespace wmrmr {
namespace {

// Maps symbols onto 0..k-1 preserving order; returns k.
int compact(std::span<const int> in, std::vector<int>& out) {
  out.resize(in.size());
  const auto [lo, hi] = std::minmax_element(in.begin(), in.end());
  const long long range = static_cast<long long>(*hi) - *lo + 1;
  if (range <= static_cast<long long>(in.size()) + 64) {
    std::vector<int> id(static_cast<std::size_t>(range), -1);
    for (int v : in) id[static_cast<std::size_t>(v - *lo)] = 0;
    int k = 0;
    for (int& slot : id) {
      if (slot == 0) slot = k++;
    }
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = id[static_cast<std::size_t>(in[i] - *lo)];
    return k;
  }
  std::vector<int> sorted(in.begin(), in.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), in[i]) - sorted.begin());
  }
  return static_cast<int>(sorted.size());
}

// Sum over the joint table of p(x,y) log2(p(x,y) / (p(x)p(y))) written with
// counts: (c_xy / n) log2(c_xy n / (c_x c_y)). Empty cells contribute 0.
double mi_dense(std::span<const int> a, int ka, std::span<const int> b, int kb) {
  const std::size_t n = a.size();
  std::vector<double> joint(static_cast<std::size_t>(ka) * static_cast<std::size_t>(kb), 0.0);
  std::vector<double> ca(static_cast<std::size_t>(ka), 0.0), cb(static_cast<std::size_t>(kb), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    joint[static_cast<std::size_t>(a[i]) * static_cast<std::size_t>(kb) + static_cast<std::size_t>(b[i])] += 1.0;
    ca[static_cast<std::size_t>(a[i])] += 1.0;
    cb[static_cast<std::size_t>(b[i])] += 1.0;
  }
  const double dn = static_cast<double>(n);
  double mi = 0.0;
  for (int x = 0; x < ka; ++x) {
    for (int y = 0; y < kb; ++y) {
      const double c = joint[static_cast<std::size_t>(x) * static_cast<std::size_t>(kb) + static_cast<std::size_t>(y)];
      if (c == 0.0) continue;
      mi += (c / dn) * std::log2(c * dn / (ca[static_cast<std::size_t>(x)] * cb[static_cast<std::size_t>(y)]));
    }
  }
  return mi;
}

// Sums in an order fixed by the pair's contents, so swapping the arguments
// gives a bit-identical result.
double mi_symmetric(std::span<const int> a, int ka, std::span<const int> b, int kb) {
  if (ka > kb || (ka == kb && std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end()))) {
    return mi_dense(b, kb, a, ka);
  }
  return mi_dense(a, ka, b, kb);
}

bool is_dense(std::span<const int> col, int k) {
  return std::all_of(col.begin(), col.end(), [k](int v) { return v >= 0 && v < k; });
}

}  // namespace

double entropy(std::span<const int> column) {
  if (column.empty()) throw std::invalid_argument("entropy of an empty sequence");
  std::vector<int> ids;
  const int k = compact(column, ids);
  std::vector<double> counts(static_cast<std::size_t>(k), 0.0);
  for (int v : ids) counts[static_cast<std::size_t>(v)] += 1.0;
  const double n = static_cast<double>(column.size());
  double h = 0.0;
  for (double c : counts) h -= (c / n) * std::log2(c / n);
  return h;
}

double mutual_information(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw std::invalid_argument("mutual_information: length mismatch");
  if (a.empty()) throw std::invalid_argument("mutual_information: empty input");
  std::vector<int> ia, ib;
  const int ka = compact(a, ia);
  const int kb = compact(b, ib);
  return mi_symmetric(ia, ka, ib, kb);
}

std::vector<double> class_relevance_vector(const DiscretizedDataset& dd, std::span<const int> labels) {
  if (dd.n_samples() != labels.size()) {
    throw std::invalid_argument("class_relevance_vector: sample count does not match label count");
  }
  std::vector<double> rel(dd.n_features());
  for (std::size_t j = 0; j < dd.n_features(); ++j) rel[j] = mutual_information(dd.column(j), labels);
  return rel;
}

MIMatrix pairwise_mi_matrix(const DiscretizedDataset& dd, std::span<const int> labels, unsigned threads) {
  if (dd.n_samples() != labels.size()) {
    throw std::invalid_argument("pairwise_mi_matrix: sample count does not match label count");
  }
  if (dd.n_samples() == 0) throw std::invalid_argument("pairwise_mi_matrix: empty dataset");
  const std::size_t n = dd.n_features();
  MIMatrix mi;
  mi.requested_bins = dd.requested_bins;
  mi.bin_count_per_feature = dd.bin_count_per_feature;
  mi.class_relevance = class_relevance_vector(dd, labels);
  mi.pairwise = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  // Bin ids from discretization are already dense; fall back to compaction
  // for hand-built tables.
  std::vector<std::vector<int>> cols(n);
  std::vector<int> counts(n);
  for (std::size_t j = 0; j < n; ++j) {
    const int k = j < dd.bin_count_per_feature.size() ? dd.bin_count_per_feature[j] : 0;
    if (k > 0 && is_dense(dd.column(j), k)) {
      cols[j].assign(dd.column(j).begin(), dd.column(j).end());
      counts[j] = k;
    } else {
      counts[j] = compact(dd.column(j), cols[j]);
    }
  }

  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = mi_symmetric(cols[i], counts[i], cols[j], counts[j]);
      mi.pairwise(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      mi.pairwise(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          mi.pairwise(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return mi;
}

}  // namespace wmrmr
