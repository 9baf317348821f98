#include "wmrmr/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "wmrmr/parallel.hpp"

namespace wmrmr {

void SvmConfig::validate() const {
  if (!(c_param > 0.0)) throw std::invalid_argument(fmt::format("C must be positive (got {})", c_param));
  if (!(gamma > 0.0)) throw std::invalid_argument(fmt::format("gamma must be positive (got {})", gamma));
  if (!(tolerance > 0.0)) throw std::invalid_argument(fmt::format("tolerance must be positive (got {})", tolerance));
  if (max_passes < 1) throw std::invalid_argument("max_passes must be at least 1");
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(fmt::format("rbf_kernel: dimension mismatch ({} vs {})", a.size(), b.size()));
  }
  if (!(gamma > 0.0)) throw std::invalid_argument("rbf_kernel: gamma must be positive");
  return std::exp(-gamma * squared_distance(a, b));
}

std::vector<int> to_signed_labels(std::span<const int> labels) {
  std::vector<int> out(labels.size());
  std::transform(labels.begin(), labels.end(), out.begin(), [](int y) { return y == kUnstable ? 1 : -1; });
  return out;
}

namespace {

std::span<const double> row_of(const Matrix& m, Eigen::Index r) {
  return {m.data() + r * m.cols(), static_cast<std::size_t>(m.cols())};
}

// Kernel rows computed on first use and kept for the lifetime of one solve.
class LazyRbfRows {
 public:
  LazyRbfRows(const Matrix& x, double gamma) : x_(x), gamma_(gamma), cache_(static_cast<std::size_t>(x.rows())) {}

  std::span<const double> operator()(std::size_t i) {
    auto& row = cache_[i];
    if (row.empty()) {
      row.resize(cache_.size());
      const auto xi = row_of(x_, static_cast<Eigen::Index>(i));
      for (std::size_t k = 0; k < row.size(); ++k) {
        row[k] = std::exp(-gamma_ * squared_distance(xi, row_of(x_, static_cast<Eigen::Index>(k))));
      }
    }
    return row;
  }

 private:
  const Matrix& x_;
  double gamma_;
  std::vector<std::vector<double>> cache_;
};

// Kernel rows over a subset of points whose squared distances are precomputed.
class GramRows {
 public:
  GramRows(const Matrix& sqdist, std::span<const std::size_t> index, double gamma)
      : sqdist_(sqdist), index_(index), gamma_(gamma), cache_(index.size()) {}

  std::span<const double> operator()(std::size_t i) {
    auto& row = cache_[i];
    if (row.empty()) {
      row.resize(cache_.size());
      const auto ii = static_cast<Eigen::Index>(index_[i]);
      for (std::size_t k = 0; k < row.size(); ++k) {
        row[k] = std::exp(-gamma_ * sqdist_(ii, static_cast<Eigen::Index>(index_[k])));
      }
    }
    return row;
  }

 private:
  const Matrix& sqdist_;
  std::span<const std::size_t> index_;
  double gamma_;
  std::vector<std::vector<double>> cache_;
};

struct SolveResult {
  std::vector<double> alpha;
  double rho = 0.0;
  long iterations = 0;
  bool converged = false;
  double gap = 0.0;
  double objective = 0.0;
  std::vector<double> trace;
};

// Dual: min 1/2 a'Qa - e'a  s.t.  0 <= a <= C, y'a = 0, with Q_ij = y_i y_j K_ij.
// The solver tracks v = -y .* G with G = Qa - e, updated over the active set.
// Bounded multipliers that cannot be part of a violating pair are shrunk out
// periodically; their entries are rebuilt before convergence is accepted.
// The dual objective reported is the maximization form -1/2 sum_i a_i (G_i - 1).
// A non-empty warm start must be feasible for c.
template <typename Rows>
SolveResult solve_smo(std::span<const int> labels, double c, double tol, long max_iter, Rows& rows, bool trace,
                      std::span<const double> warm = {}) {
  const std::size_t n = labels.size();
  SolveResult res;
  res.alpha.assign(n, 0.0);
  auto& a = res.alpha;
  constexpr double kTau = 1e-12;
  const std::vector<double> y(labels.begin(), labels.end());
  std::vector<double> v(y);  // G = -e at a = 0
  double fval = 0.0;         // minimization form, tracked per update
  if (!warm.empty()) {
    std::copy(warm.begin(), warm.end(), a.begin());
    for (std::size_t s = 0; s < n; ++s) {
      if (a[s] <= 0.0) continue;
      const auto ks = rows(s);
      const double w = a[s] * y[s];
      for (std::size_t t = 0; t < n; ++t) v[t] -= w * ks[t];
    }
    for (std::size_t t = 0; t < n; ++t) fval += 0.5 * a[t] * (-y[t] * v[t] - 1.0);
  }

  std::vector<unsigned char> up(n), low(n);
  auto set_flags = [&](std::size_t t) {
    up[t] = y[t] > 0.0 ? a[t] < c : a[t] > 0.0;
    low[t] = y[t] > 0.0 ? a[t] > 0.0 : a[t] < c;
  };
  for (std::size_t t = 0; t < n; ++t) set_flags(t);

  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});
  const long shrink_every = static_cast<long>(std::min<std::size_t>(n, 1000));
  long countdown = shrink_every;
  bool unshrunk = false;

  // Maximal violating pair: i maximizes v over I_up, j minimizes it over I_low.
  struct Pair {
    std::size_t i, j;
    double gmax, gmin;
  };
  const Pair none{n, n, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  auto scan = [&](Pair& p, std::size_t t) {
    const double vt = v[t];
    if (up[t] && vt > p.gmax) {
      p.gmax = vt;
      p.i = t;
    }
    if (low[t] && vt < p.gmin) {
      p.gmin = vt;
      p.j = t;
    }
  };
  auto select = [&] {
    Pair p = none;
    if (active.size() == n) {
      for (std::size_t t = 0; t < n; ++t) scan(p, t);
    } else {
      for (std::size_t t : active) scan(p, t);
    }
    return p;
  };
  auto done = [&](const Pair& p) {
    res.gap = (p.i == n || p.j == n) ? 0.0 : p.gmax - p.gmin;
    return p.i == n || p.j == n || res.gap < tol;
  };

  auto reconstruct = [&] {
    if (active.size() == n) return;
    std::vector<char> is_active(n, 0);
    for (std::size_t t : active) is_active[t] = 1;
    for (std::size_t t = 0; t < n; ++t) {
      if (!is_active[t]) v[t] = y[t];
    }
    for (std::size_t s = 0; s < n; ++s) {
      if (a[s] <= 0.0) continue;
      const auto ks = rows(s);
      const double w = a[s] * y[s];
      for (std::size_t t = 0; t < n; ++t) {
        if (!is_active[t]) v[t] -= w * ks[t];
      }
    }
    active.resize(n);
    std::iota(active.begin(), active.end(), std::size_t{0});
  };

  auto shrink = [&] {
    const Pair p = select();
    if (!unshrunk && p.gmax - p.gmin <= 10.0 * tol) {
      unshrunk = true;
      reconstruct();
    }
    std::erase_if(active, [&](std::size_t t) {
      return (up[t] && !low[t] && v[t] < p.gmin) || (low[t] && !up[t] && v[t] > p.gmax);
    });
  };

  Pair p = select();
  for (;;) {
    if (--countdown == 0) {
      countdown = shrink_every;
      shrink();
      p = select();
    }
    if (done(p) && active.size() < n) {
      reconstruct();
      p = select();
      countdown = shrink_every;
    }
    if (done(p)) {
      res.converged = true;
      break;
    }
    if (res.iterations >= max_iter) break;

    const std::size_t i = p.i, j = p.j;
    const auto ki = rows(i);
    const auto kj = rows(j);
    const double gi = -y[i] * v[i];
    const double gj = -y[j] * v[j];
    const double old_ai = a[i];
    const double old_aj = a[j];
    double quad = ki[i] + kj[j] - 2.0 * ki[j];
    if (quad <= 0.0) quad = kTau;

    if (y[i] != y[j]) {
      const double delta = (-gi - gj) / quad;
      const double diff = a[i] - a[j];
      a[i] += delta;
      a[j] += delta;
      if (diff > 0.0) {
        if (a[j] < 0.0) {
          a[j] = 0.0;
          a[i] = diff;
        }
      } else if (a[i] < 0.0) {
        a[i] = 0.0;
        a[j] = -diff;
      }
      if (diff > 0.0) {
        if (a[i] > c) {
          a[i] = c;
          a[j] = c - diff;
        }
      } else if (a[j] > c) {
        a[j] = c;
        a[i] = c + diff;
      }
    } else {
      const double delta = (gi - gj) / quad;
      const double sum = a[i] + a[j];
      a[i] -= delta;
      a[j] += delta;
      if (sum > c) {
        if (a[i] > c) {
          a[i] = c;
          a[j] = sum - c;
        }
        if (a[j] > c) {
          a[j] = c;
          a[i] = sum - c;
        }
      } else {
        if (a[j] < 0.0) {
          a[j] = 0.0;
          a[i] = sum;
        }
        if (a[i] < 0.0) {
          a[i] = 0.0;
          a[j] = sum;
        }
      }
    }
    set_flags(i);
    set_flags(j);

    const double dai = a[i] - old_ai;
    const double daj = a[j] - old_aj;
    fval += gi * dai + gj * daj + 0.5 * (ki[i] * dai * dai + kj[j] * daj * daj) + y[i] * y[j] * ki[j] * dai * daj;

    // dv_t = -y_t dG_t = -(K_ti y_i da_i + K_tj y_j da_j); the next pair is
    // selected in the same pass.
    const double di = dai * y[i];
    const double dj = daj * y[j];
    p = none;
    if (active.size() == n) {
      for (std::size_t t = 0; t < n; ++t) {
        v[t] -= ki[t] * di + kj[t] * dj;
        scan(p, t);
      }
    } else {
      for (std::size_t t : active) {
        v[t] -= ki[t] * di + kj[t] * dj;
        scan(p, t);
      }
    }

    ++res.iterations;
    if (trace) res.trace.push_back(-fval);
  }
  reconstruct();

  // Offset from free vectors, else the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  long n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = -v[t];
    if (a[t] >= c) {
      if (y[t] < 0.0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (a[t] <= 0.0) {
      if (y[t] > 0.0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      free_sum += yg;
    }
  }
  if (n_free > 0) {
    res.rho = free_sum / static_cast<double>(n_free);
  } else if (std::isfinite(ub) && std::isfinite(lb)) {
    res.rho = (ub + lb) / 2.0;
  } else {
    res.rho = std::isfinite(ub) ? ub : (std::isfinite(lb) ? lb : 0.0);
  }
  double s = 0.0;
  for (std::size_t t = 0; t < n; ++t) s += a[t] * (-y[t] * v[t] - 1.0);
  res.objective = -0.5 * s;
  return res;
}

void check_labels(std::span<const int> y) {
  bool pos = false, neg = false;
  for (int v : y) {
    if (v == 1) pos = true;
    else if (v == -1) neg = true;
    else throw std::invalid_argument(fmt::format("SVM label {} is not +1 or -1", v));
  }
  if (!pos || !neg) throw std::invalid_argument("SVM training data contains a single class");
}

// Everything cross validation needs for one fold, shared by all (C, gamma).
struct PreparedFold {
  std::vector<std::size_t> train;  // row ids in the dataset
  std::vector<std::size_t> val;
  std::vector<std::size_t> train_pos;  // positions of training rows in sqdist
  std::vector<int> y_train;
  std::vector<int> y_val;
  Matrix sqdist;  // all fold rows (train then val), z-scored on the training part
  bool degenerate = false;
  int majority = -1;
};

PreparedFold prepare_fold(const Dataset& d, std::span<const int> subset, const FoldAssignment& folds, int fold) {
  PreparedFold pf;
  pf.train = folds.training_rows(fold);
  pf.val = folds.validation_rows(fold);
  const auto signed_labels = to_signed_labels(d.labels());
  int n_pos = 0;
  for (auto r : pf.train) {
    pf.y_train.push_back(signed_labels[r]);
    n_pos += signed_labels[r] == 1;
  }
  for (auto r : pf.val) pf.y_val.push_back(signed_labels[r]);
  const int n_train = static_cast<int>(pf.train.size());
  if (n_pos == 0 || n_pos == n_train) {
    throw DataError(fmt::format("fold {}: training part contains a single class", fold));
  }
  pf.majority = 2 * n_pos > n_train ? 1 : -1;

  const auto dims = static_cast<Eigen::Index>(subset.size());
  const auto n_all = static_cast<Eigen::Index>(pf.train.size() + pf.val.size());
  Matrix raw(n_all, dims);
  Eigen::Index r = 0;
  for (auto src : pf.train) {
    for (Eigen::Index c = 0; c < dims; ++c) raw(r, c) = d.values()(static_cast<Eigen::Index>(src), subset[static_cast<std::size_t>(c)]);
    ++r;
  }
  for (auto src : pf.val) {
    for (Eigen::Index c = 0; c < dims; ++c) raw(r, c) = d.values()(static_cast<Eigen::Index>(src), subset[static_cast<std::size_t>(c)]);
    ++r;
  }
  const ZScore z = ZScore::fit(raw.topRows(n_train));
  pf.degenerate = std::all_of(z.stddev.begin(), z.stddev.end(), [](double s) { return s == 0.0; });
  if (pf.degenerate) return pf;

  const Matrix scaled = z.apply(raw);
  pf.sqdist.resize(n_all, n_all);
  for (Eigen::Index a = 0; a < n_all; ++a) {
    pf.sqdist(a, a) = 0.0;
    for (Eigen::Index b = a + 1; b < n_all; ++b) {
      const double v = squared_distance(row_of(scaled, a), row_of(scaled, b));
      pf.sqdist(a, b) = v;
      pf.sqdist(b, a) = v;
    }
  }
  pf.train_pos.resize(pf.train.size());
  for (std::size_t t = 0; t < pf.train.size(); ++t) pf.train_pos[t] = t;
  return pf;
}

struct FoldScore {
  double accuracy = 0.0;
  bool converged = true;
  std::vector<double> alpha;
};

double majority_accuracy(const PreparedFold& pf) {
  const auto correct = std::count(pf.y_val.begin(), pf.y_val.end(), pf.majority);
  return static_cast<double>(correct) / static_cast<double>(pf.y_val.size());
}

// rows must be built for cfg.gamma; warm is an optional feasible start.
FoldScore score_fold(const PreparedFold& pf, const SvmConfig& cfg, GramRows& rows, std::span<const double> warm) {
  FoldScore out;
  std::size_t correct = 0;
  SolveResult res = solve_smo(pf.y_train, cfg.c_param, cfg.tolerance, cfg.max_passes, rows, false, warm);
  out.converged = res.converged;
  const auto n_train = static_cast<Eigen::Index>(pf.train.size());
  for (std::size_t v = 0; v < pf.val.size(); ++v) {
    const Eigen::Index row = n_train + static_cast<Eigen::Index>(v);
    double score = 0.0;
    for (std::size_t t = 0; t < pf.train.size(); ++t) {
      if (res.alpha[t] <= 0.0) continue;
      score += res.alpha[t] * pf.y_train[t] * std::exp(-cfg.gamma * pf.sqdist(row, static_cast<Eigen::Index>(t)));
    }
    score -= res.rho;
    const int pred = score > 0.0 ? 1 : -1;
    correct += pred == pf.y_val[v];
  }
  out.accuracy = static_cast<double>(correct) / static_cast<double>(pf.val.size());
  out.alpha = std::move(res.alpha);
  return out;
}

void check_subset(const Dataset& d, std::span<const int> subset) {
  if (subset.empty()) throw std::invalid_argument("feature subset is empty");
  for (int j : subset) {
    if (j < 0 || static_cast<std::size_t>(j) >= d.n_features()) {
      throw std::out_of_range(fmt::format("feature index {} out of range", j));
    }
  }
}

void check_folds(const Dataset& d, const FoldAssignment& folds) {
  if (folds.fold_of_sample.size() != d.n_samples()) {
    throw std::invalid_argument("fold assignment does not match the dataset");
  }
  for (int f : folds.fold_of_sample) {
    if (f < 0 || f >= folds.k) throw std::invalid_argument("fold assignment has an out-of-range fold id");
  }
}

}  // namespace

SvmModel train(const Matrix& x, std::span<const int> y, const SvmConfig& cfg, const TrainOptions& options) {
  cfg.validate();
  if (static_cast<std::size_t>(x.rows()) != y.size()) {
    throw std::invalid_argument("train: sample count does not match label count");
  }
  check_labels(y);
  if (!x.allFinite()) throw std::invalid_argument("train: input contains NaN or infinite values");

  LazyRbfRows rows(x, cfg.gamma);
  SolveResult res = solve_smo(y, cfg.c_param, cfg.tolerance, cfg.max_passes, rows, options.trace_objective);

  SvmModel m;
  m.config = cfg;
  m.bias = -res.rho;
  std::vector<Eigen::Index> sv;
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (res.alpha[t] > 0.0) {
      sv.push_back(static_cast<Eigen::Index>(t));
      m.dual_coefficients.push_back(res.alpha[t] * y[t]);
    }
  }
  m.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), x.cols());
  for (std::size_t s = 0; s < sv.size(); ++s) m.support_vectors.row(static_cast<Eigen::Index>(s)) = x.row(sv[s]);
  m.diagnostics.iterations = res.iterations;
  m.diagnostics.converged = res.converged;
  m.diagnostics.final_gap = res.gap;
  m.diagnostics.dual_objective = res.objective;
  m.diagnostics.alphas = std::move(res.alpha);
  m.diagnostics.objective_trace = std::move(res.trace);
  return m;
}

double decision_function(const SvmModel& m, std::span<const double> x) {
  if (x.size() != m.dimension()) {
    throw std::invalid_argument(fmt::format("decision_function: expected {} features, got {}", m.dimension(), x.size()));
  }
  double score = 0.0;
  for (std::size_t s = 0; s < m.dual_coefficients.size(); ++s) {
    score += m.dual_coefficients[s] *
             std::exp(-m.config.gamma * squared_distance(row_of(m.support_vectors, static_cast<Eigen::Index>(s)), x));
  }
  return score + m.bias;
}

int predict(const SvmModel& m, std::span<const double> x) { return decision_function(m, x) > 0.0 ? 1 : -1; }

// ---------------------------------------------------------------------------

SubsetEvaluation cross_validated_accuracy(const Dataset& d, std::span<const int> subset, const SvmConfig& cfg,
                                          const FoldAssignment& folds) {
  const double c[] = {cfg.c_param};
  const double g[] = {cfg.gamma};
  return grid_search(d, subset, c, g, folds, cfg, 1);
}

SubsetEvaluation grid_search(const Dataset& d, std::span<const int> subset, std::span<const double> c_grid,
                             std::span<const double> gamma_grid, const FoldAssignment& folds, const SvmConfig& base,
                             unsigned threads) {
  if (c_grid.empty() || gamma_grid.empty()) throw std::invalid_argument("grid_search: empty parameter grid");
  check_subset(d, subset);
  check_folds(d, folds);
  std::vector<SvmConfig> cells;
  for (double c : c_grid) {
    for (double g : gamma_grid) {
      SvmConfig cfg = base;
      cfg.c_param = c;
      cfg.gamma = g;
      cfg.validate();
      cells.push_back(cfg);
    }
  }

  std::vector<std::size_t> c_order(c_grid.size());
  std::iota(c_order.begin(), c_order.end(), std::size_t{0});
  std::stable_sort(c_order.begin(), c_order.end(), [&](std::size_t a, std::size_t b) { return c_grid[a] < c_grid[b]; });

  const auto k = static_cast<std::size_t>(folds.k);
  std::vector<std::vector<double>> acc(cells.size(), std::vector<double>(k));
  std::vector<int> unconverged(cells.size(), 0);
  int degenerate = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const PreparedFold pf = prepare_fold(d, subset, folds, static_cast<int>(f));
    degenerate += pf.degenerate;
    // Per gamma, C is visited in ascending order and each solve starts from
    // the previous multipliers, which stay feasible as C grows.
    parallel_for(gamma_grid.size(), threads, [&](std::size_t gi) {
      if (pf.degenerate) {
        for (std::size_t ci : c_order) acc[ci * gamma_grid.size() + gi][f] = majority_accuracy(pf);
        return;
      }
      GramRows rows(pf.sqdist, pf.train_pos, gamma_grid[gi]);
      std::vector<double> warm;
      for (std::size_t ci : c_order) {
        const std::size_t cell = ci * gamma_grid.size() + gi;
        FoldScore s = score_fold(pf, cells[cell], rows, warm);
        acc[cell][f] = s.accuracy;
        unconverged[cell] += !s.converged;
        warm = std::move(s.alpha);
      }
    });
  }

  std::size_t best = 0;
  double best_score = -1.0;
  std::vector<double> means(cells.size());
  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    double sum = 0.0;
    for (double a : acc[cell]) sum += a;
    means[cell] = sum / static_cast<double>(k);
  }
  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    const auto& cur = cells[cell];
    const auto& inc = cells[best];
    const bool better = means[cell] > best_score ||
                        (means[cell] == best_score &&
                         (cur.c_param < inc.c_param || (cur.c_param == inc.c_param && cur.gamma < inc.gamma)));
    if (better) {
      best = cell;
      best_score = means[cell];
    }
  }

  SubsetEvaluation ev;
  ev.subset.assign(subset.begin(), subset.end());
  ev.fold_accuracies = acc[best];
  ev.j_score = means[best];
  ev.chosen_config = cells[best];
  ev.degenerate_folds = degenerate;
  ev.unconverged_fits = unconverged[best];
  return ev;
}

FoldModel fit_fold(const Dataset& d, std::span<const int> subset, const SvmConfig& cfg, const FoldAssignment& folds,
                   int fold) {
  check_subset(d, subset);
  check_folds(d, folds);
  const auto train_rows = folds.training_rows(fold);
  const auto val_rows = folds.validation_rows(fold);
  const auto signed_labels = to_signed_labels(d.labels());
  const auto dims = static_cast<Eigen::Index>(subset.size());

  Matrix x(static_cast<Eigen::Index>(train_rows.size()), dims);
  std::vector<int> y;
  for (std::size_t r = 0; r < train_rows.size(); ++r) {
    for (Eigen::Index c = 0; c < dims; ++c) {
      x(static_cast<Eigen::Index>(r), c) = d.values()(static_cast<Eigen::Index>(train_rows[r]), subset[static_cast<std::size_t>(c)]);
    }
    y.push_back(signed_labels[train_rows[r]]);
  }

  FoldModel out;
  out.normalization = ZScore::fit(x);
  const auto& sd = out.normalization.stddev;
  out.degenerate = std::all_of(sd.begin(), sd.end(), [](double s) { return s == 0.0; });
  std::size_t correct = 0;
  if (out.degenerate) {
    const auto n_pos = std::count(y.begin(), y.end(), 1);
    const int majority = 2 * n_pos > static_cast<long>(y.size()) ? 1 : -1;
    for (auto r : val_rows) correct += signed_labels[r] == majority;
  } else {
    out.model = train(out.normalization.apply(x), y, cfg);
    out.model.training_feature_subset.assign(subset.begin(), subset.end());
    std::vector<double> raw(subset.size()), scaled(subset.size());
    for (auto r : val_rows) {
      for (std::size_t c = 0; c < subset.size(); ++c) raw[c] = d.values()(static_cast<Eigen::Index>(r), subset[c]);
      out.normalization.apply_row(raw, scaled);
      correct += predict(out.model, scaled) == signed_labels[r];
    }
  }
  out.accuracy = static_cast<double>(correct) / static_cast<double>(val_rows.size());
  return out;
}

std::vector<double> exponent_grid(int lo, int hi, int step) {
  if (step <= 0) throw std::invalid_argument("exponent_grid: step must be positive");
  if (lo > hi) throw std::invalid_argument("exponent_grid: lower exponent exceeds upper");
  std::vector<double> out;
  for (int e = lo; e <= hi; e += step) out.push_back(std::ldexp(1.0, e));
  return out;
}

std::vector<double> default_c_grid() { return exponent_grid(-5, 15, 2); }
std::vector<double> default_gamma_grid() { return exponent_grid(-15, 3, 2); }
std::vector<double> coarse_c_grid() { return exponent_grid(-1, 11, 4); }
std::vector<double> coarse_gamma_grid() { return exponent_grid(-7, 1, 4); }

}  // namespace wmrmr
