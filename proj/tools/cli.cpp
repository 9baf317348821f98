#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include "CLI11.hpp"
#include "wmrmr/mutinfo.hpp"
#include "wmrmr/serialize.hpp"

namespace wmrmr::cli {
namespace {

namespace fs = std::filesystem;

// Bad flags or inputs that fail a precondition before any work starts.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Shared {
  std::string input;
  std::string label_col = "label";
  std::string positive_label = "1";
  std::string negative_label = "0";
  int bins = 10;
  int folds = 5;
  std::uint64_t seed = 42;
  std::vector<double> alphas = default_alphas();
  std::string out_dir = ".";
  unsigned threads = 1;
};

struct GridFlags {
  std::string select_c = "-1:11:4";
  std::string select_gamma = "-7:1:4";
  std::string final_c = "-5:15:2";
  std::string final_gamma = "-15:3:2";
  std::string scoring = "coarse";
  double fixed_c = 1.0;
  double fixed_gamma = 0.125;
  double tolerance = 1e-3;
  long max_passes = 100000;
};

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Every option of the subcommand with its effective value.
Json echo_flags(const CLI::App& app) {
  Json flags = Json::object();
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
    } else {
      value = opt->get_default_str();
    }
    flags[opt->get_name()] = value;
  }
  return flags;
}

Json provenance(const CLI::App& sub, std::uint64_t seed) {
  return Json{{"tool", "wmrmr"},
              {"version", WMRMR_VERSION},
              {"command", sub.get_name()},
              {"flags", echo_flags(sub)},
              {"seed", seed},
              {"generated_at", timestamp()}};
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw DataError(fmt::format("failed writing '{}'", path.string()));
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

std::vector<double> parse_exponent_range(const std::string& flag, const std::string& spec) {
  int lo = 0, hi = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof()) {
    throw UsageError(fmt::format("{}: expected lo:hi:step exponents, got '{}'", flag, spec));
  }
  if (step <= 0 || lo > hi) throw UsageError(fmt::format("{}: need lo <= hi and step > 0, got '{}'", flag, spec));
  return exponent_grid(lo, hi, step);
}

void add_shared(CLI::App* sub, Shared& s, bool with_input = true) {
  if (with_input) sub->add_option("--input", s.input, "Dataset CSV")->required()->check(CLI::ExistingFile);
  sub->add_option("--label-col", s.label_col, "Label column name")->capture_default_str();
  sub->add_option("--positive-label", s.positive_label, "Label value for unstable")->capture_default_str();
  sub->add_option("--negative-label", s.negative_label, "Label value for stable")->capture_default_str();
  sub->add_option("--out-dir", s.out_dir, "Output directory")->capture_default_str();
  sub->add_option("--threads", s.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

void add_bins(CLI::App* sub, Shared& s) {
  sub->add_option("--bins", s.bins, "Equal-frequency bins for MI")->check(CLI::Range(2, 1000000))->capture_default_str();
}

void add_folds_seed(CLI::App* sub, Shared& s) {
  sub->add_option("--folds", s.folds, "Cross-validation folds")->check(CLI::Range(2, 1000000))->capture_default_str();
  sub->add_option("--seed", s.seed, "Random seed")->capture_default_str();
}

void add_grids(CLI::App* sub, GridFlags& g, bool selection) {
  if (selection) {
    sub->add_option("--scoring", g.scoring, "Subset scoring: coarse (per-subset grid) or fixed")
        ->check(CLI::IsMember({"coarse", "fixed"}))
        ->capture_default_str();
    sub->add_option("--select-c-exp", g.select_c, "Selection C grid exponents lo:hi:step")->capture_default_str();
    sub->add_option("--select-gamma-exp", g.select_gamma, "Selection gamma grid exponents")->capture_default_str();
    sub->add_option("--fixed-c", g.fixed_c, "C for fixed scoring")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--fixed-gamma", g.fixed_gamma, "gamma for fixed scoring")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  sub->add_option("--final-c-exp", g.final_c, "Final-model C grid exponents lo:hi:step")->capture_default_str();
  sub->add_option("--final-gamma-exp", g.final_gamma, "Final-model gamma grid exponents")->capture_default_str();
  sub->add_option("--tolerance", g.tolerance, "SMO stopping tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--max-passes", g.max_passes, "SMO update cap")->check(CLI::PositiveNumber)->capture_default_str();
}

PipelineConfig make_config(const Shared& s, const GridFlags& g) {
  PipelineConfig c;
  c.bins = s.bins;
  c.folds = s.folds;
  c.seed = s.seed;
  c.threads = s.threads;
  c.scoring = g.scoring == "fixed" ? ScoringMode::Fixed : ScoringMode::CoarseGrid;
  c.select_c_grid = parse_exponent_range("--select-c-exp", g.select_c);
  c.select_gamma_grid = parse_exponent_range("--select-gamma-exp", g.select_gamma);
  c.final_c_grid = parse_exponent_range("--final-c-exp", g.final_c);
  c.final_gamma_grid = parse_exponent_range("--final-gamma-exp", g.final_gamma);
  c.fixed_config.c_param = g.fixed_c;
  c.fixed_config.gamma = g.fixed_gamma;
  c.tolerance = g.tolerance;
  c.max_passes = g.max_passes;
  return c;
}

CsvOptions csv_options(const Shared& s) {
  if (s.positive_label == s.negative_label) {
    throw UsageError("--positive-label and --negative-label must differ");
  }
  return {s.label_col, s.negative_label, s.positive_label};
}

Dataset load(const std::string& path, const Shared& s) {
  try {
    return load_csv(path, csv_options(s));
  } catch (const DataError& e) {
    // Missing label column or malformed content is a usage problem of the file.
    throw UsageError(e.what());
  }
}

void require_folds_fit(const Dataset& d, int k, const char* what) {
  const auto [n0, n1] = d.class_counts();
  if (n0 < static_cast<std::size_t>(k) || n1 < static_cast<std::size_t>(k)) {
    throw UsageError(fmt::format("--folds {}: {} has class sizes {} and {}, each must be at least {}", k, what, n0,
                                 n1, k));
  }
}

std::string joined_names(std::span<const int> idx, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (int i : idx) out.push_back(names[static_cast<std::size_t>(i)]);
  return fmt::format("{}", fmt::join(out, ", "));
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    const auto b = cur.find_first_not_of(' ');
    const auto e = cur.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

void print_metrics(std::ostream& out, const FinalEvaluation& fe) {
  fmt::print(out, "{:<9} dim={:<3} C={:<9g} gamma={:<9g} a_test={:.4f} kappa={:.4f} auc={:.4f} eta={:.4f}\n", fe.name,
             fe.features.size(), fe.tuning.chosen_config.c_param, fe.tuning.chosen_config.gamma, fe.metrics.a_test,
             fe.metrics.kappa, fe.metrics.auc, fe.metrics.eta);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted mRMR feature selection with SVM wrapper validation", "wmrmr"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(WMRMR_VERSION));

  Shared s;
  GridFlags g;
  double single_alpha = -1.0;
  double variance = 0.95;
  bool no_standardize = false;
  std::string test_path;
  double test_fraction = 1.0 / 3.0;
  bool no_final = false;
  std::string train_path;
  std::string subset_spec;
  std::string recipe = "default";
  int samples = 600;

  auto* rank = app.add_subcommand("rank", "Rank features with the weighted mRMR criterion");
  add_shared(rank, s);
  add_bins(rank, s);
  auto* alpha_opt = rank->add_option("--alpha", single_alpha, "Single weight factor in [0,1]")->check(CLI::Range(0.0, 1.0));
  rank->add_option("--alphas", s.alphas, "Comma-separated weight factors")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0))
      ->excludes(alpha_opt)
      ->capture_default_str();

  auto* select = app.add_subcommand("select", "Run the full selection pipeline");
  add_shared(select, s);
  add_bins(select, s);
  add_folds_seed(select, s);
  add_grids(select, g, true);
  select->add_option("--alphas", s.alphas, "Comma-separated weight factors")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  select->add_option("--test", test_path, "Held-out test CSV (default: stratified split of --input)")
      ->check(CLI::ExistingFile);
  select->add_option("--test-fraction", test_fraction, "Held-out fraction when --test is absent")
      ->check(CLI::Range(0.05, 0.95))
      ->capture_default_str();
  select->add_flag("--no-final", no_final, "Skip final-model evaluation");
  select->add_option("--variance", variance, "PCA baseline retained variance")
      ->check(CLI::Range(1e-9, 1.0))
      ->capture_default_str();

  auto* eval = app.add_subcommand("eval", "Train on a feature subset and score the test set");
  add_shared(eval, s, false);
  add_folds_seed(eval, s);
  add_grids(eval, g, false);
  eval->add_option("--train", train_path, "Training CSV")->required()->check(CLI::ExistingFile);
  eval->add_option("--test", test_path, "Test CSV")->required()->check(CLI::ExistingFile);
  eval->add_option("--subset", subset_spec, "Comma-separated feature names")->required();

  auto* pca = app.add_subcommand("pca", "PCA baseline projection");
  add_shared(pca, s);
  pca->add_option("--variance", variance, "Retained variance threshold")->check(CLI::Range(1e-9, 1.0))->capture_default_str();
  pca->add_flag("--no-standardize", no_standardize, "Fit on raw rather than z-scored features");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth->add_option("--recipe", recipe, "Recipe name (default, redundancy) or JSON file")->capture_default_str();
  synth->add_option("--samples", samples, "Sample count")->check(CLI::Range(20, 100000000))->capture_default_str();
  synth->add_option("--seed", s.seed, "Random seed")->capture_default_str();
  synth->add_option("--out-dir", s.out_dir, "Output directory")->capture_default_str();

  auto* mi = app.add_subcommand("mi", "Dump the mutual information matrix");
  add_shared(mi, s);
  add_bins(mi, s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    for (auto* sub : app.get_subcommands()) out << sub->help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << WMRMR_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const fs::path out_dir = s.out_dir;

    if (rank->parsed()) {
      const Dataset d = load(s.input, s);
      std::vector<double> alphas = single_alpha >= 0.0 ? std::vector<double>{single_alpha} : s.alphas;
      if (alphas.empty()) throw UsageError("--alphas: at least one value required");
      const auto mim = pairwise_mi_matrix(discretize_equal_frequency(d, s.bins), d.labels(), s.threads);
      Json rankings = Json::array();
      for (double a : alphas) {
        const auto r = incremental_rank(mim, MrmrConfig{a});
        rankings.push_back(ranking_to_json(r, d.feature_names()));
        fmt::print(out, "alpha={:<5g} {}\n", a, joined_names(r.order, d.feature_names()));
      }
      write_json(out_dir / "ranking.json", Json{{"provenance", provenance(*rank, s.seed)}, {"rankings", rankings}});
      fmt::print(out, "wrote {}\n", (out_dir / "ranking.json").string());
      return 0;
    }

    if (select->parsed()) {
      const PipelineConfig config = make_config(s, g);
      if (s.alphas.empty()) throw UsageError("--alphas: at least one value required");
      Dataset input = load(s.input, s);
      std::optional<Dataset> train_set, test_set;
      if (!test_path.empty()) {
        train_set.emplace(input);
        test_set.emplace(load(test_path, s));
        if (test_set->feature_names() != train_set->feature_names()) {
          throw UsageError("--test: feature columns differ from --input");
        }
      } else if (no_final) {
        train_set.emplace(input);
      } else {
        const auto [tr, te] = stratified_holdout(input, test_fraction, s.seed);
        train_set.emplace(input.select_rows(tr));
        test_set.emplace(input.select_rows(te));
      }
      require_folds_fit(*train_set, s.folds, "training set");
      PipelineConfig cfg = config;
      cfg.pca_variance = variance;
      SelectionReport report = select_features(*train_set, s.alphas, cfg);
      if (!no_final) attach_final_metrics(report, *train_set, *test_set);

      Json j = report_to_json(report);
      j["provenance"] = provenance(*select, s.seed);
      j["provenance"]["train_samples"] = train_set->n_samples();
      j["provenance"]["test_samples"] = test_set ? test_set->n_samples() : 0;
      write_json(out_dir / "report.json", j);
      write_text(out_dir / "curves.csv", curves_csv(emit_curves(report)));

      for (const auto& ar : report.alpha_results) {
        fmt::print(out, "alpha={:<5g} e*={:.4f} size={:<3} {}\n", ar.ranking.alpha, ar.best_score, ar.best_size,
                   joined_names(ar.best_subset, report.feature_names));
      }
      fmt::print(out, "F* (alpha={:g}, J={:.4f}, {} features): {}\n", report.global_best.alpha,
                 report.global_best.score, report.global_best.subset.size(),
                 joined_names(report.global_best.subset, report.feature_names));
      for (const auto& fe : report.final_metrics) print_metrics(out, fe);
      fmt::print(out, "wrote {} and {}\n", (out_dir / "report.json").string(), (out_dir / "curves.csv").string());
      return 0;
    }

    if (eval->parsed()) {
      const PipelineConfig config = make_config(s, g);
      const Dataset train_set = load(train_path, s);
      const Dataset test_set = load(test_path, s);
      if (train_set.feature_names() != test_set.feature_names()) {
        throw UsageError("--test: feature columns differ from --train");
      }
      const auto names = split_names(subset_spec);
      if (names.empty()) throw UsageError("--subset: at least one feature name required");
      std::vector<int> subset;
      for (const auto& name : names) {
        const int idx = train_set.feature_index(name);
        if (idx < 0) {
          throw UsageError(fmt::format("--subset: unknown feature '{}'; valid names: {}", name,
                                       fmt::join(train_set.feature_names(), ", ")));
        }
        subset.push_back(idx);
      }
      require_folds_fit(train_set, s.folds, "training set");
      std::error_code ec;
      if (fs::equivalent(train_path, test_path, ec)) {
        err << "warning: --train and --test are the same file; test metrics measure training fit\n";
      }
      const FinalEvaluation fe = evaluate_final(train_set, test_set, subset, config, "subset");
      write_json(out_dir / "metrics.json", Json{{"provenance", provenance(*eval, s.seed)},
                                                {"evaluation", final_evaluation_to_json(fe)}});
      write_json(out_dir / "model.json",
                 Json{{"provenance", provenance(*eval, s.seed)}, {"model", final_model_to_json(fe)}});
      print_metrics(out, fe);
      fmt::print(out, "eta={:.4f}\n", fe.metrics.eta);
      return 0;
    }

    if (pca->parsed()) {
      const Dataset d = load(s.input, s);
      Dataset fit_on = d;
      Json norm = nullptr;
      if (!no_standardize) {
        auto [z, record] = zscore_normalize(d);
        fit_on = std::move(z);
        norm = zscore_to_json(record);
      }
      const PcaProjection p = pca_fit(fit_on, variance);
      write_json(out_dir / "pca.json",
                 Json{{"provenance", provenance(*pca, 0)}, {"normalization", norm}, {"projection", pca_to_json(p)}});
      write_csv(pca_transform(p, fit_on), out_dir / "pca_transformed.csv", s.label_col);
      fmt::print(out, "retained {} of {} components ({:.4f} of variance)\n", p.retained_k, d.n_features(),
                 p.cumulative_ratio());
      return 0;
    }

    if (synth->parsed()) {
      SyntheticRecipe r;
      if (recipe == "default" || recipe == "redundancy") {
        r = named_recipe(recipe);
      } else if (fs::exists(recipe)) {
        std::ifstream in(recipe);
        try {
          r = recipe_from_json(Json::parse(in));
        } catch (const Json::exception& e) {
          throw UsageError(fmt::format("--recipe: {}", e.what()));
        }
      } else {
        throw UsageError(fmt::format("--recipe: '{}' is neither a named recipe nor a file", recipe));
      }
      const SyntheticDataset sd = [&] {
        try {
          return generate_synthetic(samples, r, s.seed);
        } catch (const std::invalid_argument& e) {
          throw UsageError(fmt::format("--recipe: {}", e.what()));
        }
      }();
      fs::create_directories(out_dir);
      write_csv(sd.dataset, out_dir / "synthetic.csv");
      write_json(out_dir / "synthetic.json",
                 Json{{"provenance", provenance(*synth, s.seed)}, {"recipe", recipe_to_json(sd.recipe)},
                      {"samples", samples}});
      const auto [n0, n1] = sd.dataset.class_counts();
      fmt::print(out, "wrote {} ({} samples: {} stable, {} unstable; {} features)\n",
                 (out_dir / "synthetic.csv").string(), samples, n0, n1, sd.dataset.n_features());
      return 0;
    }

    if (mi->parsed()) {
      const Dataset d = load(s.input, s);
      const auto mim = pairwise_mi_matrix(discretize_equal_frequency(d, s.bins), d.labels(), s.threads);
      write_json(out_dir / "mi.json",
                 Json{{"provenance", provenance(*mi, 0)}, {"mi", mi_matrix_to_json(mim, d.feature_names())}});
      fmt::print(out, "wrote {}\n", (out_dir / "mi.json").string());
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace wmrmr::cli
