// wave-rvfl: train, evaluate and benchmark Wave-RVFL against its
// closed-form baselines. Logs go to stderr; machine output goes to files
// and stdout. Exit codes: 0 ok, 1 partial/degenerate, 2 usage/input,
// 3 numerical failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wavervfl/adam.hpp"
#include "wavervfl/closed_form.hpp"
#include "wavervfl/dataset.hpp"
#include "wavervfl/errors.hpp"
#include "wavervfl/eval.hpp"
#include "wavervfl/model.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wavervfl;

namespace {

constexpr const char* kVersion = "0.1.0";

struct IoArgs {
  bool has_header = false;
  int label_column = -1;
};

void add_io_options(CLI::App* cmd, IoArgs& io) {
  cmd->add_flag("--has-header", io.has_header, "First CSV line is a header");
  cmd->add_option("--label-column", io.label_column,
                  "Zero-based label column index (-1: last column)");
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- train ----

struct TrainArgs {
  std::string data;
  std::string out;
  std::string variant = "wave-rvfl";
  std::uint64_t seed = 0;
  double C = 1.0;
  double eta = 1.0;
  double gamma = 1.0;
  int N = 23;
  std::string activation = "sigmoid";
  double alpha = 0.01;
  int iters = 1000;
  int batch = 0;
  double delta = 1e-5;
  bool do_normalize = false;
  bool trace = false;
  IoArgs io;
};

int run_train(const TrainArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const Variant variant = variant_from_name(args.variant);
  const Activation act = activation_from_name(args.activation);
  Dataset raw = load_csv(args.data, {args.io.has_header, args.io.label_column});
  require_trainable(raw);

  fs::create_directories(args.out);
  std::optional<MinMaxStats> stats;
  Dataset train = raw;
  if (args.do_normalize) {
    stats = fit_minmax(raw.X);
    train.X = apply_minmax(*stats, raw.X);
  }

  ModelWeights model;
  json summary;
  if (variant == Variant::WaveRvfl) {
    TrainConfig cfg;
    cfg.C = args.C;
    cfg.eta = args.eta;
    cfg.gamma = args.gamma;
    cfg.hidden_dim = args.N;
    cfg.activation = act;
    cfg.alpha = args.alpha;
    cfg.delta = args.delta;
    cfg.max_iters = args.iters;
    cfg.batch_size = args.batch;
    cfg.seed = args.seed;
    std::ofstream trace_out;
    TrainTrace trace_fn;
    if (args.trace) {
      const fs::path trace_path = fs::path(args.out) / "trace.csv";
      trace_out.open(trace_path);
      if (!trace_out) throw ParseError("cannot write trace file: " + trace_path.string());
      trace_out << "iter,objective,step_infnorm\n";
      trace_fn = [&trace_out](int iter, double objective, double step) {
        trace_out << iter << ',' << objective << ',' << step << '\n';
      };
    }
    const TrainResult result = train_wave_rvfl(train, cfg, trace_fn);
    model = result.model;
    summary["iterations"] = result.iterations;
    summary["final_objective"] = result.final_objective;
    summary["converged"] = result.converged;
    summary["config"] = {{"C", cfg.C},           {"eta", cfg.eta},
                         {"gamma", cfg.gamma},   {"N", cfg.hidden_dim},
                         {"activation_id", activation_id(act)},
                         {"alpha", cfg.alpha},   {"delta", cfg.delta},
                         {"max_iters", cfg.max_iters}, {"batch_size", cfg.batch_size}};
  } else {
    const auto map = init_feature_map(static_cast<int>(train.m()), args.N, act, args.seed);
    model = variant == Variant::Rvfl ? fit_rvfl(train, args.C, map)
                                     : fit_elm(train, args.C, map);
    summary["config"] = {{"C", args.C},
                         {"N", args.N},
                         {"activation_id", activation_id(act)}};
  }
  model.normalization = stats;

  const double train_acc = accuracy(predict(model, raw.X), raw.Y);
  const fs::path model_path = fs::path(args.out) / "model.json";
  save_model(model, model_path);

  summary["variant"] = variant_name(variant);
  summary["seed"] = args.seed;
  summary["normalized"] = args.do_normalize;
  summary["dataset"] = {{"path", args.data}, {"n", raw.n()}, {"m", raw.m()}};
  summary["train_accuracy"] = train_acc;
  summary["wall_time_s"] = elapsed_s(start);
  std::ofstream out(fs::path(args.out) / "summary.json");
  out << summary.dump(2) << '\n';

  std::cerr << "wrote " << model_path.string() << " (train accuracy " << fmt(train_acc)
            << ")\n";
  return 0;
}

// ---- predict ----

struct PredictArgs {
  std::string model;
  std::string data;
  std::string out;
  bool no_labels = false;
  bool print_accuracy = false;
  IoArgs io;
};

int run_predict(const PredictArgs& args) {
  const ModelWeights model = load_model(args.model);
  Eigen::MatrixXd X;
  std::optional<Eigen::VectorXd> truth;
  if (args.no_labels) {
    X = load_features_csv(args.data, args.io.has_header);
  } else {
    const Dataset data = load_csv(args.data, {args.io.has_header, args.io.label_column});
    X = data.X;
    truth = data.Y;
  }
  const Eigen::VectorXd preds = predict(model, X);
  std::ofstream out(args.out);
  if (!out) throw ParseError("cannot write predictions file: " + args.out);
  for (Eigen::Index i = 0; i < preds.size(); ++i)
    out << (preds(i) > 0 ? "1" : "-1") << '\n';
  std::cerr << "wrote " << args.out << " (" << preds.size() << " predictions)\n";
  if (args.print_accuracy) {
    if (!truth) throw std::invalid_argument("--print-accuracy requires labels (drop --no-labels)");
    std::cout << "accuracy " << fmt(accuracy(preds, *truth)) << "\n";
  }
  return 0;
}

// ---- stats report (benchmark + stats) ----

void print_stats_report(const ResultTable& table, std::ostream& os, json* stats_json) {
  const auto ranks = average_ranks(table);
  os << "datasets: " << table.datasets.size() << "\n";
  os << "average ranks (1 = best):\n";
  for (std::size_t j = 0; j < table.models.size(); ++j)
    os << "  " << table.models[j] << " " << fmt(ranks[j]) << "\n";
  if (stats_json) {
    json r = json::object();
    for (std::size_t j = 0; j < table.models.size(); ++j) r[table.models[j]] = ranks[j];
    (*stats_json)["average_ranks"] = r;
  }

  const int P = static_cast<int>(table.datasets.size());
  const int q = static_cast<int>(table.models.size());
  if (P >= 2) {
    try {
      const FriedmanResult fr = friedman_test(ranks, P, q);
      os << "Friedman chi2_F = " << fmt(fr.chi2_F) << "\n";
      os << "Friedman F_F = " << fmt(fr.F_F) << "\n";
      if (stats_json) {
        (*stats_json)["chi2_F"] = fr.chi2_F;
        (*stats_json)["F_F"] = fr.F_F;
      }
    } catch (const DegenerateStatisticError& e) {
      os << "Friedman F_F undefined: " << e.what() << "\n";
      if (stats_json) (*stats_json)["friedman_degenerate"] = e.what();
      throw;
    }
  } else {
    os << "Friedman test skipped (needs at least 2 datasets)\n";
  }

  const auto wtl = win_tie_loss(table);
  os << "win-tie-loss (row vs column):\n";
  for (std::size_t i = 0; i < table.models.size(); ++i)
    for (std::size_t j = 0; j < table.models.size(); ++j) {
      if (i == j) continue;
      const auto& c = wtl[i][j];
      os << "  " << table.models[i] << " vs " << table.models[j] << ": " << c.wins << "-"
         << c.ties << "-" << c.losses << "\n";
    }
  if (stats_json) {
    json w = json::array();
    for (std::size_t i = 0; i < table.models.size(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < table.models.size(); ++j)
        row.push_back({wtl[i][j].wins, wtl[i][j].ties, wtl[i][j].losses});
      w.push_back(row);
    }
    (*stats_json)["win_tie_loss"] = w;
  }
}

// ---- benchmark ----

struct BenchmarkArgs {
  std::vector<std::string> data;
  std::string out;
  std::vector<std::string> variants = {"rvfl", "elm", "wave-rvfl"};
  int k = 5;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::vector<double> C_grid, eta_grid, gamma_grid, alpha_grid;
  std::vector<int> N_grid, activation_grid;
  bool stats_only = false;
  std::string fixture;
  IoArgs io;
};

GridSpec grid_from_args(const BenchmarkArgs& args) {
  GridSpec grid = GridSpec::defaults();
  if (!args.C_grid.empty()) grid.C_values = args.C_grid;
  if (!args.eta_grid.empty()) grid.eta_values = args.eta_grid;
  if (!args.gamma_grid.empty()) grid.gamma_values = args.gamma_grid;
  if (!args.alpha_grid.empty()) grid.alpha_values = args.alpha_grid;
  if (!args.N_grid.empty()) grid.N_values = args.N_grid;
  if (!args.activation_grid.empty()) grid.activation_ids = args.activation_grid;
  return grid;
}

json grid_to_json(const GridSpec& grid) {
  return {{"C", grid.C_values},       {"eta", grid.eta_values},
          {"gamma", grid.gamma_values}, {"N", grid.N_values},
          {"activations", grid.activation_ids}, {"alpha", grid.alpha_values}};
}

int run_stats_table(const ResultTable& table) {
  try {
    print_stats_report(table, std::cout, nullptr);
  } catch (const DegenerateStatisticError&) {
    return 1;
  }
  return 0;
}

int run_benchmark(const BenchmarkArgs& args) {
  if (args.stats_only) {
    if (args.fixture.empty())
      throw std::invalid_argument("--stats-only requires --fixture");
    return run_stats_table(result_table_from_csv(args.fixture));
  }
  if (args.data.empty()) throw std::invalid_argument("benchmark needs at least one --data file");
  if (args.out.empty()) throw std::invalid_argument("benchmark needs --out");

  const GridSpec grid = grid_from_args(args);
  std::vector<Variant> variants;
  for (const auto& name : args.variants) variants.push_back(variant_from_name(name));

  json results_json;
  results_json["config"] = {{"datasets", args.data},
                            {"variants", args.variants},
                            {"k", args.k},
                            {"seed", args.seed},
                            {"grid", grid_to_json(grid)},
                            {"has_header", args.io.has_header},
                            {"label_column", args.io.label_column}};

  ResultTable table;
  table.models = args.variants;
  std::vector<std::vector<double>> acc_rows;
  std::vector<std::vector<double>> std_rows;
  std::vector<std::string> failed;
  json per_dataset = json::array();
  for (const auto& path : args.data) {
    try {
      const Dataset data = load_csv(path, {args.io.has_header, args.io.label_column});
      std::cerr << "benchmark: " << data.name << " (n=" << data.n() << ", m=" << data.m()
                << ")\n";
      std::vector<double> acc_row;
      std::vector<double> std_row;
      json models = json::array();
      json folds_json;
      for (std::size_t vi = 0; vi < variants.size(); ++vi) {
        const auto cv =
            cross_validated_grid_search(data, variants[vi], grid, args.k, args.seed, args.jobs);
        std::cerr << "  " << args.variants[vi] << ": " << fmt(cv.mean) << " +- "
                  << fmt(cv.stddev) << "\n";
        acc_row.push_back(cv.mean);
        std_row.push_back(cv.stddev);
        models.push_back({{"variant", args.variants[vi]},
                          {"best_config", model_config_to_json(cv.best)},
                          {"mean", cv.mean},
                          {"std", cv.stddev},
                          {"fold_accuracies", cv.fold_accuracies},
                          {"valid_folds", cv.valid_folds},
                          {"configs_evaluated", cv.configs_evaluated}});
        folds_json = {{"k", cv.folds.k}, {"seed", cv.folds.seed},
                      {"assignments", cv.folds.assignments}};
      }
      table.datasets.push_back(data.name);
      acc_rows.push_back(std::move(acc_row));
      std_rows.push_back(std::move(std_row));
      per_dataset.push_back({{"dataset", data.name},
                             {"path", path},
                             {"folds", folds_json},
                             {"models", models}});
    } catch (const std::exception& e) {
      std::cerr << "error: dataset '" << path << "' failed: " << e.what() << "\n";
      failed.push_back(path);
    }
  }
  if (table.datasets.empty())
    throw std::invalid_argument("benchmark: every dataset failed");

  table.acc.resize(static_cast<Eigen::Index>(acc_rows.size()),
                   static_cast<Eigen::Index>(table.models.size()));
  table.stddev.resize(table.acc.rows(), table.acc.cols());
  for (Eigen::Index i = 0; i < table.acc.rows(); ++i)
    for (Eigen::Index j = 0; j < table.acc.cols(); ++j) {
      table.acc(i, j) = acc_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      table.stddev(i, j) = std_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

  fs::create_directories(args.out);
  result_table_to_csv(table, fs::path(args.out) / "results.csv");

  results_json["results"] = per_dataset;
  results_json["partial"] = !failed.empty();
  results_json["failed_datasets"] = failed;

  bool degenerate = false;
  json stats_json;
  std::ostringstream report;
  if (table.models.size() < 2) {
    report << "statistics skipped (needs at least 2 models)\n";
  } else {
    try {
      print_stats_report(table, report, &stats_json);
    } catch (const DegenerateStatisticError&) {
      degenerate = true;
    }
  }
  results_json["stats"] = stats_json;

  std::ofstream jout(fs::path(args.out) / "results.json");
  jout << results_json.dump(2) << '\n';
  std::ofstream rout(fs::path(args.out) / "report.txt");
  rout << report.str();
  std::cout << report.str();

  if (!failed.empty()) {
    std::cerr << "warning: partial results; " << failed.size() << " dataset(s) failed\n";
    return 1;
  }
  return degenerate ? 1 : 0;
}

// ---- perturb ----

struct PerturbArgs {
  std::string data;
  std::string out;
  std::string mode = "label-flip";
  std::vector<double> levels;  // percent
  double sigma_scale = 1.0;
  std::uint64_t seed = 0;
  IoArgs io;
};

int run_perturb(const PerturbArgs& args) {
  if (args.mode != "label-flip" && args.mode != "gaussian")
    throw std::invalid_argument("unknown perturbation mode '" + args.mode +
                                "' (expected label-flip or gaussian)");
  for (double level : args.levels)
    if (!(level >= 0.0 && level <= 100.0))
      throw std::invalid_argument("perturbation levels are percentages in [0, 100]");

  const Dataset data = load_csv(args.data, {args.io.has_header, args.io.label_column});
  fs::create_directories(args.out);
  for (std::size_t li = 0; li < args.levels.size(); ++li) {
    const double fraction = args.levels[li] / 100.0;
    const std::uint64_t seed = mix_seed(args.seed, li);
    const Dataset perturbed =
        args.mode == "label-flip"
            ? inject_label_noise(data, fraction, seed)
            : inject_gaussian_noise(data, fraction, args.sigma_scale, seed);
    std::ostringstream level_str;
    level_str << args.levels[li];
    const std::string stem =
        fs::path(args.data).stem().string() + "_" + args.mode + "_" + level_str.str();
    const fs::path csv_path = fs::path(args.out) / (stem + ".csv");
    save_csv(perturbed, csv_path);
    save_provenance(perturbed, fs::path(args.out) / (stem + ".provenance.json"));
    std::cerr << "wrote " << csv_path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-RVFL classifier and benchmark harness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "Read options from an INI file ([subcommand] sections)");

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train a single model and save it as JSON");
  train_cmd->add_option("--data", train_args.data, "Training CSV")->required();
  train_cmd->add_option("--out", train_args.out, "Output directory")->required();
  train_cmd->add_option("--variant", train_args.variant, "rvfl | elm | wave-rvfl");
  train_cmd->add_option("--seed", train_args.seed, "Random seed");
  train_cmd->add_option("--C", train_args.C, "Regularization trade-off");
  train_cmd->add_option("--eta", train_args.eta, "Wave loss bounding parameter");
  train_cmd->add_option("--gamma", train_args.gamma, "Wave loss shape parameter");
  train_cmd->add_option("--N", train_args.N, "Hidden nodes");
  train_cmd->add_option("--activation", train_args.activation, "Activation name or id 1-6");
  train_cmd->add_option("--alpha", train_args.alpha, "Adam learning rate");
  train_cmd->add_option("--iters", train_args.iters, "Maximum Adam iterations");
  train_cmd->add_option("--batch", train_args.batch, "Mini-batch size (0: auto)");
  train_cmd->add_option("--delta", train_args.delta, "Stopping tolerance");
  train_cmd->add_flag("--normalize", train_args.do_normalize,
                      "Min-max scale features; stored with the model");
  train_cmd->add_flag("--trace", train_args.trace, "Write per-iteration trace.csv");
  add_io_options(train_cmd, train_args.io);

  PredictArgs predict_args;
  auto* predict_cmd = app.add_subcommand("predict", "Predict labels with a saved model");
  predict_cmd->add_option("--model", predict_args.model, "Model JSON")->required();
  predict_cmd->add_option("--data", predict_args.data, "Input CSV")->required();
  predict_cmd->add_option("--out", predict_args.out, "Predictions output file")->required();
  predict_cmd->add_flag("--no-labels", predict_args.no_labels,
                        "Input has feature columns only");
  predict_cmd->add_flag("--print-accuracy", predict_args.print_accuracy,
                        "Print accuracy against the label column");
  add_io_options(predict_cmd, predict_args.io);

  BenchmarkArgs bench_args;
  auto* bench_cmd = app.add_subcommand(
      "benchmark", "Cross-validated grid search over datasets and variants");
  bench_cmd->add_option("--data", bench_args.data, "Dataset CSVs (repeatable)");
  bench_cmd->add_option("--out", bench_args.out, "Output directory");
  bench_cmd->add_option("--variants", bench_args.variants, "Comma-separated variant list")
      ->delimiter(',');
  bench_cmd->add_option("--k", bench_args.k, "Cross-validation folds");
  bench_cmd->add_option("--seed", bench_args.seed, "Experiment seed");
  bench_cmd->add_option("--jobs", bench_args.jobs, "Worker threads (results are identical)");
  bench_cmd->add_option("--C-grid", bench_args.C_grid, "Override C grid")->delimiter(',');
  bench_cmd->add_option("--eta-grid", bench_args.eta_grid, "Override eta grid")->delimiter(',');
  bench_cmd->add_option("--gamma-grid", bench_args.gamma_grid, "Override gamma grid")
      ->delimiter(',');
  bench_cmd->add_option("--alpha-grid", bench_args.alpha_grid, "Override alpha grid")
      ->delimiter(',');
  bench_cmd->add_option("--N-grid", bench_args.N_grid, "Override hidden-node grid")
      ->delimiter(',');
  bench_cmd->add_option("--activation-grid", bench_args.activation_grid,
                        "Override activation id grid")
      ->delimiter(',');
  bench_cmd->add_flag("--stats-only", bench_args.stats_only,
                      "Skip experiments; compute statistics from --fixture");
  bench_cmd->add_option("--fixture", bench_args.fixture, "Accuracy table CSV for --stats-only");
  add_io_options(bench_cmd, bench_args.io);

  PerturbArgs perturb_args;
  auto* perturb_cmd =
      app.add_subcommand("perturb", "Write perturbed copies of a dataset");
  perturb_cmd->add_option("--data", perturb_args.data, "Input CSV")->required();
  perturb_cmd->add_option("--out", perturb_args.out, "Output directory")->required();
  perturb_cmd->add_option("--mode", perturb_args.mode, "label-flip | gaussian");
  perturb_cmd->add_option("--levels", perturb_args.levels, "Percent levels, e.g. 5,10,15,20")
      ->required()
      ->delimiter(',');
  perturb_cmd->add_option("--sigma-scale", perturb_args.sigma_scale,
                          "Gaussian noise scale in units of per-feature std");
  perturb_cmd->add_option("--seed", perturb_args.seed, "Random seed");
  add_io_options(perturb_cmd, perturb_args.io);

  std::string fixture_path;
  auto* stats_cmd =
      app.add_subcommand("stats", "Ranks, Friedman test and win-tie-loss from a table CSV");
  stats_cmd->add_option("--fixture", fixture_path, "Accuracy table CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (train_cmd->parsed()) return run_train(train_args);
    if (predict_cmd->parsed()) return run_predict(predict_args);
    if (bench_cmd->parsed()) return run_benchmark(bench_args);
    if (perturb_cmd->parsed()) return run_perturb(perturb_args);
    if (stats_cmd->parsed()) return run_stats_table(result_table_from_csv(fixture_path));
  } catch (const DegenerateStatisticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
