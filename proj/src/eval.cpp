#include "wavervfl/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "wavervfl/errors.hpp"
#include "wavervfl/rng.hpp"

namespace wavervfl {

namespace {

constexpr std::uint64_t kMapSalt = 0x4d415053ull;   // "MAPS"
constexpr std::uint64_t kPertSalt = 0x50455254ull;  // "PERT"

std::string fixed4(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

double round4(double v) { return std::round(v * 10000.0) / 10000.0; }

// Ranks one row of accuracies: 1 = best, exact ties averaged.
std::vector<double> rank_row(const std::vector<double>& values) {
  const std::size_t q = values.size();
  std::vector<std::size_t> order(q);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<double> ranks(q);
  std::size_t i = 0;
  while (i < q) {
    std::size_t j = i;
    while (j + 1 < q && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t p = i; p <= j; ++p) ranks[order[p]] = shared;
    i = j + 1;
  }
  return ranks;
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double population_std(const std::vector<double>& v, double mean) {
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

struct FoldContext {
  std::vector<int> train_rows;
  std::vector<int> test_rows;
  bool valid = false;
  Dataset train;            // normalized training portion (possibly perturbed first)
  Eigen::MatrixXd test_X;   // normalized with train stats
  Eigen::VectorXd test_Y;
  std::uint64_t fold_seed = 0;
};

using TrainHook = std::function<Dataset(const Dataset&, int fold)>;

Dataset slice(const Dataset& data, const std::vector<int>& rows) {
  Dataset out;
  out.name = data.name;
  out.column_names = data.column_names;
  out.label_name = data.label_name;
  out.provenance = data.provenance;
  out.X = data.X(rows, Eigen::all);
  out.Y = data.Y(rows);
  return out;
}

bool has_both_classes(const Eigen::VectorXd& Y) {
  bool pos = false;
  bool neg = false;
  for (Eigen::Index i = 0; i < Y.size(); ++i) (Y(i) > 0 ? pos : neg) = true;
  return pos && neg;
}

std::vector<FoldContext> build_folds(const Dataset& data, const FoldPlan& plan,
                                     std::uint64_t seed, const TrainHook* hook) {
  std::vector<FoldContext> folds(static_cast<std::size_t>(plan.k));
  for (int f = 0; f < plan.k; ++f) {
    FoldContext& ctx = folds[static_cast<std::size_t>(f)];
    for (std::size_t i = 0; i < plan.assignments.size(); ++i) {
      (plan.assignments[i] == f ? ctx.test_rows : ctx.train_rows).push_back(static_cast<int>(i));
    }
    Dataset train_slice = slice(data, ctx.train_rows);
    if (hook && *hook) train_slice = (*hook)(train_slice, f);
    ctx.valid = has_both_classes(train_slice.Y);
    if (!ctx.valid) {
      std::cerr << "warning: fold " << f << " of '" << data.name
                << "' has a single training class; excluded from cross-validation\n";
      continue;
    }
    Dataset test_slice = slice(data, ctx.test_rows);
    auto [train_norm, others] = normalize(train_slice, {test_slice});
    ctx.train = std::move(train_norm);
    ctx.test_X = std::move(others[0].X);
    ctx.test_Y = std::move(others[0].Y);
    ctx.fold_seed = mix_seed(seed, static_cast<std::uint64_t>(f));
  }
  return folds;
}

std::uint64_t map_seed_for(std::uint64_t fold_seed, int N, int activation_id) {
  return mix_seed(mix_seed(mix_seed(fold_seed, kMapSalt), static_cast<std::uint64_t>(N)),
                  static_cast<std::uint64_t>(activation_id));
}

GridSearchResult run_cv(const Dataset& data, Variant variant, const GridSpec& grid, int k,
                        std::uint64_t seed, int jobs, const TrainHook* hook) {
  require_trainable(data);
  const auto configs = enumerate_grid(grid, variant);
  const FoldPlan plan = kfold_split(data.n(), k, seed);
  const auto folds = build_folds(data, plan, seed, hook);

  std::vector<int> valid_folds;
  for (int f = 0; f < plan.k; ++f)
    if (folds[static_cast<std::size_t>(f)].valid) valid_folds.push_back(f);
  if (valid_folds.empty())
    throw std::invalid_argument("cross-validation on '" + data.name +
                                "': every fold has a single training class");

  // Shared frozen feature maps for the closed-form variants, keyed by
  // (fold, N, activation). Built up front so workers only read.
  std::map<std::tuple<int, int, int>, RandomFeatureMap> maps;
  if (variant != Variant::WaveRvfl) {
    for (int f : valid_folds) {
      const auto& ctx = folds[static_cast<std::size_t>(f)];
      for (int N : grid.N_values)
        for (int act : grid.activation_ids)
          maps.emplace(std::make_tuple(f, N, act),
                       init_feature_map(static_cast<int>(data.m()), N,
                                        activation_from_id(act),
                                        map_seed_for(ctx.fold_seed, N, act)));
    }
  }

  auto evaluate_fold = [&](const ModelConfig& config, const FoldContext& ctx,
                           int fold) -> double {
    ModelWeights model;
    if (variant == Variant::WaveRvfl) {
      TrainConfig cfg;
      cfg.C = config.C;
      cfg.eta = *config.eta;
      cfg.gamma = *config.gamma;
      cfg.hidden_dim = config.hidden_dim;
      cfg.activation = config.activation;
      cfg.alpha = *config.alpha;
      cfg.seed = ctx.fold_seed;
      model = train_wave_rvfl(ctx.train, cfg).model;
    } else {
      const auto& map =
          maps.at(std::make_tuple(fold, config.hidden_dim, activation_id(config.activation)));
      model = variant == Variant::Rvfl ? fit_rvfl(ctx.train, config.C, map)
                                       : fit_elm(ctx.train, config.C, map);
    }
    return accuracy(predict(model, ctx.test_X), ctx.test_Y);
  };

  // acc[config * k + fold]; only valid folds are filled
  std::vector<double> acc(configs.size() * static_cast<std::size_t>(k), 0.0);
  auto evaluate_config = [&](std::size_t c) {
    for (int f : valid_folds)
      acc[c * static_cast<std::size_t>(k) + static_cast<std::size_t>(f)] =
          evaluate_fold(configs[c], folds[static_cast<std::size_t>(f)], f);
  };

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
  if (workers == 1) {
    for (std::size_t c = 0; c < configs.size(); ++c) evaluate_config(c);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = cursor.fetch_add(1); c < configs.size(); c = cursor.fetch_add(1))
          evaluate_config(c);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::size_t best = 0;
  double best_mean = -1.0;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    double sum = 0.0;
    for (int f : valid_folds) sum += acc[c * static_cast<std::size_t>(k) + static_cast<std::size_t>(f)];
    const double mean = sum / static_cast<double>(valid_folds.size());
    const bool better =
        mean > best_mean ||
        (mean == best_mean &&
         (configs[c].C < configs[best].C ||
          (configs[c].C == configs[best].C && configs[c].hidden_dim < configs[best].hidden_dim)));
    if (c == 0 || better) {
      best = c;
      best_mean = mean;
    }
  }

  GridSearchResult result;
  result.best = configs[best];
  result.valid_folds = valid_folds;
  for (int f : valid_folds)
    result.fold_accuracies.push_back(
        acc[best * static_cast<std::size_t>(k) + static_cast<std::size_t>(f)]);
  result.mean = best_mean;
  result.stddev = population_std(result.fold_accuracies, best_mean);
  result.folds = plan;
  result.seed = seed;
  result.configs_evaluated = configs.size();
  return result;
}

}  // namespace

double accuracy(const Eigen::VectorXd& pred, const Eigen::VectorXd& truth) {
  if (pred.size() == 0) throw std::invalid_argument("accuracy: empty prediction vector");
  if (pred.size() != truth.size())
    throw std::invalid_argument("accuracy: prediction and truth lengths differ");
  Eigen::Index matches = 0;
  for (Eigen::Index i = 0; i < pred.size(); ++i)
    if (pred(i) == truth(i)) ++matches;
  return 100.0 * static_cast<double>(matches) / static_cast<double>(pred.size());
}

GridSpec GridSpec::defaults() {
  GridSpec grid;
  for (int p = -5; p <= 5; ++p) grid.C_values.push_back(std::pow(10.0, p));
  for (int i = 0; i <= 7; ++i) grid.eta_values.push_back(0.1 + 0.25 * i);
  for (int i = 0; i <= 14; ++i) grid.gamma_values.push_back(-2.0 + 0.5 * i);
  for (int i = 0; i <= 10; ++i) grid.N_values.push_back(3 + 20 * i);
  grid.activation_ids = {1, 2, 3, 4, 5, 6};
  grid.alpha_values = {0.0001, 0.001, 0.01};
  return grid;
}

nlohmann::json model_config_to_json(const ModelConfig& config) {
  nlohmann::json j;
  j["variant"] = variant_name(config.variant);
  j["C"] = config.C;
  j["N"] = config.hidden_dim;
  j["activation_id"] = activation_id(config.activation);
  if (config.eta) j["eta"] = *config.eta;
  if (config.gamma) j["gamma"] = *config.gamma;
  if (config.alpha) j["alpha"] = *config.alpha;
  return j;
}

std::vector<ModelConfig> enumerate_grid(const GridSpec& grid, Variant variant) {
  if (grid.C_values.empty() || grid.N_values.empty() || grid.activation_ids.empty())
    throw std::invalid_argument("enumerate_grid: C, N and activation axes must be non-empty");
  const bool wave = variant == Variant::WaveRvfl;
  if (wave && (grid.eta_values.empty() || grid.gamma_values.empty() || grid.alpha_values.empty()))
    throw std::invalid_argument("enumerate_grid: eta, gamma and alpha axes must be non-empty");
  std::vector<ModelConfig> configs;
  for (double C : grid.C_values)
    for (int N : grid.N_values)
      for (int act : grid.activation_ids) {
        ModelConfig base;
        base.variant = variant;
        base.C = C;
        base.hidden_dim = N;
        base.activation = activation_from_id(act);
        if (!wave) {
          configs.push_back(base);
          continue;
        }
        for (double eta : grid.eta_values)
          for (double gamma : grid.gamma_values)
            for (double alpha : grid.alpha_values) {
              ModelConfig c = base;
              c.eta = eta;
              c.gamma = gamma;
              c.alpha = alpha;
              configs.push_back(c);
            }
      }
  return configs;
}

GridSearchResult cross_validated_grid_search(const Dataset& data, Variant variant,
                                             const GridSpec& grid, int k, std::uint64_t seed,
                                             int jobs) {
  return run_cv(data, variant, grid, k, seed, jobs, nullptr);
}

std::vector<double> average_ranks(const ResultTable& table) {
  const auto P = table.acc.rows();
  const auto q = table.acc.cols();
  if (q < 2) throw std::invalid_argument("average_ranks: need at least 2 models");
  if (P < 1) throw std::invalid_argument("average_ranks: need at least 1 dataset");
  std::vector<double> sums(static_cast<std::size_t>(q), 0.0);
  for (Eigen::Index i = 0; i < P; ++i) {
    std::vector<double> row(static_cast<std::size_t>(q));
    for (Eigen::Index j = 0; j < q; ++j) row[static_cast<std::size_t>(j)] = table.acc(i, j);
    const auto ranks = rank_row(row);
    for (Eigen::Index j = 0; j < q; ++j) sums[static_cast<std::size_t>(j)] += ranks[static_cast<std::size_t>(j)];
  }
  for (auto& s : sums) s /= static_cast<double>(P);
  return sums;
}

FriedmanResult friedman_test(const std::vector<double>& avg_ranks, int P, int q) {
  if (q < 2) throw std::invalid_argument("friedman_test: need at least 2 models");
  if (P < 2) throw std::invalid_argument("friedman_test: need at least 2 datasets");
  if (avg_ranks.size() != static_cast<std::size_t>(q))
    throw std::invalid_argument("friedman_test: rank vector length does not match q");
  double sum_sq = 0.0;
  for (double r : avg_ranks) sum_sq += r * r;
  const double qd = q;
  const double Pd = P;
  FriedmanResult result;
  result.chi2_F = (12.0 * Pd / (qd * (qd + 1.0))) * (sum_sq - qd * (qd + 1.0) * (qd + 1.0) / 4.0);
  const double denom = Pd * (qd - 1.0) - result.chi2_F;
  if (denom <= 0.0)
    throw DegenerateStatisticError(
        "friedman_test: F_F denominator P(q-1) - chi2_F = " + std::to_string(denom) +
        " is not positive (perfect ordering edge case)");
  result.F_F = (Pd - 1.0) * result.chi2_F / denom;
  return result;
}

std::vector<std::vector<WtlCounts>> win_tie_loss(const ResultTable& table) {
  const auto P = table.acc.rows();
  const auto q = table.acc.cols();
  if (q < 2) throw std::invalid_argument("win_tie_loss: need at least 2 models");
  std::vector<std::vector<WtlCounts>> counts(
      static_cast<std::size_t>(q), std::vector<WtlCounts>(static_cast<std::size_t>(q)));
  for (Eigen::Index i = 0; i < q; ++i)
    for (Eigen::Index j = 0; j < q; ++j) {
      WtlCounts& c = counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (Eigen::Index p = 0; p < P; ++p) {
        const double a = round4(table.acc(p, i));
        const double b = round4(table.acc(p, j));
        if (a > b) ++c.wins;
        else if (a < b) ++c.losses;
        else ++c.ties;
      }
    }
  return counts;
}

SweepResult robustness_sweep(const Dataset& data, const std::vector<Variant>& variants,
                             const PerturbationSpec& perturbation, const GridSpec& grid, int k,
                             std::uint64_t seed, int jobs) {
  if (variants.empty()) throw std::invalid_argument("robustness_sweep: no variants");
  if (perturbation.levels.empty()) throw std::invalid_argument("robustness_sweep: no levels");
  for (double level : perturbation.levels)
    if (!(level >= 0.0 && level <= 1.0))
      throw std::invalid_argument("robustness_sweep: levels must lie in [0, 1]");

  SweepResult result;
  result.levels = perturbation.levels;
  for (Variant v : variants) result.variants.emplace_back(variant_name(v));
  result.acc.resize(static_cast<Eigen::Index>(perturbation.levels.size()),
                    static_cast<Eigen::Index>(variants.size()));

  for (std::size_t li = 0; li < perturbation.levels.size(); ++li) {
    const double level = perturbation.levels[li];
    TrainHook hook = [&](const Dataset& train, int fold) {
      const std::uint64_t pert_seed =
          mix_seed(mix_seed(mix_seed(seed, kPertSalt), static_cast<std::uint64_t>(li)),
                   static_cast<std::uint64_t>(fold));
      return perturbation.kind == PerturbationSpec::Kind::LabelFlip
                 ? inject_label_noise(train, level, pert_seed)
                 : inject_gaussian_noise(train, level, perturbation.sigma_scale, pert_seed);
    };
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
      const auto cv = run_cv(data, variants[vi], grid, k, seed, jobs, &hook);
      result.acc(static_cast<Eigen::Index>(li), static_cast<Eigen::Index>(vi)) = cv.mean;
    }
  }

  for (std::size_t vi = 0; vi < variants.size(); ++vi)
    result.variant_means.push_back(result.acc.col(static_cast<Eigen::Index>(vi)).mean());
  std::vector<double> rank_sums(variants.size(), 0.0);
  for (Eigen::Index li = 0; li < result.acc.rows(); ++li) {
    std::vector<double> row(variants.size());
    for (std::size_t vi = 0; vi < variants.size(); ++vi)
      row[vi] = result.acc(li, static_cast<Eigen::Index>(vi));
    const auto ranks = rank_row(row);
    for (std::size_t vi = 0; vi < variants.size(); ++vi) rank_sums[vi] += ranks[vi];
  }
  for (double& r : rank_sums) r /= static_cast<double>(result.acc.rows());
  result.variant_ranks = std::move(rank_sums);
  return result;
}

void result_table_to_csv(const ResultTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write results file: " + path.string());
  out << "dataset";
  for (const auto& model : table.models) out << ',' << model;
  out << '\n';
  for (std::size_t i = 0; i < table.datasets.size(); ++i) {
    out << table.datasets[i];
    for (Eigen::Index j = 0; j < table.acc.cols(); ++j)
      out << ',' << fixed4(table.acc(static_cast<Eigen::Index>(i), j)) << "±"
          << fixed4(table.stddev(static_cast<Eigen::Index>(i), j));
    out << '\n';
  }
  if (table.models.size() >= 2) {  // ranks compare models; meaningless for one
    out << "Average Rank";
    for (double r : average_ranks(table)) out << ',' << fixed4(r);
    out << '\n';
  }
}

ResultTable result_table_from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open results file: " + path.string());
  std::string line;
  int line_no = 0;
  ResultTable table;
  std::vector<std::vector<double>> acc_rows;
  std::vector<std::vector<double>> std_rows;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    {
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
    }
    if (table.models.empty()) {
      if (cells.size() < 3)
        throw ParseError(path.string() + ":1: header must list at least 2 models");
      table.models.assign(cells.begin() + 1, cells.end());
      continue;
    }
    if (cells.front() == "Average Rank") continue;  // derived row, recomputed on demand
    if (cells.size() != table.models.size() + 1)
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(table.models.size() + 1) + " cells");
    table.datasets.push_back(cells.front());
    std::vector<double> acc_row;
    std::vector<double> std_row;
    for (std::size_t j = 1; j < cells.size(); ++j) {
      std::string cell = cells[j];
      double sd = 0.0;
      if (const auto pm = cell.find("±"); pm != std::string::npos) {
        sd = std::stod(cell.substr(pm + 2));
        cell = cell.substr(0, pm);
      }
      try {
        acc_row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) +
                         ": not a number: '" + cell + "'");
      }
      std_row.push_back(sd);
    }
    acc_rows.push_back(std::move(acc_row));
    std_rows.push_back(std::move(std_row));
  }
  if (table.models.empty() || acc_rows.empty())
    throw ParseError("results file has no data rows: " + path.string());
  table.acc.resize(static_cast<Eigen::Index>(acc_rows.size()),
                   static_cast<Eigen::Index>(table.models.size()));
  table.stddev.resize(table.acc.rows(), table.acc.cols());
  for (Eigen::Index i = 0; i < table.acc.rows(); ++i)
    for (Eigen::Index j = 0; j < table.acc.cols(); ++j) {
      table.acc(i, j) = acc_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      table.stddev(i, j) = std_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  return table;
}

}  // namespace wavervfl
