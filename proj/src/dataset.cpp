#include "wavervfl/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wavervfl/errors.hpp"
#include "wavervfl/rng.hpp"

namespace wavervfl {

namespace {

constexpr std::uint64_t kFlipSalt = 0x464c4950ull;   // "FLIP"
constexpr std::uint64_t kGaussSalt = 0x47415553ull;  // "GAUS"
constexpr std::uint64_t kFoldSalt = 0x464f4c44ull;   // "FOLD"

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_double(const std::string& cell, const std::filesystem::path& path, int line_no) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = first + cell.size();
  if (first != last && *first == '+') ++first;  // from_chars rejects a leading plus
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ": not a number: '" +
                     cell + "'");
  if (!std::isfinite(value))
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ": non-finite value '" +
                     cell + "'");
  return value;
}

// Shortest decimal form that round-trips the double exactly.
std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::size_t round_half_up(double x) {
  return static_cast<std::size_t>(std::floor(x + 0.5));
}

}  // namespace

namespace {

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<int> row_lines;
  std::size_t width = 0;
};

RawTable read_table(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file: " + path.string());
  RawTable table;
  std::string line;
  int line_no = 0;
  bool expect_header = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (expect_header) {
      expect_header = false;
      table.header = cells;
      table.width = cells.size();
      continue;
    }
    if (table.width == 0) table.width = cells.size();
    if (cells.size() != table.width)
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(table.width) + " columns, got " +
                       std::to_string(cells.size()));
    std::vector<double> values(table.width);
    for (std::size_t j = 0; j < table.width; ++j)
      values[j] = parse_double(cells[j], path, line_no);
    table.rows.push_back(std::move(values));
    table.row_lines.push_back(line_no);
  }
  if (table.rows.empty()) throw ParseError("empty dataset file: " + path.string());
  return table;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  RawTable table = read_table(path, options.has_header);
  const auto& rows = table.rows;
  const auto& row_lines = table.row_lines;
  const auto& header = table.header;
  const std::size_t width = table.width;
  if (width < 2) throw ParseError(path.string() + ": need at least one feature and a label column");

  const std::size_t label_col =
      options.label_column < 0 ? width - 1 : static_cast<std::size_t>(options.label_column);
  if (label_col >= width)
    throw ParseError(path.string() + ": label column " + std::to_string(options.label_column) +
                     " out of range for " + std::to_string(width) + " columns");

  const std::size_t n = rows.size();
  const std::size_t m = width - 1;
  Dataset data;
  data.X.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  data.Y.resize(static_cast<Eigen::Index>(n));
  bool saw_zero = false;
  bool saw_minus_one = false;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t col = 0;
    for (std::size_t j = 0; j < width; ++j) {
      if (j == label_col) continue;
      data.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col++)) = rows[i][j];
    }
    const double label = rows[i][label_col];
    if (label != -1.0 && label != 0.0 && label != 1.0)
      throw ParseError(path.string() + ":" + std::to_string(row_lines[i]) +
                       ": label must be -1/+1 or 0/1, got '" + format_double(label) + "'");
    if (label == 0.0) saw_zero = true;
    if (label == -1.0) saw_minus_one = true;
    data.Y(static_cast<Eigen::Index>(i)) = label;
  }
  if (saw_zero && saw_minus_one)
    throw ParseError(path.string() + ": labels mix the 0/1 and -1/+1 codings");
  if (saw_zero)
    for (Eigen::Index i = 0; i < data.Y.size(); ++i)
      if (data.Y(i) == 0.0) data.Y(i) = -1.0;

  data.name = path.stem().string();
  if (!header.empty()) {
    for (std::size_t j = 0; j < width; ++j) {
      if (j == label_col)
        data.label_name = header[j];
      else
        data.column_names.push_back(header[j]);
    }
  }
  data.provenance.source = path.string();
  return data;
}

Eigen::MatrixXd load_features_csv(const std::filesystem::path& path, bool has_header) {
  const RawTable table = read_table(path, has_header);
  Eigen::MatrixXd X(static_cast<Eigen::Index>(table.rows.size()),
                    static_cast<Eigen::Index>(table.width));
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    for (std::size_t j = 0; j < table.width; ++j)
      X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = table.rows[i][j];
  return X;
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write dataset file: " + path.string());
  if (!data.column_names.empty()) {
    if (data.column_names.size() != static_cast<std::size_t>(data.m()))
      throw ShapeError("save_csv: " + std::to_string(data.column_names.size()) +
                       " column names for " + std::to_string(data.m()) + " features");
    for (const auto& name : data.column_names) out << name << ',';
    out << (data.label_name.empty() ? "label" : data.label_name) << '\n';
  }
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    for (Eigen::Index j = 0; j < data.m(); ++j) out << format_double(data.X(i, j)) << ',';
    out << format_double(data.Y(i)) << '\n';
  }
}

void save_provenance(const Dataset& data, const std::filesystem::path& path) {
  nlohmann::json j;
  j["name"] = data.name;
  j["source"] = data.provenance.source;
  j["transforms"] = data.provenance.transforms;
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write provenance file: " + path.string());
  out << j.dump(2) << '\n';
}

void require_trainable(const Dataset& data) {
  if (data.n() < 2)
    throw std::invalid_argument("dataset '" + data.name + "' has fewer than 2 samples");
  bool pos = false;
  bool neg = false;
  for (Eigen::Index i = 0; i < data.Y.size(); ++i) {
    if (data.Y(i) == 1.0) pos = true;
    else if (data.Y(i) == -1.0) neg = true;
  }
  if (!pos || !neg)
    throw std::invalid_argument("dataset '" + data.name + "' contains a single class only");
}

std::pair<Dataset, std::vector<Dataset>> normalize(const Dataset& train,
                                                   const std::vector<Dataset>& others) {
  if (train.n() == 0) throw std::invalid_argument("normalize: empty training dataset");
  const MinMaxStats stats = fit_minmax(train.X);
  Dataset train_out = train;
  train_out.X = apply_minmax(stats, train.X);
  train_out.provenance.transforms.push_back({{"op", "min-max"}, {"role", "fit"}});
  std::vector<Dataset> others_out;
  others_out.reserve(others.size());
  for (const auto& d : others) {
    Dataset out = d;
    out.X = apply_minmax(stats, d.X);
    out.provenance.transforms.push_back({{"op", "min-max"}, {"role", "apply"}});
    others_out.push_back(std::move(out));
  }
  return {std::move(train_out), std::move(others_out)};
}

FoldPlan kfold_split(Eigen::Index n, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("kfold_split: need k >= 2");
  if (static_cast<Eigen::Index>(k) > n)
    throw std::invalid_argument("kfold_split: k = " + std::to_string(k) + " exceeds n = " +
                                std::to_string(n));
  Rng rng(mix_seed(seed, kFoldSalt));
  const auto perm = sample_without_replacement(static_cast<int>(n), static_cast<int>(n), rng);
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignments.resize(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < perm.size(); ++i)
    plan.assignments[static_cast<std::size_t>(perm[i])] = static_cast<int>(i % static_cast<std::size_t>(k));
  return plan;
}

Dataset inject_label_noise(const Dataset& data, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("inject_label_noise: fraction must lie in [0, 1]");
  Dataset out = data;
  const std::size_t count = round_half_up(fraction * static_cast<double>(data.n()));
  std::vector<int> indices;
  if (count > 0) {
    Rng rng(mix_seed(seed, kFlipSalt));
    indices = sample_without_replacement(static_cast<int>(data.n()), static_cast<int>(count), rng);
    for (int idx : indices) out.Y(idx) = -out.Y(idx);
  }
  std::sort(indices.begin(), indices.end());
  out.provenance.transforms.push_back({{"op", "label-flip"},
                                       {"fraction", fraction},
                                       {"seed", seed},
                                       {"indices", indices}});
  return out;
}

Dataset inject_gaussian_noise(const Dataset& data, double fraction, double sigma_scale,
                              std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("inject_gaussian_noise: fraction must lie in [0, 1]");
  if (!(sigma_scale >= 0.0))
    throw std::invalid_argument("inject_gaussian_noise: sigma_scale must be >= 0");
  Dataset out = data;
  const std::size_t count = round_half_up(fraction * static_cast<double>(data.n()));
  std::vector<int> indices;
  if (count > 0) {
    Rng rng(mix_seed(seed, kGaussSalt));
    indices = sample_without_replacement(static_cast<int>(data.n()), static_cast<int>(count), rng);
    if (sigma_scale > 0.0 && data.n() > 1) {
      // per-feature sample standard deviation of the dataset being perturbed
      const Eigen::RowVectorXd mean = data.X.colwise().mean();
      const Eigen::RowVectorXd sd =
          ((data.X.rowwise() - mean).colwise().squaredNorm() /
           static_cast<double>(data.n() - 1))
              .cwiseSqrt();
      for (int idx : indices)
        for (Eigen::Index j = 0; j < data.m(); ++j)
          out.X(idx, j) += sigma_scale * sd(j) * rng.gaussian();
    }
  }
  std::sort(indices.begin(), indices.end());
  out.provenance.transforms.push_back({{"op", "gaussian-noise"},
                                       {"fraction", fraction},
                                       {"sigma_scale", sigma_scale},
                                       {"seed", seed},
                                       {"indices", indices}});
  return out;
}

}  // namespace wavervfl
