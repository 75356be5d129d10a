#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "asc/core.hpp"

namespace asc {

/// Ordered point set with optional ground-truth class ids.
class Dataset {
public:
  Dataset() = default;

  explicit Dataset(Matrix points, std::optional<std::vector<int>> labels = std::nullopt)
      : points_(std::move(points)), labels_(std::move(labels)) {
    require(points_.cols() >= 1 || points_.rows() == 0, "dataset dimensionality must be >= 1");
    if (labels_) {
      require(labels_->size() == static_cast<std::size_t>(points_.rows()),
              "label count does not match point count");
      require(std::all_of(labels_->begin(), labels_->end(), [](int l) { return l >= 0; }),
              "class labels must be non-negative");
    }
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>(points_.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(points_.cols()); }
  bool empty() const noexcept { return points_.rows() == 0; }

  const Matrix& points() const noexcept { return points_; }
  auto point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)); }

  bool has_labels() const noexcept { return labels_.has_value(); }
  const std::optional<std::vector<int>>& labels() const noexcept { return labels_; }

  std::size_t class_count() const {
    if (!labels_) return 0;
    return std::set<int>(labels_->begin(), labels_->end()).size();
  }

  bool operator==(const Dataset& other) const {
    return points_.rows() == other.points_.rows() && points_.cols() == other.points_.cols() &&
           points_ == other.points_ && labels_ == other.labels_;
  }

private:
  Matrix points_;
  std::optional<std::vector<int>> labels_;
};

/// Divides every point by the norm of the largest-norm point.
inline Dataset normalize(const Dataset& dataset) {
  require(!dataset.empty(), "cannot normalize an empty dataset");
  const double max_norm = dataset.points().rowwise().norm().maxCoeff();
  require(max_norm > 0.0, "degenerate dataset: zero max norm");
  return Dataset(dataset.points() / max_norm, dataset.labels());
}

namespace detail {

// numpy.linspace semantics; num == 1 yields {start}.
inline std::vector<double> linspace(double start, double stop, std::size_t num, bool endpoint) {
  std::vector<double> out(num);
  if (num == 0) return out;
  const double div = endpoint ? static_cast<double>(num - 1) : static_cast<double>(num);
  const double step = div > 0 ? (stop - start) / div : 0.0;
  for (std::size_t i = 0; i < num; ++i) out[i] = start + step * static_cast<double>(i);
  return out;
}

inline void add_gaussian_noise(Matrix& points, double std_dev, std::mt19937_64& rng) {
  if (std_dev <= 0.0) return;
  std::normal_distribution<double> noise(0.0, std_dev);
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    for (Eigen::Index j = 0; j < points.cols(); ++j) points(i, j) += noise(rng);
}

}  // namespace detail

struct BlobsOptions {
  std::size_t n = 1000;
  std::size_t centers = 3;
  std::size_t dim = 2;
  double std_dev = 1.0;
  double box_min = -10.0;
  double box_max = 10.0;
  std::uint64_t seed = 0;
};

/// Isotropic Gaussian blobs. Component sizes differ by at most one; the first
/// n % centers components get the extra point. Points are grouped by component.
inline Dataset generate_blobs(const BlobsOptions& opt) {
  require(opt.centers >= 1, "blobs: need at least one center");
  require(opt.n >= opt.centers, "blobs: n must be >= number of centers");
  require(opt.dim >= 1, "blobs: dimension must be >= 1");
  require(opt.std_dev >= 0.0, "blobs: std must be non-negative");
  require(opt.box_min < opt.box_max, "blobs: empty center box");

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> box(opt.box_min, opt.box_max);
  Matrix centers(static_cast<Eigen::Index>(opt.centers), static_cast<Eigen::Index>(opt.dim));
  for (Eigen::Index c = 0; c < centers.rows(); ++c)
    for (Eigen::Index j = 0; j < centers.cols(); ++j) centers(c, j) = box(rng);

  Matrix points(static_cast<Eigen::Index>(opt.n), static_cast<Eigen::Index>(opt.dim));
  std::vector<int> labels;
  labels.reserve(opt.n);
  Eigen::Index row = 0;
  for (std::size_t c = 0; c < opt.centers; ++c) {
    const std::size_t count = opt.n / opt.centers + (c < opt.n % opt.centers ? 1 : 0);
    for (std::size_t i = 0; i < count; ++i, ++row) {
      points.row(row) = centers.row(static_cast<Eigen::Index>(c));
      labels.push_back(static_cast<int>(c));
    }
  }
  detail::add_gaussian_noise(points, opt.std_dev, rng);
  return Dataset(std::move(points), std::move(labels));
}

/// Two concentric circles: outer radius 1 (label 0), inner radius `factor` (label 1).
inline Dataset generate_circles(std::size_t n, double noise, double factor, std::uint64_t seed) {
  require(n >= 2, "circles: n must be >= 2");
  require(factor > 0.0 && factor < 1.0, "circles: factor must lie in (0, 1)");
  require(noise >= 0.0, "circles: noise must be non-negative");

  const std::size_t n_out = n / 2;
  const std::size_t n_in = n - n_out;
  Matrix points(static_cast<Eigen::Index>(n), 2);
  std::vector<int> labels(n);
  const auto outer = detail::linspace(0.0, 2.0 * std::numbers::pi, n_out, false);
  const auto inner = detail::linspace(0.0, 2.0 * std::numbers::pi, n_in, false);
  Eigen::Index row = 0;
  for (double t : outer) {
    points.row(row) << std::cos(t), std::sin(t);
    labels[static_cast<std::size_t>(row++)] = 0;
  }
  for (double t : inner) {
    points.row(row) << factor * std::cos(t), factor * std::sin(t);
    labels[static_cast<std::size_t>(row++)] = 1;
  }
  std::mt19937_64 rng(seed);
  detail::add_gaussian_noise(points, noise, rng);
  return Dataset(std::move(points), std::move(labels));
}

/// Two interleaving half circles. Upper arc (label 0) is the unit half circle;
/// the lower arc (label 1) is mirrored, shifted right by 1 and down by 0.5.
inline Dataset generate_moons(std::size_t n, double noise, std::uint64_t seed) {
  require(n >= 2, "moons: n must be >= 2");
  require(noise >= 0.0, "moons: noise must be non-negative");

  const std::size_t n_out = n / 2;
  const std::size_t n_in = n - n_out;
  Matrix points(static_cast<Eigen::Index>(n), 2);
  std::vector<int> labels(n);
  Eigen::Index row = 0;
  for (double t : detail::linspace(0.0, std::numbers::pi, n_out, true)) {
    points.row(row) << std::cos(t), std::sin(t);
    labels[static_cast<std::size_t>(row++)] = 0;
  }
  for (double t : detail::linspace(0.0, std::numbers::pi, n_in, true)) {
    points.row(row) << 1.0 - std::cos(t), 0.5 - std::sin(t);
    labels[static_cast<std::size_t>(row++)] = 1;
  }
  std::mt19937_64 rng(seed);
  detail::add_gaussian_noise(points, noise, rng);
  return Dataset(std::move(points), std::move(labels));
}

struct CsvOptions {
  std::optional<std::string> label_column;
  std::vector<std::string> exclude_columns;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      return cells;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

inline std::optional<double> parse_double(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

}  // namespace detail

/// Parses a header-first, comma-separated table. Line numbers in errors are
/// 1-based file lines. Label values are mapped to ids in order of first appearance.
inline Dataset parse_csv(std::istream& in, const CsvOptions& opt = {}) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!detail::trim(line).empty()) have_header = true;
  }
  require(have_header, "empty dataset");

  std::vector<std::string> header;
  for (auto cell : detail::split_csv_line(line)) header.emplace_back(cell);

  std::optional<std::size_t> label_idx;
  if (opt.label_column) {
    const auto it = std::find(header.begin(), header.end(), *opt.label_column);
    require(it != header.end(), "label column '" + *opt.label_column + "' not found in header");
    label_idx = static_cast<std::size_t>(it - header.begin());
  }
  for (const auto& name : opt.exclude_columns)
    require(std::find(header.begin(), header.end(), name) != header.end(),
            "excluded column '" + name + "' not found in header");

  std::vector<std::size_t> feature_idx;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (label_idx && c == *label_idx) continue;
    if (std::find(opt.exclude_columns.begin(), opt.exclude_columns.end(), header[c]) !=
        opt.exclude_columns.end())
      continue;
    feature_idx.push_back(c);
  }
  require(!feature_idx.empty(), "no feature columns");

  std::vector<double> values;
  std::vector<int> labels;
  std::unordered_map<std::string, int> label_ids;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != header.size())
      throw Error("parse error at line " + std::to_string(line_no) + ": expected " +
                  std::to_string(header.size()) + " fields, got " + std::to_string(cells.size()));
    for (auto c : feature_idx) {
      const auto v = detail::parse_double(cells[c]);
      if (!v)
        throw Error("parse error at line " + std::to_string(line_no) + ": non-numeric value '" +
                    std::string(cells[c]) + "' in column '" + header[c] + "'");
      values.push_back(*v);
    }
    if (label_idx) {
      const std::string key(cells[*label_idx]);
      const auto [it, inserted] = label_ids.try_emplace(key, static_cast<int>(label_ids.size()));
      labels.push_back(it->second);
    }
    ++rows;
  }
  require(rows > 0, "empty dataset");

  Matrix points = Eigen::Map<Matrix>(values.data(), static_cast<Eigen::Index>(rows),
                                     static_cast<Eigen::Index>(feature_idx.size()));
  if (label_idx) return Dataset(std::move(points), std::move(labels));
  return Dataset(std::move(points));
}

inline Dataset load_csv(const std::string& path, const CsvOptions& opt = {}) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open '" + path + "'");
  return parse_csv(in, opt);
}

/// Writes features as x0..x{d-1} plus a trailing `label` column when labels exist.
inline void write_csv(std::ostream& out, const Dataset& dataset) {
  out.precision(17);
  for (std::size_t j = 0; j < dataset.dim(); ++j) out << (j ? "," : "") << 'x' << j;
  if (dataset.has_labels()) out << ",label";
  out << '\n';
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    for (std::size_t j = 0; j < dataset.dim(); ++j)
      out << (j ? "," : "") << dataset.points()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (dataset.has_labels()) out << ',' << (*dataset.labels())[i];
    out << '\n';
  }
}

}  // namespace asc
