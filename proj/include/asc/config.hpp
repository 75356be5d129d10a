#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "asc/dataset.hpp"
#include "asc/io.hpp"
#include "asc/pipeline.hpp"

namespace asc {

/// Where a run's points come from: a named generator or a CSV file, never both.
struct DatasetSource {
  std::optional<std::string> generator;  // blobs | circles | moons
  std::size_t n = 1000;
  double noise = 0.05;
  double factor = 0.5;
  std::size_t centers = 3;
  std::size_t dim = 2;
  double std_dev = 1.0;
  /// Generator seed; the run seed is used when unset.
  std::optional<std::uint64_t> seed;

  std::optional<std::string> csv;
  std::optional<std::string> label_column;
  std::vector<std::string> exclude_columns;
};

struct RunConfig {
  AscOptions options;
  DatasetSource dataset;
  std::optional<std::string> result_path;
  std::optional<std::string> labels_path;
};

inline Dataset make_dataset(const DatasetSource& src, std::uint64_t run_seed) {
  require(src.generator.has_value() != src.csv.has_value(), "exactly one dataset source (generator or csv) is required");
  if (src.csv) return load_csv(*src.csv, CsvOptions{src.label_column, src.exclude_columns});
  const std::uint64_t seed = src.seed.value_or(run_seed);
  const std::string& g = *src.generator;
  if (g == "blobs") return generate_blobs({src.n, src.centers, src.dim, src.std_dev, -10.0, 10.0, seed});
  if (g == "circles") return generate_circles(src.n, src.noise, src.factor, seed);
  if (g == "moons") return generate_moons(src.n, src.noise, seed);
  throw Error("unknown dataset generator '" + g + "'");
}

namespace detail {

inline json gng_to_json(const GngParams& p) {
  return {{"iterations", p.iterations},
          {"max_units", p.max_units},
          {"insertion_interval", p.insertion_interval},
          {"winner_rate", p.winner_rate},
          {"neighbor_rate", p.neighbor_rate},
          {"max_edge_age", p.max_edge_age},
          {"split_error_decay", p.split_error_decay},
          {"error_decay", p.error_decay},
          {"squared_error", p.squared_error}};
}

inline void require_known_keys(const json& j, const std::set<std::string>& known, const std::string& where) {
  require(j.is_object(), where + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    require(known.count(key) > 0, "unknown key '" + key + "' in " + where);
}

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

template <typename T>
void read_if(const json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key)) out = j.at(key).is_null() ? std::nullopt : std::optional<T>(j.at(key).get<T>());
}

inline GngParams gng_from_json(const json& j, GngParams p, const std::string& where) {
  require_known_keys(j, {"iterations", "max_units", "insertion_interval", "winner_rate", "neighbor_rate",
                         "max_edge_age", "split_error_decay", "error_decay", "squared_error"},
                     where);
  read_if(j, "iterations", p.iterations);
  read_if(j, "max_units", p.max_units);
  read_if(j, "insertion_interval", p.insertion_interval);
  read_if(j, "winner_rate", p.winner_rate);
  read_if(j, "neighbor_rate", p.neighbor_rate);
  read_if(j, "max_edge_age", p.max_edge_age);
  read_if(j, "split_error_decay", p.split_error_decay);
  read_if(j, "error_decay", p.error_decay);
  read_if(j, "squared_error", p.squared_error);
  p.validate();
  return p;
}

template <typename T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace detail

inline json to_json(const RunConfig& c) {
  const auto& o = c.options;
  const auto& d = c.dataset;
  json params = {
      {"gng", detail::gng_to_json(o.gng)},
      {"gng_no_topology", detail::gng_to_json(o.gng_no_topology)},
      {"ng",
       {{"iterations", o.ng.iterations},
        {"units", o.ng.units},
        {"range_initial", o.ng.range_initial},
        {"range_final", o.ng.range_final},
        {"rate_initial", o.ng.rate_initial},
        {"rate_final", o.ng.rate_final},
        {"max_age_initial", o.ng.max_age_initial},
        {"max_age_final", o.ng.max_age_final}}},
      {"som", {{"iterations", o.som.iterations}, {"side", o.som.side}, {"rate", o.som.rate}, {"width", o.som.width}}},
      {"kmeans", {{"units", o.kmeans.units}, {"max_iter", o.kmeans.max_iter}}},
  };
  json dataset = {{"generator", detail::optional_to_json(d.generator)},
                  {"n", d.n},
                  {"noise", d.noise},
                  {"factor", d.factor},
                  {"centers", d.centers},
                  {"dim", d.dim},
                  {"std", d.std_dev},
                  {"seed", detail::optional_to_json(d.seed)},
                  {"csv", detail::optional_to_json(d.csv)},
                  {"label_column", detail::optional_to_json(d.label_column)},
                  {"exclude_columns", d.exclude_columns}};
  return {{"method", std::string(to_string(o.method))},
          {"k", o.k},
          {"seed", o.seed},
          {"dataset", std::move(dataset)},
          {"params", std::move(params)},
          {"sigma", detail::optional_to_json(o.sigma)},
          {"units", detail::optional_to_json(o.units)},
          {"normalize", o.normalize},
          {"topology", o.use_topology},
          {"row_normalize", o.row_normalize},
          {"restarts", o.restarts},
          {"kmeans_max_iter", o.kmeans_max_iter},
          {"eigensolver", o.solver == EigenSolver::jacobi ? "jacobi" : "tridiagonal_qr"},
          {"sc_max_points", o.sc_max_points},
          {"output", {{"result", detail::optional_to_json(c.result_path)}, {"labels", detail::optional_to_json(c.labels_path)}}}};
}

/// Strict parse: unknown keys are errors, absent keys keep built-in defaults.
inline RunConfig run_config_from_json(const json& j) {
  using detail::read_if;
  detail::require_known_keys(j, {"method", "k", "seed", "dataset", "params", "sigma", "units", "normalize", "topology",
                                 "row_normalize", "restarts", "kmeans_max_iter", "eigensolver", "sc_max_points", "output"},
                             "config");
  RunConfig c;
  auto& o = c.options;
  if (j.contains("method")) o.method = parse_method(j.at("method").get<std::string>());
  read_if(j, "k", o.k);
  read_if(j, "seed", o.seed);
  read_if(j, "sigma", o.sigma);
  read_if(j, "units", o.units);
  read_if(j, "normalize", o.normalize);
  read_if(j, "topology", o.use_topology);
  read_if(j, "row_normalize", o.row_normalize);
  read_if(j, "restarts", o.restarts);
  read_if(j, "kmeans_max_iter", o.kmeans_max_iter);
  read_if(j, "sc_max_points", o.sc_max_points);
  if (j.contains("eigensolver")) {
    const auto s = j.at("eigensolver").get<std::string>();
    require(s == "jacobi" || s == "tridiagonal_qr", "unknown eigensolver '" + s + "'");
    o.solver = s == "jacobi" ? EigenSolver::jacobi : EigenSolver::tridiagonal_qr;
  }
  require(o.k >= 1, "k must be >= 1");
  require(o.restarts >= 1, "restarts must be >= 1");
  require(!o.sigma || *o.sigma > 0.0, "sigma must be positive");

  if (j.contains("params")) {
    const auto& p = j.at("params");
    detail::require_known_keys(p, {"gng", "gng_no_topology", "ng", "som", "kmeans"}, "params");
    if (p.contains("gng")) o.gng = detail::gng_from_json(p.at("gng"), o.gng, "params.gng");
    if (p.contains("gng_no_topology"))
      o.gng_no_topology = detail::gng_from_json(p.at("gng_no_topology"), o.gng_no_topology, "params.gng_no_topology");
    if (p.contains("ng")) {
      const auto& n = p.at("ng");
      detail::require_known_keys(n, {"iterations", "units", "range_initial", "range_final", "rate_initial", "rate_final",
                                     "max_age_initial", "max_age_final"},
                                 "params.ng");
      read_if(n, "iterations", o.ng.iterations);
      read_if(n, "units", o.ng.units);
      read_if(n, "range_initial", o.ng.range_initial);
      read_if(n, "range_final", o.ng.range_final);
      read_if(n, "rate_initial", o.ng.rate_initial);
      read_if(n, "rate_final", o.ng.rate_final);
      read_if(n, "max_age_initial", o.ng.max_age_initial);
      read_if(n, "max_age_final", o.ng.max_age_final);
      o.ng.validate();
    }
    if (p.contains("som")) {
      const auto& s = p.at("som");
      detail::require_known_keys(s, {"iterations", "side", "rate", "width"}, "params.som");
      read_if(s, "iterations", o.som.iterations);
      read_if(s, "side", o.som.side);
      read_if(s, "rate", o.som.rate);
      read_if(s, "width", o.som.width);
      o.som.validate();
    }
    if (p.contains("kmeans")) {
      const auto& k = p.at("kmeans");
      detail::require_known_keys(k, {"units", "max_iter"}, "params.kmeans");
      read_if(k, "units", o.kmeans.units);
      read_if(k, "max_iter", o.kmeans.max_iter);
      require(o.kmeans.units >= 1, "params.kmeans.units must be >= 1");
    }
  }

  if (j.contains("dataset")) {
    const auto& d = j.at("dataset");
    detail::require_known_keys(d, {"generator", "n", "noise", "factor", "centers", "dim", "std", "seed", "csv",
                                   "label_column", "exclude_columns"},
                               "dataset");
    auto& s = c.dataset;
    read_if(d, "generator", s.generator);
    read_if(d, "n", s.n);
    read_if(d, "noise", s.noise);
    read_if(d, "factor", s.factor);
    read_if(d, "centers", s.centers);
    read_if(d, "dim", s.dim);
    read_if(d, "std", s.std_dev);
    read_if(d, "seed", s.seed);
    read_if(d, "csv", s.csv);
    read_if(d, "label_column", s.label_column);
    read_if(d, "exclude_columns", s.exclude_columns);
    require(!(s.generator && s.csv), "dataset: generator and csv are mutually exclusive");
  }

  if (j.contains("output")) {
    const auto& out = j.at("output");
    detail::require_known_keys(out, {"result", "labels"}, "output");
    read_if(out, "result", c.result_path);
    read_if(out, "labels", c.labels_path);
  }
  return c;
}

/// Built-in defaults, then the config file, then command-line overrides;
/// later layers win key by key.
inline RunConfig resolve_config(const std::vector<json>& layers) {
  json merged = to_json(RunConfig{});
  for (const auto& layer : layers) {
    require(layer.is_object(), "configuration layers must be JSON objects");
    // A dataset source in a later layer replaces the other kind of source.
    json patch = layer;
    if (patch.contains("dataset") && patch["dataset"].is_object()) {
      auto& d = patch["dataset"];
      if (d.contains("csv") && !d["csv"].is_null() && !d.contains("generator")) d["generator"] = nullptr;
      if (d.contains("generator") && !d["generator"].is_null() && !d.contains("csv")) d["csv"] = nullptr;
    }
    merged.merge_patch(patch);
    // merge_patch deletes null members; restore the schema shape.
    merged = [&] {
      json full = to_json(RunConfig{});
      full.merge_patch(merged);
      return full;
    }();
  }
  return run_config_from_json(merged);
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("invalid JSON in '" + path + "': " + e.what());
  }
}

}  // namespace asc
