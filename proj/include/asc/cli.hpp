#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asc/config.hpp"
#include "asc/dataset.hpp"
#include "asc/eval.hpp"
#include "asc/io.hpp"
#include "asc/pipeline.hpp"

namespace asc::cli {

/// Relative output paths land under $ASC_OUTPUT_DIR when it is set.
inline std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("ASC_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  return p;
}

/// Writes via `emit` to the resolved file, or to `fallback` when no path is given.
template <typename Emit>
void write_output(const std::optional<std::string>& path, std::ostream& fallback, Emit&& emit) {
  if (!path) {
    emit(fallback);
    return;
  }
  const auto resolved = resolve_output(*path);
  std::ofstream file(resolved);
  require(static_cast<bool>(file), "cannot write '" + resolved.string() + "'");
  emit(file);
  require(static_cast<bool>(file), "write failed for '" + resolved.string() + "'");
}

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

// "a.b.c=value" -> {"a": {"b": {"c": value}}}; value is parsed as JSON when possible.
inline json dotted_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  require(eq != std::string::npos && eq > 0, "--set expects key.path=value, got '" + assignment + "'");
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  json root = json::object();
  json* node = &root;
  std::stringstream ss(path);
  std::vector<std::string> keys;
  for (std::string key; std::getline(ss, key, '.');) keys.push_back(key);
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) node = &((*node)[keys[i]] = json::object());
  (*node)[keys.back()] = std::move(value);
  return root;
}

inline void apply_iterations(json& layer, std::size_t t) {
  for (const char* m : {"gng", "gng_no_topology", "ng", "som"}) layer["params"][m]["iterations"] = t;
}

}  // namespace detail

/// Flags shared by `cluster` and `sweep`; each set flag becomes one key of the
/// command-line configuration layer.
struct RunFlags {
  std::string config;
  std::string method;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::string dataset;
  std::string csv;
  std::size_t n = 0;
  double noise = 0, factor = 0, std_dev = 0;
  std::size_t centers = 0, dim = 0;
  std::uint64_t data_seed = 0;
  std::string label_col;
  std::string exclude_cols;
  double sigma = 0;
  std::size_t units = 0;
  bool no_normalize = false, no_topology = false, row_normalize = false;
  std::size_t restarts = 0;
  std::size_t iterations = 0;
  std::string eigensolver;
  std::vector<std::string> sets;

  struct Handles {
    CLI::Option *method, *k, *seed, *dataset, *csv, *n, *noise, *factor, *std_dev, *centers, *dim, *data_seed,
        *label_col, *exclude_cols, *sigma, *units, *restarts, *iterations, *eigensolver;
  } h{};

  void attach(CLI::App& app) {
    app.add_option("--config", config, "JSON run configuration")->check(CLI::ExistingFile);
    h.method = app.add_option("--method", method, "gng | ng | som | kmeans | gng_no_topology | sc");
    h.k = app.add_option("--k", k, "number of clusters");
    h.seed = app.add_option("--seed", seed, "master seed");
    h.dataset = app.add_option("--dataset", dataset, "generator: blobs | circles | moons");
    h.csv = app.add_option("--csv", csv, "CSV dataset with a header row");
    h.n = app.add_option("--n", n, "generated point count");
    h.noise = app.add_option("--noise", noise, "generator noise std");
    h.factor = app.add_option("--factor", factor, "inner circle scale");
    h.std_dev = app.add_option("--std", std_dev, "blob std");
    h.centers = app.add_option("--centers", centers, "blob count");
    h.dim = app.add_option("--dim", dim, "blob dimension");
    h.data_seed = app.add_option("--data-seed", data_seed, "generator seed (defaults to --seed)");
    h.label_col = app.add_option("--label-col", label_col, "CSV column holding class labels");
    h.exclude_cols = app.add_option("--exclude-cols", exclude_cols, "comma-separated CSV columns to drop");
    h.sigma = app.add_option("--sigma", sigma, "Gaussian similarity width");
    h.units = app.add_option("--units", units, "unit budget (M, M_max, or l*l for som)");
    app.add_flag("--no-normalize", no_normalize, "skip max-norm normalization");
    app.add_flag("--no-topology", no_topology, "fully connected similarity for gng/ng/som");
    app.add_flag("--row-normalize", row_normalize, "unit-normalize embedding rows before k-means");
    h.restarts = app.add_option("--restarts", restarts, "k-means restarts on the embedding");
    h.iterations = app.add_option("--iterations", iterations, "iteration count T for every online quantizer");
    h.eigensolver = app.add_option("--eigensolver", eigensolver, "tridiagonal_qr | jacobi");
    app.add_option("--set", sets, "override any config key, e.g. params.gng.insertion_interval=300");
  }

  std::vector<json> layers() const {
    std::vector<json> out;
    if (!config.empty()) out.push_back(load_json_file(config));
    json cli = json::object();
    if (h.method->count()) cli["method"] = method;
    if (h.k->count()) cli["k"] = k;
    if (h.seed->count()) cli["seed"] = seed;
    if (h.dataset->count()) cli["dataset"]["generator"] = dataset;
    if (h.csv->count()) cli["dataset"]["csv"] = csv;
    if (h.n->count()) cli["dataset"]["n"] = n;
    if (h.noise->count()) cli["dataset"]["noise"] = noise;
    if (h.factor->count()) cli["dataset"]["factor"] = factor;
    if (h.std_dev->count()) cli["dataset"]["std"] = std_dev;
    if (h.centers->count()) cli["dataset"]["centers"] = centers;
    if (h.dim->count()) cli["dataset"]["dim"] = dim;
    if (h.data_seed->count()) cli["dataset"]["seed"] = data_seed;
    if (h.label_col->count()) cli["dataset"]["label_column"] = label_col;
    if (h.exclude_cols->count()) cli["dataset"]["exclude_columns"] = detail::split_list(exclude_cols);
    if (h.sigma->count()) cli["sigma"] = sigma;
    if (h.units->count()) cli["units"] = units;
    if (no_normalize) cli["normalize"] = false;
    if (no_topology) cli["topology"] = false;
    if (row_normalize) cli["row_normalize"] = true;
    if (h.restarts->count()) cli["restarts"] = restarts;
    if (h.iterations->count()) detail::apply_iterations(cli, iterations);
    if (h.eigensolver->count()) cli["eigensolver"] = eigensolver;
    for (const auto& s : sets) cli.merge_patch(detail::dotted_assignment(s));
    out.push_back(std::move(cli));
    return out;
  }
};

inline int cmd_generate(const std::string& name, const DatasetSource& src, std::uint64_t seed,
                        const std::optional<std::string>& out_path, std::ostream& out) {
  DatasetSource s = src;
  s.generator = name;
  const Dataset data = make_dataset(s, seed);
  write_output(out_path, out, [&](std::ostream& os) { write_csv(os, data); });
  return 0;
}

inline int cmd_cluster(const RunConfig& cfg, const std::optional<std::string>& out_flag,
                       const std::optional<std::string>& labels_flag, std::ostream& out) {
  const Dataset data = make_dataset(cfg.dataset, cfg.options.seed);
  const auto result = asc_cluster(data, cfg.options);
  std::optional<double> p;
  if (data.has_labels()) p = purity(result.point_labels, *data.labels()).purity;

  const auto result_path = out_flag ? out_flag : cfg.result_path;
  const auto labels_path = labels_flag ? labels_flag : cfg.labels_path;
  write_output(result_path, out, [&](std::ostream& os) { os << to_json(result, p).dump(2) << '\n'; });
  if (labels_path) write_output(labels_path, out, [&](std::ostream& os) { write_labels_csv(os, result.point_labels); });
  if (result_path && p) out << "purity: " << *p << '\n';
  return 0;
}

/// Entry point for the `asc` tool. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Approximate spectral clustering with topology-learning quantizers"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a synthetic dataset as CSV");
  std::string gen_name;
  DatasetSource gen_src;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--dataset", gen_name, "blobs | circles | moons")->required();
  gen->add_option("--n", gen_src.n, "point count");
  gen->add_option("--noise", gen_src.noise, "Gaussian noise std (circles, moons)");
  gen->add_option("--factor", gen_src.factor, "inner circle scale (circles)");
  gen->add_option("--centers", gen_src.centers, "blob count");
  gen->add_option("--dim", gen_src.dim, "blob dimension");
  gen->add_option("--std", gen_src.std_dev, "blob std");
  gen->add_option("--seed", gen_seed, "generator seed");
  auto* gen_out_opt = gen->add_option("--out", gen_out, "output CSV (default: stdout)");

  // cluster
  auto* cluster = app.add_subcommand("cluster", "cluster a dataset and emit a JSON result");
  RunFlags cluster_flags;
  cluster_flags.attach(*cluster);
  std::string cluster_out, cluster_labels;
  auto* cluster_out_opt = cluster->add_option("--out", cluster_out, "result JSON (default: stdout)");
  auto* cluster_labels_opt = cluster->add_option("--labels-out", cluster_labels, "single-column label CSV");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "purity as a function of the unit budget");
  RunFlags sweep_flags;
  sweep_flags.attach(*sweep);
  std::vector<std::size_t> sweep_units_list{10, 20, 30, 50, 75, 100, 150};
  std::size_t sweep_seed_count = 20;
  std::string sweep_out, sweep_summary;
  sweep->add_option("--units-list", sweep_units_list, "unit budgets to evaluate")->delimiter(',');
  sweep->add_option("--seeds", sweep_seed_count, "number of seeds per budget (seed, seed+1, ...)");
  auto* sweep_out_opt = sweep->add_option("--out", sweep_out, "metric CSV (default: stdout)");
  auto* sweep_summary_opt = sweep->add_option("--summary", sweep_summary, "summary JSON");

  // bench
  auto* bench = app.add_subcommand("bench", "runtime scaling on generated blobs");
  std::string bench_axis = "points";
  std::vector<std::size_t> bench_grid;
  std::string bench_methods = "gng,ng,som,kmeans,sc";
  BenchmarkConfig bench_cfg;
  std::size_t bench_iterations = 0;
  std::vector<std::string> bench_sets;
  std::string bench_out, bench_summary;
  bench->add_option("--axis", bench_axis, "points | units")->check(CLI::IsMember({"points", "units"}));
  bench->add_option("--grid", bench_grid, "ascending grid of N or M values")->delimiter(',');
  bench->add_option("--methods", bench_methods, "comma-separated methods");
  bench->add_option("--reps", bench_cfg.repetitions, "repetitions per cell");
  bench->add_option("--seed", bench_cfg.seed, "seed");
  bench->add_option("--fixed-units", bench_cfg.fixed_units, "M when varying N");
  bench->add_option("--fixed-points", bench_cfg.fixed_points, "N when varying M");
  auto* bench_iter_opt = bench->add_option("--iterations", bench_iterations, "iteration count T for online quantizers");
  bench->add_option("--set", bench_sets, "override any config key");
  auto* bench_out_opt = bench->add_option("--out", bench_out, "metric CSV (default: stdout)");
  auto* bench_summary_opt = bench->add_option("--summary", bench_summary, "summary JSON");

  // eval
  auto* ev = app.add_subcommand("eval", "purity of predicted labels against ground truth");
  std::string pred_path, truth_path, pred_col = "label", truth_col = "label";
  ev->add_option("--pred", pred_path, "predicted labels CSV")->required();
  ev->add_option("--truth", truth_path, "ground-truth labels CSV")->required();
  ev->add_option("--pred-col", pred_col, "column in the prediction file");
  ev->add_option("--truth-col", truth_col, "column in the truth file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  auto opt_string = [](CLI::Option* o, const std::string& v) {
    return o->count() ? std::optional<std::string>(v) : std::nullopt;
  };

  try {
    if (*gen) return cmd_generate(gen_name, gen_src, gen_seed, opt_string(gen_out_opt, gen_out), out);

    if (*cluster) {
      const RunConfig cfg = resolve_config(cluster_flags.layers());
      return cmd_cluster(cfg, opt_string(cluster_out_opt, cluster_out), opt_string(cluster_labels_opt, cluster_labels),
                         out);
    }

    if (*sweep) {
      const RunConfig cfg = resolve_config(sweep_flags.layers());
      const Dataset data = make_dataset(cfg.dataset, cfg.options.seed);
      std::vector<std::uint64_t> seeds;
      for (std::size_t i = 0; i < sweep_seed_count; ++i) seeds.push_back(cfg.options.seed + i);
      const auto result = sweep_units(data, cfg.options, sweep_units_list, seeds);
      write_output(opt_string(sweep_out_opt, sweep_out), out,
                   [&](std::ostream& os) { write_sweep_csv(os, result, cfg.options.method, data.size()); });
      if (sweep_summary_opt->count()) {
        json rows = json::array();
        for (const auto& [m, s] : result.by_units)
          rows.push_back({{"M", m}, {"mean_purity", s.mean}, {"std_purity", s.std_dev}, {"runs", s.runs}});
        write_output(opt_string(sweep_summary_opt, sweep_summary), out, [&](std::ostream& os) {
          os << json{{"method", std::string(to_string(cfg.options.method))}, {"k", cfg.options.k}, {"N", data.size()},
                     {"rows", rows}}
                    .dump(2)
             << '\n';
        });
      }
      return 0;
    }

    if (*bench) {
      bench_cfg.axis = bench_axis == "units" ? ScalingAxis::units : ScalingAxis::points;
      if (!bench_grid.empty())
        bench_cfg.grid = bench_grid;
      else if (bench_cfg.axis == ScalingAxis::units)
        bench_cfg.grid = {25, 50, 100, 200, 400};
      bench_cfg.methods.clear();
      for (const auto& m : detail::split_list(bench_methods)) bench_cfg.methods.push_back(parse_method(m));
      json layer = json::object();
      if (bench_iter_opt->count()) detail::apply_iterations(layer, bench_iterations);
      for (const auto& s : bench_sets) layer.merge_patch(detail::dotted_assignment(s));
      bench_cfg.base = resolve_config({layer}).options;

      const auto table = benchmark_scaling(bench_cfg, [&](const TimingRow& r) {
        err << to_string(r.method) << " N=" << r.points << " M=" << r.units << " mean=" << r.mean_seconds << "s\n";
      });
      for (const auto& note : table.skipped) err << "notice: " << note << '\n';
      write_output(opt_string(bench_out_opt, bench_out), out,
                   [&](std::ostream& os) { write_timing_csv(os, table, bench_cfg.seed); });
      if (bench_summary_opt->count()) {
        json rows = json::array();
        for (const auto& r : table.rows)
          rows.push_back({{"method", std::string(to_string(r.method))}, {"N", r.points}, {"M", r.units},
                          {"mean_seconds", r.mean_seconds}, {"std_seconds", r.std_seconds},
                          {"repetitions", r.repetitions}});
        write_output(opt_string(bench_summary_opt, bench_summary), out, [&](std::ostream& os) {
          os << json{{"axis", bench_axis}, {"rows", rows}, {"skipped", table.skipped}}.dump(2) << '\n';
        });
      }
      return 0;
    }

    if (*ev) {
      const auto pred = read_label_column(pred_path, pred_col);
      const auto truth = read_label_column(truth_path, truth_col);
      out << to_json(purity(pred, truth)).dump(2) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace asc::cli
