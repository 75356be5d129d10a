#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "asc/dataset.hpp"
#include "asc/pipeline.hpp"

namespace asc {

struct ClusterComposition {
  std::size_t cluster = 0;
  std::size_t size = 0;
  int majority_class = 0;
  std::size_t majority_count = 0;
  /// class id -> count (n_i^j)
  std::map<int, std::size_t> class_counts;
};

struct PurityReport {
  double purity = 0.0;
  std::size_t points = 0;
  std::vector<ClusterComposition> clusters;
};

/// Purity = (1/N) sum_i max_j n_i^j. Majority ties resolve to the lowest class id.
template <typename Pred, typename Truth>
PurityReport purity(const std::vector<Pred>& pred, const std::vector<Truth>& truth) {
  require(pred.size() == truth.size(), "purity: prediction and truth lengths differ");
  require(!pred.empty(), "purity: empty label vectors");

  std::map<Pred, std::map<int, std::size_t>> table;
  for (std::size_t i = 0; i < pred.size(); ++i) ++table[pred[i]][static_cast<int>(truth[i])];

  PurityReport report;
  report.points = pred.size();
  std::size_t pure = 0;
  for (auto& [cluster, counts] : table) {
    ClusterComposition c;
    c.cluster = static_cast<std::size_t>(cluster);
    for (const auto& [cls, n] : counts) {
      c.size += n;
      if (n > c.majority_count) {
        c.majority_count = n;
        c.majority_class = cls;
      }
    }
    c.class_counts = std::move(counts);
    pure += c.majority_count;
    report.clusters.push_back(std::move(c));
  }
  report.purity = static_cast<double>(pure) / static_cast<double>(pred.size());
  return report;
}

struct Summary {
  double mean = 0.0;
  double std_dev = 0.0;  // population standard deviation
  std::size_t runs = 0;
};

inline Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.runs = values.size();
  if (values.empty()) return s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.std_dev = std::sqrt(var / static_cast<double>(values.size()));
  return s;
}

/// Mean purity of asc_cluster over the given seeds.
inline Summary mean_purity(const Dataset& dataset, const AscOptions& options, const std::vector<std::uint64_t>& seeds) {
  require(dataset.has_labels(), "purity requires ground-truth labels");
  std::vector<double> values;
  for (auto seed : seeds) {
    AscOptions opt = options;
    opt.seed = seed;
    values.push_back(purity(asc_cluster(dataset, opt).point_labels, *dataset.labels()).purity);
  }
  return summarize(values);
}

struct SweepRow {
  std::size_t units = 0;
  std::uint64_t seed = 0;
  double purity = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> runs;
  /// units -> mean/std over seeds, in the order of the requested unit counts.
  std::vector<std::pair<std::size_t, Summary>> by_units;
};

/// Purity as a function of the unit budget (M, or M_max for gng).
inline SweepResult sweep_units(const Dataset& dataset, const AscOptions& options,
                               const std::vector<std::size_t>& unit_counts,
                               const std::vector<std::uint64_t>& seeds) {
  require(dataset.has_labels(), "sweep requires ground-truth labels");
  SweepResult out;
  for (std::size_t m : unit_counts) {
    require(m >= options.k, "every unit count must be >= k");
    std::vector<double> values;
    for (auto seed : seeds) {
      AscOptions opt = options;
      opt.units = m;
      opt.seed = seed;
      const double p = purity(asc_cluster(dataset, opt).point_labels, *dataset.labels()).purity;
      out.runs.push_back({m, seed, p});
      values.push_back(p);
    }
    out.by_units.emplace_back(m, summarize(values));
  }
  return out;
}

enum class ScalingAxis { points, units };

struct BenchmarkConfig {
  ScalingAxis axis = ScalingAxis::points;
  std::vector<std::size_t> grid{1000, 10000, 100000};
  std::vector<Method> methods{Method::gng, Method::ng, Method::som, Method::kmeans, Method::sc};
  std::size_t repetitions = 3;
  std::uint64_t seed = 0;
  /// Held fixed while the other axis varies.
  std::size_t fixed_units = 100;
  std::size_t fixed_points = 100000;
  /// Blobs used for timing: 5 centers in 3 dimensions.
  std::size_t centers = 5;
  std::size_t dim = 3;
  /// Method parameters; method, units, seed and k are set per run.
  AscOptions base;
};

struct TimingRow {
  Method method = Method::gng;
  std::size_t points = 0;
  std::size_t units = 0;
  double mean_seconds = 0.0;
  double std_seconds = 0.0;
  std::size_t repetitions = 0;
};

struct TimingTable {
  std::vector<TimingRow> rows;
  /// Human-readable notes for configurations that were not run.
  std::vector<std::string> skipped;
};

/// Times full clustering runs on generated blobs. Dataset generation is not timed.
template <typename Progress>
TimingTable benchmark_scaling(const BenchmarkConfig& cfg, Progress&& progress) {
  require(cfg.repetitions >= 1, "repetitions must be >= 1");
  require(!cfg.grid.empty(), "empty benchmark grid");
  require(std::is_sorted(cfg.grid.begin(), cfg.grid.end()), "benchmark grid must be ascending");

  TimingTable table;
  for (std::size_t value : cfg.grid) {
    const std::size_t n = cfg.axis == ScalingAxis::points ? value : cfg.fixed_points;
    const std::size_t m = cfg.axis == ScalingAxis::units ? value : cfg.fixed_units;
    const Dataset data = generate_blobs({n, cfg.centers, cfg.dim, 1.0, -10.0, 10.0, cfg.seed});
    for (Method method : cfg.methods) {
      if (method == Method::sc && n > cfg.base.sc_max_points) {
        table.skipped.push_back("sc skipped at N=" + std::to_string(n) + " (cap " +
                                std::to_string(cfg.base.sc_max_points) + ")");
        continue;
      }
      std::vector<double> seconds;
      for (std::size_t r = 0; r < cfg.repetitions; ++r) {
        AscOptions opt = cfg.base;
        opt.method = method;
        opt.k = cfg.centers;
        opt.units = m;
        opt.seed = derive_seed(cfg.seed, r);
        const auto start = std::chrono::steady_clock::now();
        const auto result = asc_cluster(data, opt);
        seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        static_cast<void>(result);
      }
      const Summary s = summarize(seconds);
      TimingRow row{method, n, m, s.mean, s.std_dev, cfg.repetitions};
      progress(row);
      table.rows.push_back(row);
    }
  }
  return table;
}

inline TimingTable benchmark_scaling(const BenchmarkConfig& cfg) {
  return benchmark_scaling(cfg, [](const TimingRow&) {});
}

/// Header shared by all metric tables.
inline constexpr const char* metric_csv_header = "method,N,M,seed,metric,value";

/// One mean_seconds row per (grid value, method).
inline void write_timing_csv(std::ostream& out, const TimingTable& table, std::uint64_t seed) {
  out << metric_csv_header << '\n';
  out.precision(17);
  for (const auto& row : table.rows)
    out << to_string(row.method) << ',' << row.points << ',' << row.units << ',' << seed << ",mean_seconds,"
        << row.mean_seconds << '\n';
}

/// Per-seed purity rows followed by per-M mean_purity and std_purity rows.
inline void write_sweep_csv(std::ostream& out, const SweepResult& sweep, Method method, std::size_t points) {
  out << metric_csv_header << '\n';
  out.precision(17);
  for (const auto& r : sweep.runs)
    out << to_string(method) << ',' << points << ',' << r.units << ',' << r.seed << ",purity," << r.purity << '\n';
  for (const auto& [m, s] : sweep.by_units) {
    out << to_string(method) << ',' << points << ',' << m << ",all,mean_purity," << s.mean << '\n';
    out << to_string(method) << ',' << points << ',' << m << ",all,std_purity," << s.std_dev << '\n';
  }
}

}  // namespace asc
