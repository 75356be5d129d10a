#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asc/dataset.hpp"
#include "asc/graph.hpp"
#include "asc/network.hpp"
#include "asc/quantizer.hpp"
#include "asc/spectral.hpp"

namespace asc {

enum class Method { gng, ng, som, kmeans, gng_no_topology, sc };

inline constexpr std::array<Method, 6> all_methods{Method::gng,    Method::ng,
                                                   Method::som,    Method::kmeans,
                                                   Method::gng_no_topology, Method::sc};

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::gng: return "gng";
    case Method::ng: return "ng";
    case Method::som: return "som";
    case Method::kmeans: return "kmeans";
    case Method::gng_no_topology: return "gng_no_topology";
    case Method::sc: return "sc";
  }
  return "?";
}

inline Method parse_method(std::string_view name) {
  for (Method m : all_methods)
    if (to_string(m) == name) return m;
  throw Error("unknown method '" + std::string(name) + "'");
}

/// Gaussian width used for each method unless overridden.
inline double default_sigma(Method m) {
  switch (m) {
    case Method::gng: return 0.25;
    case Method::ng: return 0.25;
    case Method::som: return 0.5;
    case Method::kmeans: return 0.1;
    case Method::gng_no_topology: return 0.5;
    case Method::sc: return 0.1;
  }
  return 0.1;
}

/// Wall-clock milliseconds per phase.
struct PhaseTimings {
  double quantize = 0.0;
  double similarity = 0.0;
  double eigen = 0.0;
  double kmeans = 0.0;
  double assign = 0.0;

  double total() const noexcept { return quantize + similarity + eigen + kmeans + assign; }
};

struct AscOptions {
  Method method = Method::gng;
  std::size_t k = 2;
  /// Master seed; quantizer and row k-means streams are derived from it, so the
  /// `seed` members of the per-method parameter blocks are ignored here.
  std::uint64_t seed = 0;

  GngParams gng;
  GngParams gng_no_topology = GngParams::no_topology();
  NgParams ng;
  SomParams som;
  KMeansParams kmeans;

  std::optional<double> sigma;
  /// Overrides M (ng, kmeans), M_max (gng variants) or the lattice side (som,
  /// rounded from sqrt(units)).
  std::optional<std::size_t> units;
  bool normalize = true;
  /// Mask the similarity matrix with learned edges for gng, ng and som.
  bool use_topology = true;
  bool row_normalize = false;
  std::size_t restarts = 10;
  std::size_t kmeans_max_iter = 300;
  EigenSolver solver = EigenSolver::tridiagonal_qr;
  /// Largest point count accepted by the plain spectral baseline.
  std::size_t sc_max_points = 5000;

  double effective_sigma() const { return sigma.value_or(default_sigma(method)); }

  bool topology_masked() const {
    return use_topology && (method == Method::gng || method == Method::ng || method == Method::som);
  }
};

struct ClusteringResult {
  Method method = Method::gng;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  double sigma = 0.0;
  std::vector<std::size_t> point_labels;
  /// Labels of the units that took part in spectral clustering, aligned with unit_ids.
  std::vector<std::size_t> unit_labels;
  std::vector<UnitId> unit_ids;
  /// Units dropped as isolated before the Laplacian.
  std::vector<UnitId> pruned_units;
  PhaseTimings timings;
};

namespace detail {

class Stopwatch {
public:
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
    return ms;
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::size_t side_for_units(std::size_t units) {
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(units)))));
}

}  // namespace detail

/// Labels every point with the cluster of its nearest unit; `unit_labels` is
/// aligned with network.ids(). Ties go to the lowest unit id.
inline std::vector<std::size_t> assign_points(const Dataset& dataset, const Network& network,
                                              const std::vector<std::size_t>& unit_labels) {
  require(network.unit_count() > 0, "cannot assign points to an empty network");
  require(unit_labels.size() == network.unit_count(), "unit label count does not match unit count");
  require(dataset.dim() == network.dim(), "dataset and network dimensions differ");
  const Matrix W = network.weights();
  std::vector<std::size_t> out(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) out[i] = unit_labels[nearest_row(W, dataset.point(i))];
  return out;
}

/// Builds the quantizer network for `opt.method` (not sc).
inline Network quantize(const Dataset& data, const AscOptions& opt) {
  const std::uint64_t qseed = derive_seed(opt.seed, 0);
  switch (opt.method) {
    case Method::gng:
    case Method::gng_no_topology: {
      GngParams p = opt.method == Method::gng ? opt.gng : opt.gng_no_topology;
      if (opt.units) p.max_units = *opt.units;
      p.seed = qseed;
      return gng_fit(data, p);
    }
    case Method::ng: {
      NgParams p = opt.ng;
      if (opt.units) p.units = *opt.units;
      p.seed = qseed;
      return ng_fit(data, p);
    }
    case Method::som: {
      SomParams p = opt.som;
      if (opt.units) p.side = detail::side_for_units(*opt.units);
      p.seed = qseed;
      return som_fit(data, p);
    }
    case Method::kmeans: {
      KMeansParams p = opt.kmeans;
      if (opt.units) p.units = *opt.units;
      p.seed = qseed;
      return kmeans_fit(data, p);
    }
    case Method::sc: break;
  }
  throw Error("method sc has no quantizer");
}

inline RowClusteringOptions row_clustering_options(const AscOptions& opt) {
  return RowClusteringOptions{opt.restarts, opt.kmeans_max_iter, derive_seed(opt.seed, 1)};
}

/// Plain spectral clustering over all points.
inline ClusteringResult sc_cluster(const Dataset& dataset, const AscOptions& options) {
  AscOptions opt = options;
  opt.method = Method::sc;
  require(dataset.size() >= 1, "empty dataset");
  require(dataset.size() <= opt.sc_max_points,
          "spectral clustering is capped at " + std::to_string(opt.sc_max_points) + " points (got " +
              std::to_string(dataset.size()) + ")");
  require(opt.k >= 1 && opt.k <= dataset.size(), "need 1 <= k <= number of points");
  const double sigma = opt.effective_sigma();
  require(sigma > 0.0, "sigma must be positive");

  ClusteringResult result;
  result.method = Method::sc;
  result.k = opt.k;
  result.seed = opt.seed;
  result.sigma = sigma;

  detail::Stopwatch clock;
  const Dataset data = opt.normalize ? normalize(dataset) : dataset;
  const auto lap = normalized_laplacian(gaussian_affinity(data.points(), sigma));
  result.timings.similarity = clock.lap_ms();
  auto embedding = spectral_embed(lap, opt.k, opt.solver);
  if (opt.row_normalize) embedding.U = normalize_rows(embedding.U);
  result.timings.eigen = clock.lap_ms();
  result.point_labels = kmeans_rows(embedding.U, opt.k, row_clustering_options(opt)).labels;
  result.timings.kmeans = clock.lap_ms();
  return result;
}

inline ClusteringResult sc_cluster(const Dataset& dataset, std::size_t k, double sigma, std::uint64_t seed) {
  AscOptions opt;
  opt.method = Method::sc;
  opt.k = k;
  opt.sigma = sigma;
  opt.seed = seed;
  return sc_cluster(dataset, opt);
}

/// Approximate spectral clustering: quantize, cluster the units spectrally,
/// then label each point by its nearest unit. Method sc dispatches to sc_cluster.
inline ClusteringResult asc_cluster(const Dataset& dataset, const AscOptions& opt) {
  if (opt.method == Method::sc) return sc_cluster(dataset, opt);
  require(opt.k >= 1, "k must be >= 1");
  require(dataset.size() >= opt.k, "dataset has fewer points than clusters");
  const double sigma = opt.effective_sigma();
  require(sigma > 0.0, "sigma must be positive");

  ClusteringResult result;
  result.method = opt.method;
  result.k = opt.k;
  result.seed = opt.seed;
  result.sigma = sigma;

  detail::Stopwatch clock;
  const Dataset data = opt.normalize ? normalize(dataset) : dataset;
  Network network = quantize(data, opt);
  result.timings.quantize = clock.lap_ms();

  const bool masked = opt.topology_masked();
  if (masked) {
    auto [pruned, removed] = prune_isolated(network);
    network = std::move(pruned);
    result.pruned_units = std::move(removed);
  }
  require(network.unit_count() >= opt.k, "too few units for k clusters");
  result.unit_ids = network.ids();

  if (opt.k == 1 || network.unit_count() == 1) {
    result.unit_labels.assign(network.unit_count(), 0);
  } else {
    const auto graph = similarity_from_network(network, sigma, masked);
    const auto lap = normalized_laplacian(graph);
    result.timings.similarity = clock.lap_ms();
    auto embedding = spectral_embed(lap, opt.k, opt.solver);
    if (opt.row_normalize) embedding.U = normalize_rows(embedding.U);
    result.timings.eigen = clock.lap_ms();
    result.unit_labels = kmeans_rows(embedding.U, opt.k, row_clustering_options(opt)).labels;
    result.timings.kmeans = clock.lap_ms();
  }

  result.point_labels = assign_points(data, network, result.unit_labels);
  result.timings.assign = clock.lap_ms();
  return result;
}

}  // namespace asc
