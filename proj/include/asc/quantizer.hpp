#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "asc/dataset.hpp"
#include "asc/gng.hpp"
#include "asc/kmeans.hpp"
#include "asc/network.hpp"
#include "asc/neural_gas.hpp"
#include "asc/som.hpp"

namespace asc {

struct KMeansParams {
  std::size_t units = 100;  // M
  std::size_t max_iter = 300;
  std::uint64_t seed = 0;
};

/// k-means centroids as units; the network has no edges.
inline Network kmeans_fit(const Dataset& dataset, std::size_t units, std::size_t max_iter, std::uint64_t seed) {
  require(units >= 1 && units <= dataset.size(), "kmeans: need 1 <= units <= number of points");
  std::mt19937_64 rng(seed);
  const auto fit = kmeans(dataset.points(), units, max_iter, rng);
  Network net(dataset.dim());
  for (Eigen::Index c = 0; c < fit.centroids.rows(); ++c) net.add_unit(fit.centroids.row(c).transpose());
  return net;
}

inline Network kmeans_fit(const Dataset& dataset, const KMeansParams& params) {
  return kmeans_fit(dataset, params.units, params.max_iter, params.seed);
}

}  // namespace asc
