#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "asc/dataset.hpp"
#include "asc/network.hpp"

namespace asc {

struct NgParams {
  std::size_t iterations = 100000;  // T
  std::size_t units = 100;          // M
  double range_initial = 1.0;       // lambda_i
  double range_final = 0.01;        // lambda_f
  double rate_initial = 0.5;        // epsilon_i
  double rate_final = 0.005;        // epsilon_f
  double max_age_initial = 100.0;   // a_max_i
  double max_age_final = 300.0;     // a_max_f
  std::uint64_t seed = 0;

  void validate() const {
    require(units >= 2, "ng: units must be >= 2");
    require(range_initial > 0 && range_final > 0 && rate_initial > 0 && rate_final > 0 &&
                max_age_initial > 0 && max_age_final > 0,
            "ng: schedule endpoints must be positive");
  }
};

/// g(t) = g_i * (g_f / g_i)^(t / T).
inline double exponential_schedule(double initial, double final, double t, double total) {
  if (total <= 0.0) return initial;
  if (t == total) return final;
  return initial * std::pow(final / initial, t / total);
}

/// Adaptation factor epsilon * exp(-rank / lambda) for the unit at `rank`.
inline double ng_step_size(double rate, double range, std::size_t rank) {
  return rate * std::exp(-static_cast<double>(rank) / range);
}

/// Rank of every entry when sorted ascending; ties are ranked by index.
inline std::vector<std::size_t> neighborhood_ranks(const std::vector<double>& distances) {
  std::vector<std::size_t> order(distances.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return distances[a] < distances[b] || (distances[a] == distances[b] && a < b);
  });
  std::vector<std::size_t> ranks(distances.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = r;
  return ranks;
}

/// Neural Gas with competitive Hebbian edge learning. Units are seeded at
/// distinct data points; edges only age and expire around the winner.
inline Network ng_fit(const Dataset& dataset, const NgParams& params) {
  params.validate();
  require(params.units <= dataset.size(), "ng: more units than data points");

  const auto& X = dataset.points();
  const auto M = static_cast<Eigen::Index>(params.units);
  std::mt19937_64 rng(params.seed);

  std::vector<std::size_t> pool(dataset.size());
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Matrix W(M, X.cols());
  for (Eigen::Index i = 0; i < M; ++i) {
    const auto j = std::uniform_int_distribution<std::size_t>(static_cast<std::size_t>(i), pool.size() - 1)(rng);
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    W.row(i) = X.row(static_cast<Eigen::Index>(pool[static_cast<std::size_t>(i)]));
  }

  Network net(dataset.dim());
  for (Eigen::Index i = 0; i < M; ++i) net.add_unit(W.row(i).transpose());

  std::uniform_int_distribution<std::size_t> pick(0, dataset.size() - 1);
  const auto T = static_cast<double>(params.iterations);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(M));
  Vector dist(M);
  for (std::size_t t = 0; t < params.iterations; ++t) {
    const double tt = static_cast<double>(t);
    const double rate = exponential_schedule(params.rate_initial, params.rate_final, tt, T);
    const double range = exponential_schedule(params.range_initial, params.range_final, tt, T);
    const double max_age = exponential_schedule(params.max_age_initial, params.max_age_final, tt, T);

    const auto x = X.row(static_cast<Eigen::Index>(pick(rng)));
    dist = (W.rowwise() - x).rowwise().squaredNorm();
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return dist(a) < dist(b) || (dist(a) == dist(b) && a < b);
    });

    for (std::size_t k = 0; k < order.size(); ++k) {
      const double h = ng_step_size(rate, range, k);
      if (h == 0.0) break;
      W.row(order[k]) += h * (x - W.row(order[k]));
    }

    const auto i0 = static_cast<UnitId>(order[0]);
    const auto i1 = static_cast<UnitId>(order[1]);
    net.connect(i0, i1, 0);
    net.age_edges_of(i0);
    net.drop_old_edges_of(i0, max_age);
  }

  for (Eigen::Index i = 0; i < M; ++i) net.unit_unchecked(static_cast<UnitId>(i)).w = W.row(i).transpose();
  return net;
}

}  // namespace asc
