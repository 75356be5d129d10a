#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <utility>

#include "asc/dataset.hpp"
#include "asc/network.hpp"

namespace asc {

struct GngParams {
  std::size_t iterations = 100000;    // T
  std::size_t max_units = 100;        // M_max
  std::size_t insertion_interval = 250;  // lambda
  double winner_rate = 0.1;           // epsilon_1
  double neighbor_rate = 0.01;        // epsilon_n
  int max_edge_age = 75;              // a_max
  double split_error_decay = 0.25;    // alpha
  double error_decay = 0.99;          // beta
  /// Accumulate the squared winner distance (true) or the plain distance.
  bool squared_error = true;
  std::uint64_t seed = 0;

  /// Preset used when the learned edges are discarded and the graph is fully connected.
  static GngParams no_topology() {
    GngParams p;
    p.insertion_interval = 350;
    p.winner_rate = 0.05;
    p.neighbor_rate = 0.01;
    p.max_edge_age = 100;
    p.split_error_decay = 0.5;
    p.error_decay = 0.999;
    return p;
  }

  void validate() const {
    require(max_units >= 2, "gng: max_units must be >= 2");
    require(insertion_interval >= 1, "gng: insertion_interval must be >= 1");
    require(neighbor_rate > 0.0 && neighbor_rate <= winner_rate && winner_rate < 1.0,
            "gng: require 0 < neighbor_rate <= winner_rate < 1");
    require(max_edge_age >= 1, "gng: max_edge_age must be >= 1");
    require(split_error_decay > 0.0 && split_error_decay < 1.0, "gng: split_error_decay must lie in (0, 1)");
    require(error_decay > 0.0 && error_decay < 1.0, "gng: error_decay must lie in (0, 1)");
  }
};

namespace detail {

struct WinnerPair {
  UnitId first = 0;
  UnitId second = 0;
  double first_sq_dist = 0.0;
};

// Linear scan over live units in ascending id order; strict comparisons keep
// the lowest id on ties.
template <typename Row>
WinnerPair two_nearest(const Network& net, const Row& x) {
  WinnerPair out;
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = d1;
  bool have_first = false;
  for (UnitId id = 0; id < net.id_bound(); ++id) {
    if (!net.contains(id)) continue;
    const double d = (net.unit_unchecked(id).w - x.transpose()).squaredNorm();
    if (!have_first || d < d1) {
      if (have_first) {
        d2 = d1;
        out.second = out.first;
      }
      d1 = d;
      out.first = id;
      have_first = true;
    } else if (d < d2) {
      d2 = d;
      out.second = id;
    }
  }
  out.first_sq_dist = d1;
  return out;
}

}  // namespace detail

/// Growing Neural Gas. `on_iteration(t, net)` runs after every completed iteration.
template <typename Observer>
Network gng_fit(const Dataset& dataset, const GngParams& params, Observer&& on_iteration) {
  params.validate();
  require(dataset.size() >= 2, "gng: dataset needs at least two points");

  const auto& X = dataset.points();
  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<std::size_t> pick(0, dataset.size() - 1);

  Network net(dataset.dim());
  {
    const std::size_t a = pick(rng);
    std::size_t b = std::uniform_int_distribution<std::size_t>(0, dataset.size() - 2)(rng);
    if (b >= a) ++b;
    const UnitId u = net.add_unit(X.row(static_cast<Eigen::Index>(a)).transpose());
    const UnitId v = net.add_unit(X.row(static_cast<Eigen::Index>(b)).transpose());
    net.connect(u, v, 0);
  }

  for (std::size_t t = 1; t <= params.iterations; ++t) {
    const auto x = X.row(static_cast<Eigen::Index>(pick(rng)));
    const auto winners = detail::two_nearest(net, x);
    const UnitId s1 = winners.first;
    const UnitId s2 = winners.second;

    Unit& winner = net.unit_unchecked(s1);
    winner.error += params.squared_error ? winners.first_sq_dist : std::sqrt(winners.first_sq_dist);
    winner.w += params.winner_rate * (x.transpose() - winner.w);
    for (const auto& [n, age] : net.neighbors(s1)) {
      Unit& neighbor = net.unit_unchecked(n);
      neighbor.w += params.neighbor_rate * (x.transpose() - neighbor.w);
    }

    net.connect(s1, s2, 0);
    net.age_edges_of(s1);
    for (UnitId n : net.drop_old_edges_of(s1, params.max_edge_age))
      if (net.degree(n) == 0) net.remove_unit(n);

    if (t % params.insertion_interval == 0 && net.unit_count() < params.max_units) {
      UnitId q = 0;
      double max_error = -1.0;
      for (UnitId id = 0; id < net.id_bound(); ++id) {
        if (net.contains(id) && net.unit_unchecked(id).error > max_error) {
          max_error = net.unit_unchecked(id).error;
          q = id;
        }
      }
      std::optional<UnitId> f;
      double max_neighbor_error = -1.0;
      for (const auto& [n, age] : net.neighbors(q)) {
        if (net.unit_unchecked(n).error > max_neighbor_error) {
          max_neighbor_error = net.unit_unchecked(n).error;
          f = n;
        }
      }
      if (f) {
        const Vector midpoint = 0.5 * (net.unit_unchecked(q).w + net.unit_unchecked(*f).w);
        const UnitId r = net.add_unit(midpoint);
        net.connect(r, q);
        net.connect(r, *f);
        net.disconnect(q, *f);
        net.unit_unchecked(q).error *= params.split_error_decay;
        net.unit_unchecked(*f).error *= params.split_error_decay;
        net.unit_unchecked(r).error = net.unit_unchecked(q).error;
      }
    }

    for (UnitId id = 0; id < net.id_bound(); ++id)
      if (net.contains(id)) net.unit_unchecked(id).error *= params.error_decay;

    on_iteration(t, std::as_const(net));
  }
  return net;
}

inline Network gng_fit(const Dataset& dataset, const GngParams& params) {
  return gng_fit(dataset, params, [](std::size_t, const Network&) {});
}

}  // namespace asc
