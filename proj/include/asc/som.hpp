#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

#include "asc/dataset.hpp"
#include "asc/network.hpp"

namespace asc {

struct SomParams {
  std::size_t iterations = 100000;  // T
  std::size_t side = 10;            // l, M = l * l
  double rate = 0.05;               // gamma_0
  double width = 1.0;               // sigma_0
  std::uint64_t seed = 0;

  std::size_t units() const noexcept { return side * side; }

  void validate() const {
    require(side >= 2, "som: lattice side must be >= 2");
    require(rate > 0.0, "som: initial rate must be positive");
    require(width > 0.0, "som: initial width must be positive");
  }
};

/// z * (1 - t / T)
inline double linear_decay(double z, double t, double total) { return z * (1.0 - t / total); }

/// Lattice coordinate of the unit with 0-based `index` on an l x l grid,
/// ((index mod l) + 1) / l and (index / l + 1) / l.
inline std::array<double, 2> lattice_position(std::size_t index, std::size_t side) {
  const double l = static_cast<double>(side);
  return {static_cast<double>(index % side + 1) / l, static_cast<double>(index / side + 1) / l};
}

/// Neighborhood weight h_ci(t) for a unit at squared lattice distance `sq_dist` from the winner.
inline double som_neighborhood(const SomParams& p, double sq_dist, double t, double total) {
  const double width = linear_decay(p.width, t, total);
  return linear_decay(p.rate, t, total) * std::exp(-sq_dist / (2.0 * width * width));
}

/// Kohonen map on an l x l lattice. The returned network carries the lattice
/// 4-neighborhood as its edges.
inline Network som_fit(const Dataset& dataset, const SomParams& params) {
  params.validate();
  require(dataset.size() >= 1, "som: empty dataset");

  const auto& X = dataset.points();
  const std::size_t M = params.units();
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit_interval(0.0, 1.0);

  Matrix W(static_cast<Eigen::Index>(M), X.cols());
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    for (Eigen::Index j = 0; j < W.cols(); ++j) W(i, j) = unit_interval(rng);

  Matrix lattice(static_cast<Eigen::Index>(M), 2);
  for (std::size_t i = 0; i < M; ++i) {
    const auto p = lattice_position(i, params.side);
    lattice.row(static_cast<Eigen::Index>(i)) << p[0], p[1];
  }

  std::uniform_int_distribution<std::size_t> pick(0, dataset.size() - 1);
  const auto T = static_cast<double>(params.iterations);
  for (std::size_t t = 0; t < params.iterations; ++t) {
    const double tt = static_cast<double>(t);
    const auto x = X.row(static_cast<Eigen::Index>(pick(rng)));
    const auto c = static_cast<Eigen::Index>(nearest_row(W, x));
    for (Eigen::Index i = 0; i < W.rows(); ++i) {
      const double h = som_neighborhood(params, (lattice.row(i) - lattice.row(c)).squaredNorm(), tt, T);
      W.row(i) += h * (x - W.row(i));
    }
  }

  Network net(dataset.dim());
  for (Eigen::Index i = 0; i < W.rows(); ++i) net.add_unit(W.row(i).transpose());
  for (std::size_t i = 0; i < M; ++i) {
    if ((i + 1) % params.side != 0) net.connect(i, i + 1);
    if (i + params.side < M) net.connect(i, i + params.side);
  }
  return net;
}

}  // namespace asc
