#pragma once

#include <cstddef>
#include <limits>
#include <random>
#include <vector>

#include "asc/core.hpp"

namespace asc {

struct KMeansResult {
  Matrix centroids;
  std::vector<std::size_t> labels;
  double inertia = 0.0;
  /// Inertia after every assignment step, first entry is the seeding assignment.
  std::vector<double> inertia_history;
  std::size_t iterations = 0;
};

namespace detail {

// Assigns every row to its nearest centroid (lowest index on ties); returns inertia.
inline double assign_rows(const Matrix& rows, const Matrix& centroids, std::vector<std::size_t>& labels,
                          std::vector<double>& sq_dist) {
  double inertia = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
      const double d = (rows.row(i) - centroids.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<std::size_t>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = best;
    sq_dist[static_cast<std::size_t>(i)] = best_d;
    inertia += best_d;
  }
  return inertia;
}

}  // namespace detail

/// k-means++ seeding: first center uniform, then D^2-weighted sampling.
inline Matrix kmeans_plus_plus(const Matrix& rows, std::size_t k, std::mt19937_64& rng) {
  const auto n = static_cast<std::size_t>(rows.rows());
  require(k >= 1 && k <= n, "k-means++: need 1 <= k <= number of rows");
  Matrix centers(static_cast<Eigen::Index>(k), rows.cols());
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::size_t first = pick(rng);
  centers.row(0) = rows.row(static_cast<Eigen::Index>(first));

  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i)
    d2[i] = (rows.row(static_cast<Eigen::Index>(i)) - centers.row(0)).squaredNorm();

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t chosen = 0;
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double acc = 0.0;
      chosen = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target && d2[i] > 0.0) {
          chosen = i;
          break;
        }
      }
      while (d2[chosen] == 0.0 && chosen > 0) --chosen;
    } else {
      chosen = pick(rng);
    }
    centers.row(static_cast<Eigen::Index>(c)) = rows.row(static_cast<Eigen::Index>(chosen));
    for (std::size_t i = 0; i < n; ++i)
      d2[i] = std::min(d2[i], (rows.row(static_cast<Eigen::Index>(i)) - centers.row(static_cast<Eigen::Index>(c))).squaredNorm());
  }
  return centers;
}

/// Lloyd iterations from the given centers until the assignment stops changing
/// or `max_iter` update steps have run. An empty cluster is reseeded at the row
/// farthest from its current centroid.
inline KMeansResult lloyd(const Matrix& rows, Matrix centers, std::size_t max_iter) {
  const auto n = static_cast<std::size_t>(rows.rows());
  const auto k = static_cast<std::size_t>(centers.rows());
  require(n >= 1 && k >= 1 && k <= n, "lloyd: need 1 <= k <= number of rows");

  KMeansResult result;
  result.labels.assign(n, 0);
  std::vector<double> sq_dist(n);
  double inertia = detail::assign_rows(rows, centers, result.labels, sq_dist);
  result.inertia_history.push_back(inertia);

  std::vector<std::size_t> next(n);
  std::vector<std::size_t> counts(k);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    centers.setZero();
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      centers.row(static_cast<Eigen::Index>(result.labels[i])) += rows.row(static_cast<Eigen::Index>(i));
      ++counts[result.labels[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centers.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(counts[c]);
        continue;
      }
      std::size_t far = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (sq_dist[i] > sq_dist[far]) far = i;
      centers.row(static_cast<Eigen::Index>(c)) = rows.row(static_cast<Eigen::Index>(far));
      sq_dist[far] = 0.0;
    }

    inertia = detail::assign_rows(rows, centers, next, sq_dist);
    result.inertia_history.push_back(inertia);
    ++result.iterations;
    if (next == result.labels) break;
    result.labels.swap(next);
  }
  result.centroids = std::move(centers);
  result.inertia = inertia;
  return result;
}

inline KMeansResult kmeans(const Matrix& rows, std::size_t k, std::size_t max_iter, std::mt19937_64& rng) {
  return lloyd(rows, kmeans_plus_plus(rows, k, rng), max_iter);
}

}  // namespace asc
