#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "asc/core.hpp"
#include "asc/network.hpp"

namespace asc {

/// Dense Gaussian similarity matrix over a network's units. Row/column r
/// corresponds to unit `ids[r]`.
struct SimilarityGraph {
  Matrix A;
  double sigma = 0.0;
  bool topology_used = false;
  std::vector<UnitId> ids;

  std::size_t size() const noexcept { return static_cast<std::size_t>(A.rows()); }
};

struct NormalizedLaplacian {
  Matrix L_sym;
  Vector degrees;
};

/// exp(-d^2 / (2 sigma^2))
inline double gaussian_similarity(double sq_dist, double sigma) {
  return std::exp(-sq_dist / (2.0 * sigma * sigma));
}

/// Fully connected Gaussian similarity between the rows of `points`; zero diagonal.
inline Matrix gaussian_affinity(const Matrix& points, double sigma) {
  require(sigma > 0.0, "sigma must be positive");
  const Eigen::Index n = points.rows();
  Matrix A = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d2 = (points.row(i) - points.row(j)).squaredNorm();
      const double a = gaussian_similarity(d2, sigma);
      A(i, j) = a;
      A(j, i) = a;
    }
  }
  return A;
}

/// Similarity between units. With `use_topology`, only pairs joined by an edge
/// get a nonzero entry.
inline SimilarityGraph similarity_from_network(const Network& network, double sigma, bool use_topology) {
  require(sigma > 0.0, "sigma must be positive");
  require(network.unit_count() >= 2, "similarity needs at least two units");

  SimilarityGraph g;
  g.sigma = sigma;
  g.topology_used = use_topology;
  g.ids = network.ids();
  if (!use_topology) {
    g.A = gaussian_affinity(network.weights(), sigma);
    return g;
  }

  const auto m = static_cast<Eigen::Index>(g.ids.size());
  std::vector<Eigen::Index> row_of(network.id_bound(), -1);
  for (Eigen::Index r = 0; r < m; ++r) row_of[g.ids[static_cast<std::size_t>(r)]] = r;
  g.A = Matrix::Zero(m, m);
  for (const Edge& e : network.edges()) {
    const double d2 = (network.unit(e.a).w - network.unit(e.b).w).squaredNorm();
    const double a = gaussian_similarity(d2, sigma);
    g.A(row_of[e.a], row_of[e.b]) = a;
    g.A(row_of[e.b], row_of[e.a]) = a;
  }
  return g;
}

/// Removes units without edges; returns the pruned copy and the removed ids.
inline std::pair<Network, std::vector<UnitId>> prune_isolated(const Network& network) {
  Network pruned = network;
  std::vector<UnitId> removed;
  for (UnitId id : network.ids()) {
    if (network.degree(id) == 0) {
      pruned.remove_unit(id);
      removed.push_back(id);
    }
  }
  require(network.unit_count() == 0 || pruned.unit_count() > 0, "topology graph empty");
  return {std::move(pruned), std::move(removed)};
}

/// L_sym = D^{-1/2} (D - A) D^{-1/2}, d_i = sum_j a_ij.
inline NormalizedLaplacian normalized_laplacian(const Matrix& A) {
  require(A.rows() == A.cols(), "similarity matrix must be square");
  NormalizedLaplacian out;
  out.degrees = A.rowwise().sum();
  for (Eigen::Index i = 0; i < out.degrees.size(); ++i)
    require(out.degrees(i) > 0.0, "isolated unit; prune before Laplacian");

  const Vector inv_sqrt = out.degrees.array().rsqrt();
  const Eigen::Index n = A.rows();
  out.L_sym.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out.L_sym(i, j) = ((i == j) ? out.degrees(i) : 0.0) * inv_sqrt(i) * inv_sqrt(j) -
                        A(i, j) * inv_sqrt(i) * inv_sqrt(j);
  return out;
}

inline NormalizedLaplacian normalized_laplacian(const SimilarityGraph& graph) {
  return normalized_laplacian(graph.A);
}

/// Component index per row of a symmetric adjacency (nonzero = connected).
inline std::vector<std::size_t> connected_components(const Matrix& A, std::size_t* count = nullptr) {
  const auto n = static_cast<std::size_t>(A.rows());
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(n, unset);
  std::size_t next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != unset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (comp[v] == unset && A(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) != 0.0) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

}  // namespace asc
