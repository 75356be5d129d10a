#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "asc/core.hpp"
#include "asc/graph.hpp"
#include "asc/kmeans.hpp"

namespace asc {

/// Eigenvalues ascending; column i of `vectors` belongs to `values(i)`.
struct EigenDecomposition {
  Vector values;
  Eigen::MatrixXd vectors;
};

enum class EigenSolver {
  tridiagonal_qr,  // Householder reduction + implicit QR (Eigen)
  jacobi,          // cyclic Jacobi rotations
};

namespace detail {

inline void require_symmetric(const Eigen::MatrixXd& m) {
  require(m.rows() == m.cols(), "matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  require((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * scale, "matrix is not symmetric");
}

// Sorts eigenpairs ascending (stable) and flips each vector so that its first
// component with magnitude above 1e-12 is positive.
inline EigenDecomposition canonicalize(const Vector& values, const Eigen::MatrixXd& vectors) {
  const auto n = static_cast<std::size_t>(values.size());
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });

  EigenDecomposition out;
  out.values.resize(values.size());
  out.vectors.resize(vectors.rows(), vectors.cols());
  for (Eigen::Index c = 0; c < values.size(); ++c) {
    const Eigen::Index src = order[static_cast<std::size_t>(c)];
    out.values(c) = values(src);
    out.vectors.col(c) = vectors.col(src);
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double v = out.vectors(r, c);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) out.vectors.col(c) *= -1.0;
        break;
      }
    }
  }
  return out;
}

inline EigenDecomposition jacobi_eigen(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double frob = a.norm();
  const double tol = std::max(frob, 1e-300) * 1e-15;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) <= tol) break;

    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle chosen to annihilate a(p, q); smaller root of t^2 + 2 theta t - 1 = 0.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  return canonicalize(a.diagonal(), v);
}

}  // namespace detail

/// Full eigendecomposition of a symmetric matrix.
inline EigenDecomposition symmetric_eig(const Eigen::MatrixXd& matrix,
                                        EigenSolver solver = EigenSolver::tridiagonal_qr) {
  detail::require_symmetric(matrix);
  if (matrix.rows() == 0) return {};
  const Eigen::MatrixXd sym = 0.5 * (matrix + matrix.transpose());
  if (solver == EigenSolver::jacobi) return detail::jacobi_eigen(sym);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::ComputeEigenvectors);
  require(es.info() == Eigen::Success, "eigendecomposition did not converge");
  return detail::canonicalize(es.eigenvalues(), es.eigenvectors());
}

/// Rows of the first k eigenvectors of L_sym; row r is the coordinate of unit r.
struct SpectralEmbedding {
  Matrix U;
  Vector eigenvalues;  // the k smallest, ascending
};

inline SpectralEmbedding spectral_embed(const NormalizedLaplacian& lap, std::size_t k,
                                        EigenSolver solver = EigenSolver::tridiagonal_qr) {
  const auto m = static_cast<std::size_t>(lap.L_sym.rows());
  require(k >= 1, "k must be >= 1");
  require(k <= m, "k exceeds the number of units");
  const auto eig = symmetric_eig(lap.L_sym, solver);
  SpectralEmbedding out;
  out.U = eig.vectors.leftCols(static_cast<Eigen::Index>(k));
  out.eigenvalues = eig.values.head(static_cast<Eigen::Index>(k));
  return out;
}

/// Scales every row to unit length (rows of zero norm are left alone).
inline Matrix normalize_rows(const Matrix& U) {
  Matrix out = U;
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    const double norm = out.row(r).norm();
    if (norm > 0.0) out.row(r) /= norm;
  }
  return out;
}

struct RowClusteringOptions {
  std::size_t restarts = 10;
  std::size_t max_iter = 300;
  std::uint64_t seed = 0;
};

struct RowClustering {
  std::vector<std::size_t> labels;
  double inertia = 0.0;
  /// Per-restart inertia after each assignment step; empty on the distinct-rows shortcut.
  std::vector<std::vector<double>> restart_histories;
};

/// k-means over embedding rows, best of `restarts` k-means++ starts by inertia.
/// Restart r draws from its own stream derived from the seed.
inline RowClustering kmeans_rows(const Matrix& rows, std::size_t k, const RowClusteringOptions& opt = {}) {
  const auto m = static_cast<std::size_t>(rows.rows());
  require(k >= 1, "k must be >= 1");
  require(k <= m, "k exceeds the number of rows");
  require(opt.restarts >= 1, "restarts must be >= 1");

  // Distinct rows in first-appearance order.
  std::map<std::vector<double>, std::size_t> distinct;
  std::vector<std::size_t> distinct_label(m);
  for (std::size_t r = 0; r < m && distinct.size() <= k; ++r) {
    const auto row = rows.row(static_cast<Eigen::Index>(r));
    std::vector<double> key(row.data(), row.data() + row.size());
    const auto [it, inserted] = distinct.try_emplace(std::move(key), distinct.size());
    distinct_label[r] = it->second;
  }
  require(distinct.size() >= k, "degenerate embedding");

  RowClustering best;
  if (distinct.size() == k) {
    best.labels = std::move(distinct_label);
    return best;
  }

  bool have_best = false;
  for (std::size_t r = 0; r < opt.restarts; ++r) {
    std::mt19937_64 rng(derive_seed(opt.seed, r));
    auto fit = kmeans(rows, k, opt.max_iter, rng);
    best.restart_histories.push_back(fit.inertia_history);
    if (!have_best || fit.inertia < best.inertia) {
      best.inertia = fit.inertia;
      best.labels = std::move(fit.labels);
      have_best = true;
    }
  }
  return best;
}

}  // namespace asc
