// Acceptance suite: one PASS/FAIL line per criterion, exit code 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "asc/asc.hpp"

using namespace asc;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::uint64_t> seeds(std::size_t count) {
  std::vector<std::uint64_t> s(count);
  std::iota(s.begin(), s.end(), std::uint64_t{0});
  return s;
}

// Mean purity over seeds; each seed draws its own dataset and its own clustering.
double mean_over_seeds(const std::function<Dataset(std::uint64_t)>& make, const AscOptions& base, std::size_t count) {
  std::vector<double> values;
  for (auto seed : seeds(count)) {
    const Dataset data = make(seed);
    AscOptions opt = base;
    opt.seed = seed;
    values.push_back(purity(asc_cluster(data, opt).point_labels, *data.labels()).purity);
  }
  return summarize(values).mean;
}

AscOptions gng_options(std::size_t k) {
  AscOptions opt;
  opt.method = Method::gng;
  opt.k = k;
  opt.units = 100;
  return opt;
}

Verdict circles_gng() {
  const auto start = std::chrono::steady_clock::now();
  const double p = mean_over_seeds([](std::uint64_t s) { return generate_circles(1000, 0.05, 0.5, s); }, gng_options(2), 20);
  const double t = seconds_since(start);
  return {p >= 0.99 && t < 60.0, fmt("mean purity %.4f (>= 0.99), %.1f s (< 60 s)", p, t)};
}

Verdict moons_gng() {
  const double p = mean_over_seeds([](std::uint64_t s) { return generate_moons(1000, 0.05, s); }, gng_options(2), 20);
  return {p >= 0.97, fmt("mean purity %.4f (>= 0.97)", p)};
}

Verdict blobs_gng() {
  const double p = mean_over_seeds(
      [](std::uint64_t s) { return generate_blobs({1000, 3, 2, 1.0, -10.0, 10.0, s}); }, gng_options(3), 20);
  return {p >= 0.93, fmt("mean purity %.4f (>= 0.93)", p)};
}

Verdict circles_sc() {
  AscOptions opt;
  opt.method = Method::sc;
  opt.k = 2;
  opt.sigma = 0.1;
  const double p = mean_over_seeds([](std::uint64_t s) { return generate_circles(1000, 0.05, 0.5, s); }, opt, 20);
  return {p >= 0.99, fmt("mean purity %.4f (>= 0.99)", p)};
}

Verdict iris_units() {
  const Dataset iris = load_csv(std::string(ASC_TEST_DATA_DIR) + "/iris.csv", CsvOptions{"species", {}});
  const auto sweep = sweep_units(iris, gng_options(3), {30, 100}, seeds(20));
  const double p30 = sweep.by_units[0].second.mean, p100 = sweep.by_units[1].second.mean;
  return {p30 - p100 >= 0.1, fmt("M_max=30: %.4f, M_max=100: %.4f, gap %.4f (>= 0.1)", p30, p100, p30 - p100)};
}

Verdict scaling() {
  auto mean_seconds = [](Method m, std::size_t lo, std::size_t hi, std::size_t reps) {
    BenchmarkConfig cfg;
    cfg.grid = {lo, hi};
    cfg.methods = {m};
    cfg.repetitions = reps;
    cfg.fixed_units = 100;
    cfg.centers = 5;
    cfg.dim = 3;
    const auto table = benchmark_scaling(cfg);
    return table.rows[1].mean_seconds / table.rows[0].mean_seconds;
  };
  const double gng_ratio = mean_seconds(Method::gng, 10000, 100000, 3);
  const double sc_ratio = mean_seconds(Method::sc, 1000, 2000, 2);
  return {gng_ratio < 10.0 && sc_ratio >= 4.0,
          fmt("GNG t(1e5)/t(1e4) = %.2f (< 10), SC t(2000)/t(1000) = %.2f (>= 4)", gng_ratio, sc_ratio)};
}

Verdict eigensolver_oracles() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_rebuild = 0.0, worst_ortho = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 2 + trial % 19;
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) a(i, j) = a(j, i) = u(rng);
    for (auto solver : {EigenSolver::tridiagonal_qr, EigenSolver::jacobi}) {
      const auto e = symmetric_eig(a, solver);
      const Eigen::MatrixXd rebuilt = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
      worst_rebuild = std::max(worst_rebuild, (rebuilt - a).cwiseAbs().maxCoeff());
      worst_ortho = std::max(
          worst_ortho, (e.vectors.transpose() * e.vectors - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
    }
  }

  double lowest = std::numeric_limits<double>::infinity(), highest = -lowest;
  std::size_t graphs = 0, multiplicity_ok = 0;
  std::bernoulli_distribution coin(0.3);
  while (graphs < 50) {
    const std::size_t m = 3 + graphs % 10;
    Network net(2);
    for (std::size_t i = 0; i < m; ++i) {
      Vector w(2);
      w << u(rng), u(rng);
      net.add_unit(w);
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (coin(rng)) net.connect(i, j);
    if (net.edge_count() == 0) continue;
    ++graphs;
    const auto graph = similarity_from_network(prune_isolated(net).first, 0.5, true);
    const auto lap = normalized_laplacian(graph);
    std::size_t components = 0;
    connected_components(graph.A, &components);
    const auto e = symmetric_eig(lap.L_sym);
    lowest = std::min(lowest, e.values.minCoeff());
    highest = std::max(highest, e.values.maxCoeff());
    std::size_t zeros = 0;
    for (Eigen::Index i = 0; i < e.values.size(); ++i) zeros += std::abs(e.values(i)) < 1e-9;
    multiplicity_ok += zeros == components;
  }

  const bool pass = worst_rebuild <= 1e-8 && worst_ortho <= 1e-8 && lowest >= -1e-9 && highest <= 2.0 + 1e-9 &&
                    multiplicity_ok == graphs;
  return {pass, fmt("max rebuild err %.2e, max ortho err %.2e, ", worst_rebuild, worst_ortho) +
                    fmt("L_sym spectrum in [%.2e, %.6f], ", lowest, highest) +
                    std::to_string(multiplicity_ok) + "/" + std::to_string(graphs) + " graphs with multiplicity = components"};
}

Verdict property_suites() {
  std::vector<std::string> failed;

  {
    const Dataset data = normalize(generate_moons(500, 0.05, 1));
    GngParams p;
    p.iterations = 500;
    p.insertion_interval = 50;
    p.max_edge_age = 20;
    p.max_units = 20;
    bool ok = true;
    gng_fit(data, p, [&](std::size_t, const Network& net) {
      ok = ok && !net.invariant_violation() && net.unit_count() <= p.max_units;
    });
    if (!ok) failed.push_back("gng invariants");
  }

  if (exponential_schedule(1.0, 0.01, 0.0, 1e5) != 1.0 || exponential_schedule(1.0, 0.01, 1e5, 1e5) != 0.01 ||
      exponential_schedule(0.5, 0.005, 1e5, 1e5) != 0.005 || exponential_schedule(100.0, 300.0, 1e5, 1e5) != 300.0)
    failed.push_back("ng schedule endpoints");

  if (linear_decay(0.05, 1e5, 1e5) != 0.0 || linear_decay(1.0, 1e5, 1e5) != 0.0) failed.push_back("som decay at T");

  {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> label(0, 4);
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<int> truth(60), pred(60);
      for (auto& v : truth) v = label(rng);
      for (auto& v : pred) v = label(rng);
      std::vector<int> perm{0, 1, 2, 3, 4};
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<int> moved(pred.size());
      for (std::size_t i = 0; i < pred.size(); ++i) moved[i] = perm[static_cast<std::size_t>(pred[i])];
      ok = ok && purity(pred, truth).purity == purity(moved, truth).purity;
    }
    if (!ok) failed.push_back("purity permutation invariance");
  }

  {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
      const int m = 1 + trial % 12;
      Network net(2);
      for (int i = 0; i < m; ++i) {
        Vector w(2);
        w << u(rng), u(rng);
        net.add_unit(w);
      }
      std::vector<std::size_t> labels(static_cast<std::size_t>(m));
      std::iota(labels.begin(), labels.end(), std::size_t{0});
      Matrix X(30, 2);
      for (Eigen::Index i = 0; i < 30; ++i) X.row(i) << u(rng), u(rng);
      const auto got = assign_points(Dataset(X), net, labels);
      for (Eigen::Index i = 0; i < 30; ++i) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < labels.size(); ++c)
          if ((net.unit(c).w.transpose() - X.row(i)).squaredNorm() < (net.unit(best).w.transpose() - X.row(i)).squaredNorm())
            best = c;
        ok = ok && got[static_cast<std::size_t>(i)] == best;
      }
    }
    if (!ok) failed.push_back("assign_points oracle");
  }

  {
    const Dataset data = generate_circles(400, 0.05, 0.5, 3);
    bool ok = true;
    for (Method m : all_methods) {
      AscOptions opt;
      opt.method = m;
      opt.k = 2;
      opt.seed = 42;
      opt.units = 36;
      opt.gng.iterations = opt.ng.iterations = opt.som.iterations = opt.gng_no_topology.iterations = 20000;
      const auto a = asc_cluster(data, opt), b = asc_cluster(data, opt);
      ok = ok && a.point_labels == b.point_labels && a.unit_ids == b.unit_ids;
    }
    if (!ok) failed.push_back("end-to-end determinism");
  }

  std::string detail = "6 suites";
  for (const auto& f : failed) detail += "; failed: " + f;
  return {failed.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 circles, gng", circles_gng},
      {"2 moons, gng", moons_gng},
      {"3 blobs, gng", blobs_gng},
      {"4 circles, spectral baseline", circles_sc},
      {"5 iris unit-count sensitivity", iris_units},
      {"6 runtime scaling shape", scaling},
      {"7 eigensolver oracles", eigensolver_oracles},
      {"8 property suites", property_suites},
  };

  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s criterion %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
