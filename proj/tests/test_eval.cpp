#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "asc/eval.hpp"

using namespace asc;
using Catch::Matchers::WithinAbs;

TEST_CASE("purity examples", "[eval]") {
  CHECK(purity(std::vector<int>{0, 0, 1, 1}, std::vector<int>{3, 3, 5, 5}).purity == 1.0);
  CHECK_THAT(purity(std::vector<int>{0, 0, 0, 1, 1, 1}, std::vector<int>{0, 0, 1, 1, 1, 1}).purity,
             WithinAbs(5.0 / 6.0, 1e-15));
  CHECK_THAT(purity(std::vector<int>(10, 0), std::vector<int>{0, 0, 0, 0, 0, 0, 0, 1, 1, 1}).purity,
             WithinAbs(0.7, 1e-15));
  // One cluster per point is trivially pure.
  CHECK(purity(std::vector<int>{0, 1, 2}, std::vector<int>{0, 0, 0}).purity == 1.0);
  CHECK_THROWS(purity(std::vector<int>{0, 1}, std::vector<int>{0}));
  CHECK_THROWS(purity(std::vector<int>{}, std::vector<int>{}));
}

TEST_CASE("purity report composition", "[eval]") {
  const auto r = purity(std::vector<std::size_t>{0, 0, 1, 1, 1}, std::vector<int>{2, 1, 1, 1, 0});
  REQUIRE(r.clusters.size() == 2);
  CHECK(r.clusters[0].size == 2);
  CHECK(r.clusters[0].majority_class == 1);  // tie between 1 and 2
  CHECK(r.clusters[1].majority_count == 2);
  CHECK(r.points == 5);
}

TEST_CASE("purity is invariant to relabeling predicted clusters", "[eval][property]") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> cls(0, 3), clu(0, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> truth(50), pred(50);
    for (auto& t : truth) t = cls(rng);
    for (auto& p : pred) p = clu(rng);
    std::vector<int> perm{0, 1, 2, 3, 4, 5};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> relabeled(50);
    std::transform(pred.begin(), pred.end(), relabeled.begin(), [&](int p) { return perm[static_cast<std::size_t>(p)] + 10; });
    const double p1 = purity(pred, truth).purity;
    CHECK(p1 == purity(relabeled, truth).purity);
    CHECK(p1 >= 0.25 - 1e-12);  // at least the share of the largest class within each cluster
    CHECK(p1 <= 1.0);
  }
}

TEST_CASE("summaries use the population deviation", "[eval]") {
  const auto s = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(s.mean == 2.5);
  CHECK_THAT(s.std_dev, WithinAbs(std::sqrt(1.25), 1e-15));
  CHECK(s.runs == 4);
  CHECK(summarize({}).runs == 0);
}

TEST_CASE("unit sweep", "[eval]") {
  const auto data = generate_blobs({150, 3, 2, 0.5, -10, 10, 1});
  AscOptions opt;
  opt.method = Method::kmeans;
  opt.k = 3;
  const auto sweep = sweep_units(data, opt, {3, 10}, {1, 1, 2});
  CHECK(sweep.runs.size() == 6);
  REQUIRE(sweep.by_units.size() == 2);
  CHECK(sweep.by_units[0].first == 3);
  CHECK(sweep.by_units[1].second.runs == 3);
  // Duplicate seeds give identical runs.
  CHECK(sweep.runs[0].purity == sweep.runs[1].purity);
  CHECK_THROWS(sweep_units(data, opt, {2}, {0}));

  std::ostringstream csv;
  write_sweep_csv(csv, sweep, Method::kmeans, data.size());
  const auto text = csv.str();
  CHECK(text.rfind("method,N,M,seed,metric,value\n", 0) == 0);
  CHECK(text.find("kmeans,150,10,all,mean_purity,") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 6 + 4);
}

TEST_CASE("scaling benchmark", "[eval]") {
  BenchmarkConfig cfg;
  cfg.grid = {200, 400};
  cfg.methods = {Method::gng, Method::kmeans, Method::sc};
  cfg.repetitions = 2;
  cfg.fixed_units = 20;
  cfg.base.gng.iterations = 2000;
  cfg.base.sc_max_points = 300;
  std::size_t reported = 0;
  const auto table = benchmark_scaling(cfg, [&](const TimingRow&) { ++reported; });
  CHECK(table.rows.size() == 5);
  CHECK(reported == 5);
  CHECK(table.skipped.size() == 1);
  for (const auto& row : table.rows) {
    CHECK(row.mean_seconds > 0.0);
    CHECK(row.repetitions == 2);
    CHECK(row.units == 20);
  }

  std::ostringstream csv;
  write_timing_csv(csv, table, 0);
  CHECK(csv.str().find("sc,200,20,0,mean_seconds,") != std::string::npos);

  cfg.grid = {400, 200};
  CHECK_THROWS(benchmark_scaling(cfg));
}
