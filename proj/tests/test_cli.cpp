#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "asc/cli.hpp"

namespace fs = std::filesystem;
using asc::json;
using Catch::Matchers::ContainsSubstring;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "asc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = asc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("asc_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json without_timings(json j) {
  j.erase("timings_ms");
  return j;
}

const std::vector<std::string> quick{"--iterations", "3000", "--units", "20"};

std::vector<std::string> with(std::vector<std::string> base, const std::vector<std::string>& more) {
  base.insert(base.end(), more.begin(), more.end());
  return base;
}

}  // namespace

TEST_CASE("generate then cluster from CSV matches the built-in generator", "[cli]") {
  const auto dir = scratch_dir();
  const auto csv = (dir / "moons.csv").string();
  REQUIRE(run_cli({"generate", "--dataset", "moons", "--n", "200", "--seed", "4", "--out", csv}).code == 0);

  const auto from_gen = run_cli(with({"cluster", "--dataset", "moons", "--n", "200", "--data-seed", "4", "--seed", "1"}, quick));
  const auto from_csv = run_cli(with({"cluster", "--csv", csv, "--label-col", "label", "--seed", "1"}, quick));
  REQUIRE(from_gen.code == 0);
  REQUIRE(from_csv.code == 0);
  const auto a = json::parse(from_gen.out), b = json::parse(from_csv.out);
  CHECK(a.at("point_labels") == b.at("point_labels"));
  CHECK(a.at("purity") == b.at("purity"));
}

TEST_CASE("cluster writes result and labels; eval reads them back", "[cli]") {
  const auto dir = scratch_dir();
  const auto result = (dir / "r.json").string(), labels = (dir / "l.csv").string();
  const auto r = run_cli(with({"cluster", "--dataset", "circles", "--n", "300", "--seed", "2", "--out", result,
                               "--labels-out", labels},
                              quick));
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("purity: "));
  const auto j = json::parse(slurp(result));
  for (const char* key : {"method", "k", "seed", "sigma", "n", "units", "pruned_units", "purity", "timings_ms", "point_labels"})
    CHECK(j.contains(key));
  CHECK(j.at("n") == 300);
  CHECK(slurp(labels).rfind("label\n", 0) == 0);

  const auto e = run_cli({"eval", "--pred", labels, "--truth", labels});
  REQUIRE(e.code == 0);
  CHECK_THAT(e.out, ContainsSubstring("1"));
}

TEST_CASE("results are deterministic apart from timings", "[cli]") {
  const auto args = with({"cluster", "--dataset", "blobs", "--k", "3", "--n", "300", "--seed", "9", "--method", "ng"}, quick);
  const auto a = run_cli(args), b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(without_timings(json::parse(a.out)) == without_timings(json::parse(b.out)));
}

TEST_CASE("command-line flags override config files", "[cli]") {
  const auto dir = scratch_dir();
  const auto cfg = (dir / "cfg.json").string();
  {
    std::ofstream f(cfg);
    f << R"({"method": "kmeans", "k": 3, "seed": 5, "units": 12, "sigma": 0.3,
             "dataset": {"generator": "blobs", "n": 150}})";
  }
  const auto from_file = json::parse(run_cli({"cluster", "--config", cfg}).out);
  CHECK(from_file.at("method") == "kmeans");
  CHECK(from_file.at("k") == 3);
  CHECK(from_file.at("sigma") == 0.3);
  CHECK(from_file.at("n") == 150);

  const auto overridden = json::parse(run_cli({"cluster", "--config", cfg, "--sigma", "0.2", "--k", "2"}).out);
  CHECK(overridden.at("sigma") == 0.2);
  CHECK(overridden.at("k") == 2);
  CHECK(overridden.at("method") == "kmeans");

  const auto via_set = json::parse(run_cli({"cluster", "--config", cfg, "--set", "sigma=0.4"}).out);
  CHECK(via_set.at("sigma") == 0.4);
}

TEST_CASE("bad input exits nonzero with a message", "[cli]") {
  const auto dir = scratch_dir();
  CHECK(run_cli({"cluster", "--bogus"}).code != 0);
  CHECK(run_cli({}).code != 0);

  const auto cfg = (dir / "bad.json").string();
  {
    std::ofstream f(cfg);
    f << R"({"method": "gng", "colour": "blue", "dataset": {"generator": "moons"}})";
  }
  const auto unknown_key = run_cli({"cluster", "--config", cfg});
  CHECK(unknown_key.code != 0);
  CHECK_THAT(unknown_key.err, ContainsSubstring("error:"));

  const auto bad_method = run_cli({"cluster", "--dataset", "moons", "--method", "dbscan"});
  CHECK(bad_method.code != 0);
  CHECK_THAT(bad_method.err, ContainsSubstring("unknown method"));

  const auto missing = run_cli({"cluster", "--csv", (dir / "nope.csv").string()});
  CHECK(missing.code != 0);
}

TEST_CASE("sweep and bench emit the metric table", "[cli]") {
  const auto sweep = run_cli({"sweep", "--dataset", "moons", "--n", "150", "--method", "kmeans", "--units-list", "5,10",
                              "--seeds", "2"});
  REQUIRE(sweep.code == 0);
  CHECK(sweep.out.rfind("method,N,M,seed,metric,value\n", 0) == 0);
  CHECK_THAT(sweep.out, ContainsSubstring("kmeans,150,10,all,std_purity,"));

  const auto bench = run_cli({"bench", "--grid", "200", "--methods", "kmeans,gng", "--reps", "1", "--fixed-units", "10",
                              "--iterations", "1000"});
  REQUIRE(bench.code == 0);
  CHECK_THAT(bench.out, ContainsSubstring("gng,200,10,0,mean_seconds,"));
}

TEST_CASE("the installed tool runs as a process", "[cli]") {
  const auto out = scratch_dir() / "proc.csv";
  const std::string cmd = std::string("\"") + ASC_CLI_PATH + "\" generate --dataset circles --n 50 --out \"" +
                          out.string() + "\"";
  CHECK(std::system(cmd.c_str()) == 0);
  const auto text = slurp(out);
  CHECK(text.rfind("x0,x1,label\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 51);
}
