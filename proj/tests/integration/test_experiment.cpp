#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "eel/experiment.hpp"

using namespace eel;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("eel_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_config(const std::string& text, const std::string& out_dir,
               std::string* error = nullptr) {
  Experiment exp(ConfigFile::parse(text));
  exp.set_out_dir(out_dir);
  int rc = exp.run();
  if (error) *error = exp.error_message();
  return rc;
}

}  // namespace

TEST_CASE("experiment: scenario validation at construction") {
  CHECK_THROWS_WITH_AS(
      Experiment(ConfigFile::parse("[experiment]\nscenario = bogus\nseeds = 0\n")),
      doctest::Contains("bogus"), ConfigError);
  CHECK_THROWS_WITH_AS(
      Experiment(ConfigFile::parse("[experiment]\nscenario = gen-data\n")),
      doctest::Contains("seeds"), ConfigError);
}

TEST_CASE("gen-data: writes the table plus a manifest, reruns are identical") {
  TempDir dir("gendata");
  std::string cfg =
      "[experiment]\nscenario = gen-data\nseeds = 7\n"
      "[table]\nname = demo\nrows = 500\ncolumn = a uniform 1 50\n";
  CHECK(run_config(cfg, dir.str()) == 0);
  std::string csv = slurp(dir.path / "demo.csv");
  CHECK(csv.substr(0, 2) == "a\n");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 501);

  std::string manifest = slurp(dir.path / "manifest");
  CHECK(manifest.find("scenario gen-data") != std::string::npos);
  CHECK(manifest.find("seeds 7") != std::string::npos);
  CHECK(manifest.find("config_hash") != std::string::npos);

  TempDir dir2("gendata2");
  CHECK(run_config(cfg, dir2.str()) == 0);
  CHECK(slurp(dir2.path / "demo.csv") == csv);
  CHECK(slurp(dir2.path / "manifest") == manifest);
}

TEST_CASE("gen-data: bad column spec maps to exit code 2") {
  TempDir dir("gendata_bad");
  std::string err;
  CHECK(run_config("[experiment]\nscenario = gen-data\nseeds = 0\n"
                   "[table]\ncolumn = a uniform 1\n",
                   dir.str(), &err) == 2);
  CHECK(err.find("column") != std::string::npos);
}

TEST_CASE("label: rule and execution modes emit a training set") {
  for (std::string mode : {"rule", "execution"}) {
    TempDir dir("label_" + mode);
    std::string cfg =
        "[experiment]\nscenario = label\nseeds = 3\n"
        "[table]\nrows = 2000\n"
        "[label]\nmode = " + mode + "\ntarget_size = 200\n";
    REQUIRE(run_config(cfg, dir.str()) == 0);
    std::string csv = slurp(dir.path / "training_set.csv");
    CHECK(csv.substr(0, 9) == "feature_0");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 201);
    CHECK(csv.find(mode == "rule" ? ",rule\n" : ",execution\n") !=
          std::string::npos);
  }
  TempDir dir("label_bad");
  std::string err;
  CHECK(run_config("[experiment]\nscenario = label\nseeds = 3\n"
                   "[label]\nmode = psychic\n",
                   dir.str(), &err) == 2);
  CHECK(err.find("mode") != std::string::npos);
}

TEST_CASE("eedl-cardinality: per-seed records and retrain history") {
  TempDir dir("eedl");
  std::string cfg =
      "[experiment]\nscenario = eedl-cardinality\nseeds = 0 1\n"
      "[table]\nrows = 2000\n"
      "[eedl]\npretrain_size = 300\npretrain_epochs = 5\ninterval = 60\n"
      "stream = 130\nheldout = 50\nretrain_passes = 2\nhidden = 16\n";
  REQUIRE(run_config(cfg, dir.str()) == 0);
  for (int seed : {0, 1}) {
    std::string rec =
        slurp(dir.path / ("online_records_seed" + std::to_string(seed) + ".csv"));
    CHECK(std::count(rec.begin(), rec.end(), '\n') == 131);
    std::string hist = slurp(
        dir.path / ("retrain_history_seed" + std::to_string(seed) + ".csv"));
    // pretrain snapshot + 2 retrains at interval 60 over a 130-task stream
    CHECK(std::count(hist.begin(), hist.end(), '\n') == 4);
  }
  // seed override narrows the run to a single seed
  Experiment exp(ConfigFile::parse(cfg));
  TempDir dir2("eedl_seedover");
  exp.set_out_dir(dir2.str());
  exp.set_seed(5);
  REQUIRE(exp.run() == 0);
  CHECK(fs::exists(dir2.path / "online_records_seed5.csv"));
  CHECK(!fs::exists(dir2.path / "online_records_seed0.csv"));
}

TEST_CASE("eedl-cardinality: invalid gate maps to exit code 2") {
  TempDir dir("eedl_bad");
  std::string err;
  CHECK(run_config("[experiment]\nscenario = eedl-cardinality\nseeds = 0\n"
                   "[eedl]\nd = -0.5\n",
                   dir.str(), &err) == 2);
  CHECK(err.find("d") != std::string::npos);
}

TEST_CASE("eerl-index: writes a per-run history CSV") {
  TempDir dir("eerl");
  std::string cfg =
      "[experiment]\nscenario = eerl-index\nseeds = 0\n"
      "[eerl]\niterations = 40\nalpha = 0.2\nbeta = 0\nrows_per_table = 300\n";
  REQUIRE(run_config(cfg, dir.str()) == 0);
  std::string hist = slurp(dir.path / "rl_history_0.2_0_0.csv");
  CHECK(hist.substr(0, 4) == "iter");
  CHECK(std::count(hist.begin(), hist.end(), '\n') == 41);

  TempDir dir2("eerl_bad");
  std::string err;
  CHECK(run_config("[experiment]\nscenario = eerl-index\nseeds = 0\n"
                   "[eerl]\nalpha = 0.9\nbeta = 0.9\n",
                   dir2.str(), &err) == 2);
  CHECK(err.find("eerl") != std::string::npos);
}

TEST_CASE("theorem-verify: zero violations over many random instances") {
  TempDir dir("theorem");
  std::string cfg =
      "[experiment]\nscenario = theorem-verify\nseeds = 11\n"
      "[theorem]\ninstances = 5000\n";
  REQUIRE(run_config(cfg, dir.str()) == 0);
  std::string csv = slurp(dir.path / "theorem_report.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5001);
  CHECK(csv.find(",0\n") == std::string::npos);  // ok column is always 1
}

TEST_CASE("elc-bench: reports both timings and the speedup ratio") {
  TempDir dir("elcbench");
  std::string cfg =
      "[experiment]\nscenario = elc-bench\nseeds = 2\n"
      "[bench]\nrows = 20000\nqueries = 500\n";
  REQUIRE(run_config(cfg, dir.str()) == 0);
  std::string csv = slurp(dir.path / "elc_bench.csv");
  CHECK(csv.substr(0, 4) == "rows");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("report: summarizes the CSV artifacts of a finished run") {
  TempDir dir("report_src");
  REQUIRE(run_config("[experiment]\nscenario = gen-data\nseeds = 7\n"
                     "[table]\nname = demo\nrows = 50\ncolumn = a uniform 1 9\n",
                     dir.str()) == 0);
  TempDir out("report_out");
  std::string cfg = "[experiment]\nscenario = report\nseeds = 0\n"
                    "[report]\ndir = " + dir.str() + "\n";
  REQUIRE(run_config(cfg, out.str()) == 0);
  std::string rep = slurp(out.path / "report.csv");
  CHECK(rep.find("demo.csv,50") != std::string::npos);
}

TEST_CASE("format_real: stable shortest-ish decimal rendering") {
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(42) == "42");
  CHECK(format_real(1e-3) == "0.001");
  CHECK(format_real(1.0 / 3.0) == "0.3333333333");
}
