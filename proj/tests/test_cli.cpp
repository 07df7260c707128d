// End-to-end checks of the command-line tool. The binary path comes from
// the REMLAB_CLI_BIN environment variable set by CTest.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

std::string cli() {
  const char* p = std::getenv("REMLAB_CLI_BIN");
  REQUIRE_MESSAGE(p != nullptr, "REMLAB_CLI_BIN not set");
  return p;
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string outfile = std::filesystem::temp_directory_path() / "remlab_cli_out.txt";
  const std::string cmd = cli() + " " + args + " > " + outfile + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(outfile);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(raw), ss.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("conditions subcommand prints the kernel closed forms") {
  const RunResult r = run("conditions --kernel brox --r 1.5");
  CHECK(r.code == 0);
  CHECK(r.out.find("(2.53125") != std::string::npos);
  CHECK(r.out.find("1.75") != std::string::npos);
  CHECK(r.out.find("holds=true") != std::string::npos);

  const RunResult r2 = run("conditions --kernel brox --r 1.9");
  CHECK(r2.out.find("holds=false") != std::string::npos);
}

TEST_CASE("index subcommand matches the closed form") {
  const RunResult r = run("index --law zero --d 1 --r 2 --k 100");
  CHECK(r.code == 0);
  CHECK(r.out.find("n(100)=3") != std::string::npos);
}

TEST_CASE("sample determinism: same seed gives byte-identical files") {
  const auto dir = std::filesystem::temp_directory_path() / "remlab_cli_test";
  std::filesystem::create_directories(dir);
  const std::string f1 = (dir / "env1.csv").string();
  const std::string f2 = (dir / "env2.csv").string();
  const RunResult r1 =
      run("sample --law brownian --seed 7 --L 4 --step 0.015625 --out " + f1);
  const RunResult r2 =
      run("sample --law brownian --seed 7 --L 4 --step 0.015625 --out " + f2);
  CHECK(r1.code == 0);
  CHECK(r2.code == 0);
  const std::string a = slurp(f1), b = slurp(f2);
  CHECK(!a.empty());
  CHECK(a == b);
  // metadata sidecar exists and echoes the law
  const std::string meta = slurp(f1 + ".meta.json");
  CHECK(meta.find("\"law\"") != std::string::npos);
  CHECK(meta.find("\"seed\"") != std::string::npos);
  // different seed changes the bytes
  const std::string f3 = (dir / "env3.csv").string();
  (void)run("sample --law brownian --seed 8 --L 4 --step 0.015625 --out " + f3);
  CHECK(slurp(f3) != a);
}

TEST_CASE("exit codes") {
  CHECK(run("bogus-subcommand").code == 2);
  CHECK(run("conditions --event mainassump --law brownian --a 2 --b 1 --trials 10").code == 2);
  // unknown config keys are rejected
  {
    const auto cfg = std::filesystem::temp_directory_path() / "remlab_bad_cfg.json";
    std::ofstream out(cfg);
    out << "{\"r\": 1.5, \"bogus\": 1}\n";
    out.close();
    CHECK(run("index --law zero --d 1 --r 2 --k 10 --config " + cfg.string()).code == 2);
  }
  CHECK(run("index --law zero --d 1 --r 2 --k 100000000 --n-max 3 --strict-horizon").code == 4);
  // numerical failure: a non-PSD grid kernel
  const auto dir = std::filesystem::temp_directory_path() / "remlab_cli_test";
  std::filesystem::create_directories(dir);
  const std::string kcsv = (dir / "badkernel.csv").string();
  {
    std::ofstream out(kcsv);
    out << "x,y,K\n";
    for (double x : {-1.0, 0.0, 1.0})
      for (double y : {-1.0, 0.0, 1.0}) out << x << "," << y << "," << (x == y ? -1.0 : 0.0) << "\n";
  }
  const RunResult r =
      run("sample --law gaussian --kernel " + kcsv + " --L 1 --step 0.5 --seed 1 --out " +
          (dir / "bad.csv").string());
  CHECK(r.code == 3);
}

TEST_CASE("energy subcommand writes report CSVs") {
  const auto dir = std::filesystem::temp_directory_path() / "remlab_cli_test";
  std::filesystem::create_directories(dir);
  const std::string base = (dir / "zero_report").string();
  const RunResult r =
      run("energy --law zero --d 1 --r 2 --n-max 6 --k-grid 1,10,100 --out " + base);
  CHECK(r.code == 0);
  const std::string rows = slurp(base + "_rows.csv");
  CHECK(rows.rfind("n,mass,energy,ratio", 0) == 0);
  const std::string ktab = slurp(base + "_k.csv");
  CHECK(ktab.rfind("k,n_of_k,lemma33_slack,lemma34_slack,cor35_slack", 0) == 0);
  const std::string manifest = slurp(base + ".manifest.json");
  CHECK(manifest.find("\"wall_time_s\"") != std::string::npos);
}

TEST_CASE("report subcommand aggregates without recomputation") {
  const auto dir = std::filesystem::temp_directory_path() / "remlab_report_test";
  std::filesystem::create_directories(dir);
  (void)run("energy --law zero --d 1 --r 2 --n-max 5 --k-grid 1,10 --out " +
            (dir / "rep").string());
  const RunResult r = run("report --dir " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("negative_slacks") != std::string::npos);
}

TEST_CASE("REMLAB_OUT_DIR is the output root for relative paths") {
  const auto dir = std::filesystem::temp_directory_path() / "remlab_outdir_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string cmd = "REMLAB_OUT_DIR=" + dir.string() + " " + cli() +
                          " sample --law zero --L 4 --step 0.5 --out relenv.csv >/dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(std::filesystem::exists(dir / "relenv.csv"));
}

TEST_CASE("simulate subcommand writes a path") {
  const auto dir = std::filesystem::temp_directory_path() / "remlab_cli_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "path.csv").string();
  const RunResult r = run(
      "simulate --scheme time-change --law zero --q 2 --t-end 0.5 --dt-clock 0.001 "
      "--record-dt 0.05 --seed 3 --out " + path);
  CHECK(r.code == 0);
  const std::string csv = slurp(path);
  CHECK(csv.rfind("t,x1", 0) == 0);
}
