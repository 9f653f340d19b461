#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lrfield/config.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(LRFIELD_CLI_PATH) + " " +
                          args + " 2>&1";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) res.output.append(buf.data(), n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

const char* kTinyConfig = R"({
  "name": "cli_tiny",
  "experiment_id": 3,
  "model": {"family": "bessel", "v": 0.0},
  "window": {"shape": "square"},
  "weight": {"family": "one_plus_sum_sq"},
  "plan": {"kappa": 2, "alpha": 0.5, "h": 0.5, "r": [3, 5], "reps": 3, "outer": 2,
           "base_seed": 11, "waves": 64}
})";

}  // namespace

TEST_CASE("functional subcommand is deterministic") {
  const std::string args =
      "functional --window square --model bessel:v=0 --kappa 2 --alpha 0.5 --g one_plus_sum_sq "
      "--r 5 --h 0.5 --kind additive --seed 7 --waves 64";
  const RunResult a = run(args);
  const RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("kind,window,model") != std::string::npos);
  CHECK(a.output.find("additive,rectangle") != std::string::npos);

  const RunResult c = run(
      "functional --window disc --model cauchy:theta=2,beta=0.5 --kappa 2 --alpha 0.5 "
      "--g constant:c=1 --r 4 --h 0.5 --kind riemann --seed 9");
  CHECK(c.exit_code == 0);
}

TEST_CASE("mc subcommand writes the documented outputs and re-runs byte-identically") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lrfield_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "tiny.json";
  std::ofstream(cfg) << kTinyConfig;

  const std::string args = "mc --config " + cfg.string() + " --out " + (dir / "out1").string();
  const RunResult a = run(args);
  CHECK(a.exit_code == 0);
  const fs::path out1 = dir / "out1" / "cli_tiny";
  REQUIRE(fs::exists(out1 / "raw.csv"));
  REQUIRE(fs::exists(out1 / "summary.csv"));
  REQUIRE(fs::exists(out1 / "fit.csv"));

  const RunResult b =
      run("mc --config " + cfg.string() + " --out " + (dir / "out2").string() + " --threads 3");
  CHECK(b.exit_code == 0);
  const fs::path out2 = dir / "out2" / "cli_tiny";
  CHECK(slurp(out1 / "raw.csv") == slurp(out2 / "raw.csv"));
  CHECK(slurp(out1 / "summary.csv") == slurp(out2 / "summary.csv"));

  // Environment variable overrides the config seed; the flag wins over both.
  const RunResult env_run = run("mc --config " + cfg.string() + " --out " + (dir / "out3").string(),
                                "LRFIELD_BASE_SEED=999");
  CHECK(env_run.exit_code == 0);
  CHECK(slurp(dir / "out3" / "cli_tiny" / "raw.csv") != slurp(out1 / "raw.csv"));
  const RunResult flag_run = run("mc --config " + cfg.string() + " --out " +
                                     (dir / "out4").string() + " --seed 11",
                                 "LRFIELD_BASE_SEED=999");
  CHECK(flag_run.exit_code == 0);
  CHECK(slurp(dir / "out4" / "cli_tiny" / "raw.csv") == slurp(out1 / "raw.csv"));

  // qq on the raw output.
  const RunResult qq = run("qq --input " + (out1 / "raw.csv").string() + " --column value --out " +
                           (dir / "qq.csv").string());
  CHECK(qq.exit_code == 0);
  CHECK(slurp(dir / "qq.csv").rfind("theoretical,sample\n", 0) == 0);

  fs::remove_all(dir);
}

TEST_CASE("fit subcommand recovers a synthetic slope") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lrfield_cli_fit";
  fs::create_directories(dir);
  const fs::path input = dir / "summary.csv";
  std::ofstream(input) << "r,mean,se,n\n10,0.01,0,2\n20,0.0025,0,2\n40,0.000625,0,2\n";
  const RunResult res = run("fit --input " + input.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("power,") != std::string::npos);
  CHECK(res.output.find("-2") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("every shipped config parses and validates") {
  namespace fs = std::filesystem;
  const fs::path configs = fs::path(LRFIELD_CONFIG_DIR);
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(configs)) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    CAPTURE(entry.path().string());
    lrfield::ExperimentPlan plan = lrfield::load_plan(entry.path().string());
    const bool reference = plan.reference_scale > 0.0;
    CHECK_NOTHROW(plan.validate(reference));
  }
  CHECK(seen >= 6);
  // The desk-scale plans run end to end in the acceptance suite; here the
  // tiny config exercises the full mc path (covered above).
}

TEST_CASE("error paths emit stable machine-parseable codes") {
  CHECK(run("bogus-subcommand").exit_code != 0);
  CHECK(run("bogus-subcommand").output.find("error:") != std::string::npos);

  const RunResult missing = run("mc --config /nonexistent/cfg.json");
  CHECK(missing.exit_code == 2);
  CHECK(missing.output.find("error: config:") != std::string::npos);

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lrfield_cli_err";
  fs::create_directories(dir);
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << R"({"model": {"family": "nope"}})";
  const RunResult unknown = run("mc --config " + bad.string());
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.output.find("error: config: unknown covariance family") != std::string::npos);

  const fs::path invalid = dir / "invalid.json";
  std::ofstream(invalid) << kTinyConfig;
  const RunResult badalpha =
      run("functional --window square --model bessel:v=0 --kappa 2 --alpha 1.5 --g constant:c=1 "
          "--r 3 --h 0.5 --kind additive --seed 1");
  CHECK(badalpha.exit_code == 2);
  CHECK(badalpha.output.find("error: parameter:") != std::string::npos);
  fs::remove_all(dir);
}
