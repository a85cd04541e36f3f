#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI under test; the binary path arrives via RANDTEST_CLI.
RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("RANDTEST_CLI");
  REQUIRE(bin != nullptr);
  const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    res.out.append(buf, got);
  }
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  return std::string(std::istreambuf_iterator<char>(f),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("ucl command prints 12-digit values") {
  {
    const auto r = run_cli("ucl --n 9 --l 0 --delta 0.5 --lambda 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"eps_bar\":0.111111111111") != std::string::npos);
    CHECK(r.out.find("\"method\":\"closed-form-lambda0\"") != std::string::npos);
  }
  {
    const auto r = run_cli("ucl --n 1 --l 0 --delta 0.75 --lambda 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"eps_bar\":0.666666666667") != std::string::npos);
  }
  {
    const auto r = run_cli("ucl --n 5 --l 0 --delta 0.05 --lambda 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"eps_bar\":1") != std::string::npos);
  }
  {
    const auto r =
        run_cli("ucl --n 12 --l 2 --delta 0.3 --lambda 0.4 --bounds --oracle");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("complement_lower") != std::string::npos);
    CHECK(r.out.find("oracle_eps_bar") != std::string::npos);
  }
}

TEST_CASE("validation failures exit 2 with no stdout") {
  for (const char* bad : {
           "ucl --n 0 --l 0 --delta 0.5 --lambda 0",
           "ucl --n 5 --l 5 --delta 0.5 --lambda 0",
           "ucl --n 5 --l 0 --delta 1.5 --lambda 0",
           "ucl --n 5 --l 0 --delta 0.5 --lambda 1.0",
           "ucl --l 0 --delta 0.5",  // missing required --n
           "simulate --truth bogus:1 --n 5 --delta 0.5 --trials 10 --seed 1",
           "curve --figure no-such-figure",
       }) {
    const auto r = run_cli(bad);
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());
  }
  const auto r = run_cli("nonsense-subcommand");
  CHECK(r.exit_code == 2);
}

TEST_CASE("plan command with certificate") {
  const auto r = run_cli(
      "plan --regime constant --k0 0 --eps 0.01 --delta 0.01 "
      "--lambda 0.367879441171");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"n\":1212") != std::string::npos);
  CHECK(r.out.find("\"method\":\"exact-search\"") != std::string::npos);
  CHECK(r.out.find("eps_bar_at_n_minus_1") != std::string::npos);
}

TEST_CASE("max-failures and detect commands") {
  {
    const auto r = run_cli("max-failures --n 100 --eps 0.2 --delta 0.1 --lambda 0.3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"feasible\":true") != std::string::npos);
  }
  {
    const auto r = run_cli("detect --theta0 0.1 --delta 0.1 --gap 0 --lambda 0.3");
    CHECK(r.exit_code == 0);
    // Phi(-sqrt(0.7) C(0.3, 0.1, 0.1) / sqrt(0.1 * 0.93))
    CHECK(r.out.find("\"prob_randomized\":0.00239314443156") !=
          std::string::npos);
    CHECK(r.out.find("prob_iid") != std::string::npos);
  }
  {
    const auto r = run_cli("detect --theta0 0.1 --delta 0.1 --gap 1 --optimal");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("lambda_opt") != std::string::npos);
  }
}

TEST_CASE("simulate is reproducible byte for byte") {
  const std::string args =
      "simulate --truth vertex:3 --n 10 --l 0 --delta 0.159090909091 "
      "--lambda 0.5 --trials 100000 --seed 42";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"seed\":42") != std::string::npos);
  // delta is optional: the draw itself never consults it
  const auto c = run_cli(
      "simulate --truth vertex:3 --n 10 --l 0 --lambda 0.5 --trials 1000 "
      "--seed 42");
  CHECK(c.exit_code == 0);
  CHECK(c.out.find("p_accept") != std::string::npos);
}

TEST_CASE("curve datasets are deterministic files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "randtest_cli_test";
  fs::create_directories(dir);
  for (const char* fig : {"opt-lambda", "detect-prob"}) {
    const fs::path p1 = dir / (std::string(fig) + "_1.csv");
    const fs::path p2 = dir / (std::string(fig) + "_2.csv");
    const auto r1 = run_cli(std::string("curve --figure ") + fig + " --out " +
                            p1.string());
    const auto r2 = run_cli(std::string("curve --figure ") + fig + " --out " +
                            p2.string());
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(slurp(p1.string()) == slurp(p2.string()));
    CHECK(!slurp(p1.string()).empty());
  }
  // json variant parses as a single object line
  const fs::path pj = dir / "opt.json";
  const auto rj = run_cli(std::string("curve --figure opt-lambda --format json --out ") +
                          pj.string());
  CHECK(rj.exit_code == 0);
  const std::string body = slurp(pj.string());
  CHECK(body.front() == '{');
  CHECK(body.find("\"columns\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("verify command runs green on a small grid") {
  const auto r = run_cli("verify --max-n 8");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("verify: PASS") != std::string::npos);
}
