#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cosetmac/channel.hpp"
#include "cosetmac/cli.hpp"
#include "cosetmac/regions.hpp"

using namespace cosetmac;

namespace {

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("closed-form curves through the command line") {
  const RunResult r = run({"region", "--channel", "qdd", "--family", "closed_form", "--tau",
                           "0:0.7:0.1"});
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "tau,sum_rate,method,pre_envelope");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 8 * 3);
  // pre-envelope column carries the raw closed form
  const QddClosedForms c3 = qdd_closed_forms(0.3);
  std::ostringstream want;
  want.precision(12);
  want << "beta_g," << c3.beta_g;
  CHECK(r.out.find(want.str()) != std::string::npos);
}

TEST_CASE("validation failures exit with code 1") {
  CHECK(run({"region", "--channel", "nope", "--family", "alpha"}).code == 1);
  CHECK(run({"region", "--channel", "bdd", "--family", "martian"}).code == 1);
  CHECK(run({"region", "--channel", "bdd", "--family", "alpha", "--tau", "0.4:0.1:0.1"}).code == 1);
  CHECK(run({"simulate", "--channel", "bdd", "--trials", "0"}).code == 1);
  CHECK(run({"region", "--channel", "qdd", "--family", "closed_form", "--tau", "0:0.9:0.1"}).code == 1);
  const RunResult r = run({"region", "--channel", "bdd", "--family", "alpha", "--tau", "zork"});
  CHECK(r.code == 1);
  CHECK(r.err.find("tau") != std::string::npos);
}

TEST_CASE("budget overruns exit with code 2 and name the required count") {
  const RunResult r = run({"region", "--channel", "bdd", "--family", "alpha", "--tau", "0.5:0.5:0.1",
                           "--step", "0.05", "--budget", "100"});
  CHECK(r.code == 2);
  CHECK(r.err.find("required") != std::string::npos);
}

TEST_CASE("simulation is byte-identical for a fixed seed") {
  const std::vector<std::string> args{"simulate", "--channel", "bdd",   "--tau",  "0.25",
                                      "--n",      "10,12",    "--trials", "200",  "--seed",
                                      "7",        "--delta",  "1.0"};
  const RunResult a = run(args);
  const RunResult b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream is(a.out);
  std::string header;
  std::getline(is, header);
  CHECK(header == "n,rate_sum,trials,enc_fail_1,enc_fail_2,dec_err,cost_1,cost_2,seed");
}

TEST_CASE("shipped config files load and match the catalog") {
  const std::string dir = COSETMAC_CONFIG_DIR;
  const MacChannel bdd = load_channel_config(dir + "/bdd.channel");
  CHECK(bdd.kernel == channel_catalog("bdd").kernel);
  CHECK(bdd.cost1 == channel_catalog("bdd").cost1);
  // complement column is written as a literal, so allow the last ulp
  const MacChannel e5 = load_channel_config(dir + "/example5.channel");
  const MacChannel ref = channel_catalog("example5");
  REQUIRE(e5.kernel.size() == ref.kernel.size());
  for (std::size_t i = 0; i < ref.kernel.size(); ++i)
    CHECK(e5.kernel[i] == doctest::Approx(ref.kernel[i]).epsilon(1e-14));

  // the shipped strategy file reproduces the built-in reference bound
  const RunResult r = run({"region", "--channel", dir + "/bdd.channel", "--family", "rsf",
                           "--test-channel", dir + "/bdd_tau25.strategy"});
  REQUIRE(r.code == 0);
  std::ostringstream want;
  want.precision(12);
  want << binary_entropy(0.25);
  CHECK(r.out.find("rsf_sum," + want.str()) != std::string::npos);

  const RunResult ge = run({"group-entropy", "--group", "2^2", "--pmf", dir + "/z4_copy.pmf"});
  REQUIRE(ge.code == 0);
  CHECK(ge.out.find("S,2,0,") != std::string::npos);
}

TEST_CASE("quaternary simulation exercises the enumeration decoder") {
  // the mod-4 output mixes several field sums per symbol, so no fast path
  const RunResult r = run({"simulate", "--channel", "qdd", "--tau", "0.25", "--n", "8", "--trials",
                           "50", "--seed", "3", "--delta", "1.2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\n8,") != std::string::npos);
}

TEST_CASE("group entropy table") {
  const std::string path = "/tmp/cosetmac_test_pmf.txt";
  {
    std::ofstream f(path);
    f << "pmf V 4 S 4\n";
    for (int i = 0; i < 4; ++i) f << "row " << i << ' ' << i << " 0.25\n";
  }
  const RunResult r = run({"group-entropy", "--group", "2^2", "--pmf", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("conditioning,i_source,h_source,i_channel") != std::string::npos);
  CHECK(r.out.find("S,2,0,") != std::string::npos);  // V = S uniform: full rate, zero entropy

  // malformed mass
  {
    std::ofstream f(path);
    f << "pmf V 4 S 1\nrow 0 0 0.7\nrow 1 0 0.2\n";
  }
  const RunResult bad = run({"group-entropy", "--group", "2^2", "--pmf", path});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("sum") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("verify command") {
  const RunResult r = run({"verify", "--cap", "4096"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[PASS]") != std::string::npos);
  const RunResult neg = run({"verify", "--cap", "4096", "--negative-controls"});
  CHECK(neg.code == 0);
  const RunResult capped = run({"verify", "--cap", "10"});
  CHECK(capped.code == 0);
  CHECK(capped.out.find("[SKIP]") != std::string::npos);
}

TEST_CASE("curves land in the output file when asked") {
  const std::string path = "/tmp/cosetmac_test_curve.csv";
  const RunResult r = run({"region", "--channel", "qdd", "--family", "closed_form", "--tau",
                           "0.1:0.3:0.1", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header == "tau,sum_rate,method,pre_envelope");
  std::remove(path.c_str());
}

TEST_CASE("structured search through the command line dominates the closed form") {
  const RunResult r = run({"region", "--channel", "bdd", "--family", "beta_f", "--tau",
                           "0:0.5:0.05", "--step", "0.05"});
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  int rows = 0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    double tau, sum;
    char c;
    ls >> tau >> c >> sum;
    CHECK(sum >= binary_entropy(tau) - 0.02);
    ++rows;
  }
  CHECK(rows == 11);
}

TEST_CASE("region bounds for a supplied combined strategy") {
  const std::string path = "/tmp/cosetmac_test_tc.txt";
  {
    std::ofstream f(path);
    f << "testchannel\naux_u 1\nvtype field 2\n";
    for (int user = 1; user <= 2; ++user)
      for (int s = 0; s < 2; ++s) {
        // the additive reference strategy at tau = 0.25
        f << "user " << user << " pmf 0 " << (0 ^ s) << ' ' << s << " 0.75\n";
        f << "user " << user << " pmf 0 " << (1 ^ s) << ' ' << s << " 0.25\n";
        f << "user " << user << " map 0 0 " << s << ' ' << (0 ^ s) << "\n";
        f << "user " << user << " map 0 1 " << s << ' ' << (1 ^ s) << "\n";
      }
  }
  const RunResult r =
      run({"region", "--channel", "bdd", "--family", "rsf", "--test-channel", path});
  REQUIRE(r.code == 0);
  std::ostringstream want;
  want.precision(12);
  want << binary_entropy(0.25);
  CHECK(r.out.find("rsf_sum," + want.str()) != std::string::npos);
  std::remove(path.c_str());
}
