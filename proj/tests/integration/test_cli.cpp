// Runs the command-line tool as a subprocess.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(HOMGAIN_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("homgain_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// small grids keep the subprocess runs short
const std::string kFast = " --sphere-polar 128 --sphere-azimuth 256 --refine-starts 8";

}  // namespace

TEST_CASE("check on the reference parameters") {
  const auto r = run("check");
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["status"] == "ok");
  CHECK(j["g_max"].get<double>() < j["bound"].get<double>());
  CHECK(j["a_tilde"].get<double>() == doctest::Approx(j["M"].get<double>() + 1.0));
}

TEST_CASE("check reports violated assumptions") {
  const auto dir = scratch("assume");
  std::ofstream(dir / "bad.cfg") << "alpha2 = 100\n";
  const auto r = run("check -c " + (dir / "bad.cfg").string());
  CHECK(r.code == 3);
  CHECK(json::parse(r.out)["reason"] == "assumption1");

  std::ofstream(dir / "small.cfg") << "a_tilde = 1\n";
  const auto s = run("check -c " + (dir / "small.cfg").string());
  CHECK(s.code == 3);
  CHECK(json::parse(s.out)["reason"] == "storage");
}

TEST_CASE("argument and io errors") {
  const auto missing = run("check -c /nonexistent/run.cfg");
  CHECK(missing.code == 2);
  CHECK(json::parse(missing.out)["reason"] == "io");

  CHECK(run("gain --L 0").code == 2);
  CHECK(run("gain").code == 2);
  CHECK(run("frobnicate").code == 2);

  const auto dir = scratch("badkey");
  std::ofstream(dir / "k.cfg") << "speed = 3\n";
  const auto k = run("check -c " + (dir / "k.cfg").string());
  CHECK(k.code == 2);
  CHECK(json::parse(k.out)["reason"] == "config");
}

TEST_CASE("emitted config round-trips") {
  const auto dir = scratch("emit");
  std::ofstream(dir / "in.cfg") << "d = -0.3\nL = 1.25\ngain_tol = 0.002\nseed = 7\n";
  REQUIRE(run("check -c " + (dir / "in.cfg").string() + " --emit-config " + (dir / "a.cfg").string()).code == 0);
  REQUIRE(run("check -c " + (dir / "a.cfg").string() + " --emit-config " + (dir / "b.cfg").string()).code == 0);
  CHECK(slurp(dir / "a.cfg") == slurp(dir / "b.cfg"));
  CHECK(slurp(dir / "a.cfg").find("d = -0.29999999999999999") != std::string::npos);
}

TEST_CASE("gain is U-shaped in L") {
  auto gamma = [](const std::string& L) {
    const auto r = run("gain --L " + L + kFast);
    REQUIRE(r.code == 0);
    return json::parse(r.out)["gamma_hat"].get<double>();
  };
  const double mid = gamma("1.05");
  CHECK(gamma("0.3") > mid);
  CHECK(gamma("2") > mid);
}

TEST_CASE("gain output carries the certificate") {
  const auto r = run("gain --L 1" + kFast);
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  for (const char* key : {"gamma_hat", "J_max", "phi1", "phi2", "gamma_lo", "gamma_hi", "iterations"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["J_max"].get<double>() < 0.0);
}

TEST_CASE("results are independent of the thread count") {
  const auto a = run("gain --L 0.8 --threads 1" + kFast);
  const auto b = run("gain --L 0.8 --threads 3" + kFast);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  setenv("HOMGAIN_THREADS", "2", 1);
  const auto c = run("gain --L 0.8" + kFast);
  unsetenv("HOMGAIN_THREADS");
  CHECK(a.out == c.out);
}

TEST_CASE("optimize") {
  const auto r = run("optimize --L-min 0.3 --L-max 2" + kFast);
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  const double L = j["L_star"].get<double>();
  CHECK(L > 0.3);
  CHECK(L < 2.0);
  CHECK(j["boundary"] == false);
  CHECK(run("optimize --L-min 2 --L-max 1").code == 2);
}

TEST_CASE("sweep csv") {
  const auto dir = scratch("sweep");
  const auto r = run("sweep --d-list 0,-0.5 --L-list 0.5,1 -o " + dir.string() + kFast);
  REQUIRE(r.code == 0);
  const auto csv = slurp(dir / "sweep.csv");
  CHECK(csv.rfind("d,L,gamma_hat,gamma_noise,gamma_dist,hinf\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 5);
  // rows sorted by d: the two d = -0.5 rows come first and have no baseline
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line.rfind("-0.5,0.5,", 0) == 0);
  CHECK(line.back() == ',');
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line.rfind("0,0.5,", 0) == 0);
  CHECK(line.back() != ',');

  const auto empty = run("sweep --L-list \"\"");
  CHECK(empty.code == 0);
  CHECK(empty.out == "d,L,gamma_hat,gamma_noise,gamma_dist,hinf\n");

  const auto fail = run("sweep --d-list -0.5 --L-list 1 -c /nonexistent.cfg");
  CHECK(fail.code == 2);
}

TEST_CASE("sweep marks failed rows") {
  const auto dir = scratch("sweepfail");
  std::ofstream(dir / "bad.cfg") << "alpha2 = 100\n";
  const auto r = run("sweep -c " + (dir / "bad.cfg").string() + " --d-list -0.5 --L-list 1" + kFast);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("-0.5,1,error:assumption1,nan,nan,") != std::string::npos);
}

TEST_CASE("simulate writes one trajectory per multiplier") {
  const auto dir = scratch("sim");
  const auto r = run("simulate --L 1 --L-multiplier 0.5,1,2 --periods 1 --stride 100 -o " + dir.string());
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["runs"].size() == 3);
  for (const char* name : {"trajectory_L0.5.csv", "trajectory_L1.csv", "trajectory_L2.csv"}) {
    const auto csv = slurp(dir / name);
    CHECK(csv.rfind("t,z1,z2,y,nu,delta\n", 0) == 0);
  }
  const auto& q = j["runs"][1]["quotients"];
  CHECK(std::abs(q["gamma_hT"].get<double>() - q["gamma_hT_dilated"].get<double>()) < 1e-2);

  CHECK(run("simulate --L 1 --kappa 0").code == 2);
  CHECK(run("simulate --L 1 --periods 0.5").code == 2);
}

TEST_CASE("simulate reports divergence as a numeric failure") {
  const auto dir = scratch("diverge");
  std::ofstream(dir / "lin.cfg") << "d = 0\n";
  const auto r = run("simulate -c " + (dir / "lin.cfg").string() +
                     " --L 10 --sample-time 1 --omega0 0.01 --periods 2");
  CHECK(r.code == 4);
  CHECK(json::parse(r.out)["reason"] == "numeric");
}

TEST_CASE("ratios") {
  const auto r = run("ratios --d -0.5 --kappa-max 4 --points 3");
  REQUIRE(r.code == 0);
  CHECK(r.out == "kappa,ratio_nu,ratio_delta,ratio_hom\n0.25,2,0.5,1\n1,1,1,1\n4,0.5,2,1\n");
  CHECK(run("ratios --d 1").code == 2);
}
