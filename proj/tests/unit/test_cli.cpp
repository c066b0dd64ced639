#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "io.hpp"

using namespace contest;
using namespace contest::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "contest_opt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  const char* dir = std::getenv("CONTEST_TEST_TMP");
  return std::string(dir ? dir : ".") + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("evaluate HM(5) at alpha = 0, beta = 2") {
  const Run r = run({"evaluate", "--n", "5", "--alpha", "0", "--beta", "2", "--policy", "hm"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["value"].get<double>() - 1.0 / 3.0) <= 1e-5);
  CHECK(j["hm_closed_form"].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(j["structure"] == "HM");
  CHECK(j.contains("W"));
  CHECK(j.contains("error_bound"));
}

TEST_CASE("evaluate rejects unordered and malformed policies") {
  const Run order = run({"evaluate", "--policy", "0.2,0.3,0.5"});
  CHECK(order.code == kExitUsage);
  CHECK(order.err.find("order") != std::string::npos);
  const Run bad = run({"evaluate", "--policy", "0.5,abc,0.5"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("position 4") != std::string::npos);
}

TEST_CASE("evaluate an explicit vector") {
  const Run r = run({"evaluate", "--policy", "0.4,0.2,0.2,0.2,0", "--beta", "2", "--alpha", "0.5"});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["structure"] == "TwoLevel");
}

TEST_CASE("optimize output round trips through evaluate") {
  const std::string path = tmp("cli_opt.json");
  const Run r = run({"optimize", "--method", "bnb", "--n", "5", "--alpha", "0.24", "--beta", "1.8", "-o", path});
  REQUIRE(r.code == kExitOk);
  const auto doc = nlohmann::json::parse(slurp(path));
  CHECK(doc["structure"] == "TwoLevel");
  CHECK(doc["certified"] == true);
  const Policy p = read_policy_file(path);
  CHECK(p.n() == 5);
  const Run e = run({"evaluate", "--policy-file", path, "--alpha", "0.24", "--beta", "1.8"});
  REQUIRE(e.code == kExitOk);
  CHECK(std::abs(nlohmann::json::parse(e.out)["value"].get<double>() - doc["value"].get<double>()) <= 1e-4);
}

TEST_CASE("optimize at alpha = 0.24, beta = 2 lands on UNI") {
  const Run r = run({"optimize", "--method", "bnb", "--n", "5", "--alpha", "0.24", "--beta", "2", "--epsilon", "1e-4"});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["structure"] == "UNI");
}

TEST_CASE("optimize n = 2 prints the HM notice") {
  const Run r = run({"optimize", "--method", "bnb", "--n", "2", "--alpha", "0.5", "--beta", "3"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["structure"] == "HM");
  CHECK(j.contains("note"));
  CHECK(r.err.find("note") != std::string::npos);
}

TEST_CASE("optimize grid and line") {
  const Run g = run({"optimize", "--method", "grid", "--granularity", "0.05", "--n", "4", "--alpha", "0", "--beta", "0.5"});
  REQUIRE(g.code == kExitOk);
  CHECK(nlohmann::json::parse(g.out)["structure"] == "HM");
  const Run l = run({"optimize", "--method", "line", "--n", "5", "--objective", "objective=orderstat", "--beta", "2"});
  REQUIRE(l.code == kExitOk);
  const Run refused = run({"optimize", "--method", "bnb", "--objective", "objective=orderstat"});
  CHECK(refused.code == kExitUsage);
  CHECK(refused.err.find("line") != std::string::npos);
}

TEST_CASE("parameter validation happens before dispatch") {
  CHECK(run({"optimize", "--n", "1"}).code == kExitUsage);
  CHECK(run({"optimize", "--beta", "-1"}).code == kExitUsage);
  CHECK(run({"optimize", "--alpha", "2"}).code == kExitUsage);
  CHECK(run({"optimize", "--epsilon", "0"}).code == kExitUsage);
  CHECK(run({"nonsense"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("sweep is deterministic, sorted and re-readable") {
  const std::string a = tmp("sweep_a.csv"), b = tmp("sweep_b.csv");
  REQUIRE(run({"sweep", "--cells", "4", "-o", a}).code == kExitOk);
  REQUIRE(run({"sweep", "--cells", "4", "-o", b}).code == kExitOk);
  CHECK(slurp(a) == slurp(b));
  std::ifstream in(a);
  const auto rows = read_sweep_csv(in);
  REQUIRE(rows.size() == 16);
  for (std::size_t k = 1; k < rows.size(); ++k)
    CHECK((rows[k - 1].alpha < rows[k].alpha || (rows[k - 1].alpha == rows[k].alpha && rows[k - 1].beta < rows[k].beta)));
  // alpha = 1, smallest beta: HM.
  CHECK(rows[12].structure == "HM");
  CHECK(rows[12].p1 == 1.0);
  // alpha = 0.05, beta = 5: UNI-like.
  CHECK(rows[3].p1 == doctest::Approx(0.25).epsilon(1e-3));
  std::ostringstream again;
  write_sweep_csv(again, rows);
  CHECK(again.str() == slurp(a));
}

TEST_CASE("sweep budget") {
  const Run r = run({"sweep", "--cells", "60"});
  CHECK(r.code == kExitBudget);
}

TEST_CASE("equilibrium CSV round trip and errors") {
  const std::string path = tmp("cdf.csv");
  const Run r = run({"equilibrium", "--policy", "hm", "--n", "5", "--beta", "2", "--format", "csv", "-o", path, "--points", "11"});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["q_max"].get<double>() == 1.0);
  std::ifstream in(path);
  const auto table = read_cdf_csv(in);
  REQUIRE(table.size() == 11);
  for (const auto& [q, f] : table) CHECK(f == doctest::Approx(std::sqrt(q)).epsilon(1e-8));
  CHECK(run({"equilibrium", "--policy", "uniform", "--n", "5"}).code == kExitUsage);
}

TEST_CASE("equilibrium simulation report") {
  const Run r = run({"equilibrium", "--policy", "hm", "--n", "5", "--beta", "2", "--simulate", "20000", "--seed", "5", "--points", "3"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["simulation"]["samples"] == 20000);
  CHECK(j["simulation"]["seed"] == 5);
  const Run again = run({"equilibrium", "--policy", "hm", "--n", "5", "--beta", "2", "--simulate", "20000", "--seed", "5", "--points", "3"});
  CHECK(again.out == r.out);
}

TEST_CASE("verify subset is deterministic") {
  const Run a = run({"verify", "--only", "schur", "--seed", "42", "--trials", "20"});
  const Run b = run({"verify", "--only", "schur", "--seed", "42", "--trials", "20"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j.contains("summary")) continue;
    ++count;
    CHECK(j["name"] == "structure.schur");
    CHECK(j["status"] == "pass");
    CHECK(j["seed"] == 42);
  }
  CHECK(count == 1);
  CHECK(run({"verify", "--only", "nothing"}).code == kExitUsage);
}

TEST_CASE("9 significant digits") {
  CHECK(fmt9(1.0 / 3.0) == "0.333333333");
  CHECK(round9(2.0 / 3.0) == 0.666666667);
}
