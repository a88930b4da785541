#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using cubesaw::cli::run_args;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_args(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("expand targets") {
  const auto z = invoke({"expand", "--target", "z", "--order", "5"});
  REQUIRE(z.code == 0);
  CHECK(z.doc()["result"]["coefficients"] == json::array({1, 1, 2, 7, 39}));
  CHECK(z.doc()["meta"]["tool_version"].is_string());

  const auto a = invoke({"expand", "--target", "amplitude", "--order", "4"});
  CHECK(a.doc()["result"]["coefficients"] == json::array({1, 1, 4, 26, 231}));

  const auto mu = invoke({"expand", "--target", "mu"});
  CHECK(mu.doc()["result"]["display"] == "N - 1 - 1/N - 4/N^2 - 26/N^3");
  CHECK(mu.doc()["result"]["coefficients"] == json::array({1, -1, -1, -4, -26}));
  CHECK(mu.doc()["result"]["powers_of_N"] == json::array({1, 0, -1, -2, -3}));
}

TEST_CASE("enumerate emits counts as strings") {
  const auto r = invoke({"enumerate", "--n-dim", "5", "--max-steps", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["result"]["counts"] == json::array({"1", "5", "20", "80", "300"}));
  const auto csv = invoke({"enumerate", "--n-dim", "2", "--format", "csv"});
  CHECK(csv.out.rfind("n,weight,count\n0,0,1\n", 0) == 0);
  const auto chi = invoke({"enumerate", "--n-dim", "2", "--z", "1/4"});
  CHECK(chi.doc()["result"]["susceptibility"] == "53/32");
}

TEST_CASE("output is identical across thread counts") {
  const auto one = invoke({"enumerate", "--n-dim", "5", "--max-steps", "9", "--threads", "1"});
  const auto many = invoke({"enumerate", "--n-dim", "5", "--max-steps", "9", "--threads", "6"});
  CHECK(one.out == many.out);
}

TEST_CASE("verify suites") {
  CHECK(invoke({"verify", "--suite", "recursion", "--n-dim", "3", "--max-steps", "7"}).code == 0);
  CHECK(invoke({"verify", "--suite", "resummation", "--n-dim", "2", "--max-steps", "5"}).code == 0);
  CHECK(invoke({"verify", "--suite", "walsh", "--n-dim", "4"}).code == 0);
  CHECK(invoke({"verify", "--suite", "inequalities", "--n-dim", "2"}).code == 0);
  const auto goldens = invoke({"verify", "--suite", "goldens"});
  CHECK(goldens.code == 0);
  CHECK(goldens.doc()["result"]["ok"] == true);
}

TEST_CASE("lace targets") {
  const auto profile = invoke({"lace", "--n-dim", "3", "--max-steps", "3", "--big-m", "2"});
  REQUIRE(profile.code == 0);
  CHECK(profile.doc()["result"]["pi_M"][0]["total"] == "3");
  const auto universal = invoke({"lace", "--target", "universal", "--max-steps", "8", "--delta", "4", "--big-m", "1"});
  CHECK(universal.doc()["result"]["counts"][0]["count"] == "27");
  const auto poly = invoke({"lace", "--target", "npoly", "--max-steps", "4", "--big-m", "1"});
  CHECK(poly.doc()["result"]["display"] == "N^2 - N");
}

TEST_CASE("critical and observables") {
  const auto c = invoke({"critical", "--n-dim", "3", "--lambda", "1", "--p", "1/3"});
  REQUIRE(c.code == 0);
  const json r = c.doc()["result"];
  CHECK(r["relative_residual"].get<double>() <= 1e-12);
  CHECK(r["zeta_p"].get<double>() == doctest::Approx(r["z_n"].get<double>() / 2));
  CHECK(r["linearization"]["amplitude"].get<double>() > 0);
  CHECK(r["bootstrap"]["f2"].get<double>() >= 1);

  const auto b = invoke({"bubble", "--n-dim", "3", "--z", "0"});
  CHECK(b.doc()["result"]["bubble"] == "1");
  const auto l = invoke({"length", "--n-dim", "2", "--z", "0", "--scalar-mode", "float"});
  CHECK(l.doc()["result"]["expected_length"] == 1.0);
}

TEST_CASE("errors and exit codes") {
  const auto no_command = invoke({});
  CHECK(no_command.code == 2);
  CHECK(json::parse(no_command.err)["error"] == "usage");
  CHECK(invoke({"expand", "--target", "nope"}).code == 2);
  CHECK(invoke({"enumerate"}).code == 2);
  CHECK(invoke({"enumerate", "--n-dim", "3", "--format", "xml"}).code == 2);
  const auto low = invoke({"critical", "--n-dim", "2", "--lambda", "1/4"});
  CHECK(low.code == 2);
  CHECK(json::parse(low.err)["error"] == "domain");
  const auto budget = invoke({"enumerate", "--n-dim", "6", "--budget", "1000"});
  CHECK(budget.code == 3);
  CHECK(json::parse(budget.err)["error"] == "budget_exceeded");
  CHECK(budget.err.find('\n') == budget.err.size() - 1);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "cubesaw_cli_out.json";
  const auto r = invoke({"expand", "--target", "z", "--order", "3", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  CHECK(json::parse(in)["result"]["coefficients"] == json::array({1, 1, 2}));
  std::filesystem::remove(path);
}
