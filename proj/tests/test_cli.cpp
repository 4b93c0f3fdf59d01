#include "cpmu/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <set>
#include <sstream>

using namespace cpmu;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kData = CPMU_TEST_DATA;

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run({"check-groupoid", "--instance", "z2"}).code == 0);
  CHECK(run({"build-pmu", "--instance", "pair2-nu"}).code == 0);
  CHECK(run({"check-groupoid", kData + "/z2.gpd"}).code == 0);

  const Run bad = run({"check-groupoid", kData + "/bad_compose.gpd"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  CHECK(bad.out.find("result: FAIL") != std::string::npos);

  const Run trunc = run({"check-groupoid", kData + "/truncated.gpd"});
  CHECK(trunc.code == 2);
  CHECK(trunc.err.find("truncated.gpd:7:1: ") != std::string::npos);
  CHECK(trunc.out.empty());

  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"legs"}).code == 2);
  CHECK(run({"legs", kData + "/z2.gpd", "--instance", "z2"}).code == 2);
  CHECK(run({"legs", "--instance", "z2", "--tol", "-1"}).code == 2);
  CHECK(run({"legs", "--instance", "z2", "--format", "xml"}).code == 2);
  const Run unknown = run({"legs", "--instance", "z5"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("pair3") != std::string::npos);
  CHECK(run({"legs", kData + "/no_such_file.gpd"}).code == 2);
}

TEST_CASE("an absurdly tight tolerance turns residual checks red") {
  const Run r = run({"build-pmu", "--instance", "pair2-nu", "--tol", "1e-30"});
  CHECK(r.code == 1);
  // a red construction stops the pipeline instead of cascading
  CHECK(r.out.find("completed") == std::string::npos);
  CHECK(r.out.find("pmu.") == std::string::npos);
}

TEST_CASE("output is deterministic without timing") {
  for (const char* fmt : {"text", "json"}) {
    const Run a = run({"legs", "--instance", "action_z2_swap-nu", "--format", fmt});
    const Run b = run({"legs", "--instance", "action_z2_swap-nu", "--format", fmt});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("elapsed") == std::string::npos);
  }
  const Run t = run({"check-groupoid", "--instance", "z2", "--format", "json", "--timing"});
  CHECK(nlohmann::json::parse(t.out)["checks"][0].contains("elapsed_ms"));
}

TEST_CASE("json report") {
  const Run r = run({"report", "--instance", "z3", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "cpmu-report/1");
  CHECK(j["instance"] == "z3");
  CHECK(j["command"] == "report");
  CHECK(j["passed"] == true);
  CHECK(j["derived"]["arrows"] == 3);
  CHECK(j["derived"]["dim_H"] == 3);
  CHECK(j["derived"]["dim_source"] == 9);
  CHECK(j["derived"]["regular"] == true);
  CHECK(j["derived"]["pentagon_residual"].get<double>() <= 1e-10);
  CHECK(j["derived"]["center_dim_A"] == 3);

  std::set<std::string> names;
  for (const auto& c : j["checks"]) {
    CHECK(c["passed"] == true);
    CHECK(names.insert(c["name"].get<std::string>()).second);
  }
  CHECK(names.count("pmu.pentagon") == 1);

  // the text rendering reports the same verdicts, one line per check
  const Run text = run({"report", "--instance", "z3"});
  for (const auto& n : names) CHECK(text.out.find(n) != std::string::npos);
  CHECK(text.out.find("result: PASS (" + std::to_string(names.size()) + " checks, 0 failed)") != std::string::npos);
}

TEST_CASE("json and text agree on a failing file") {
  const Run j = run({"report", kData + "/bad_compose.gpd", "--format", "json"});
  const Run t = run({"report", kData + "/bad_compose.gpd"});
  CHECK(j.code == 1);
  CHECK(t.code == 1);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["passed"] == false);
  int failed = 0;
  for (const auto& c : doc["checks"]) failed += c["passed"] == false;
  CHECK(failed > 0);
  CHECK(t.out.find(std::to_string(failed) + " failed)") != std::string::npos);
}
