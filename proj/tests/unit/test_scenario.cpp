#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dchaos/errors.hpp"
#include "dchaos/scenario.hpp"

using namespace dchaos;
using json = nlohmann::ordered_json;

namespace {

json minimal() {
  return json::parse(R"({
    "schema_version": 1,
    "scenario": "t",
    "families": [{"name": "T", "kind": "translation", "speed": 1}],
    "vectors": {"w": {"type": "blocks", "blocks": [{"start": 1, "end": 2, "amplitude": 1}]}},
    "plan": {"kind": "log", "start": 1, "horizon": 10, "count": 20},
    "tasks": [{"id": "c", "type": "classify", "vector": "w", "informational": true}]
  })");
}

std::string schema_message(const json& doc) {
  try {
    parse_scenario(doc);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Schema);
    return e.what();
  }
  return "";
}

std::string scenario_path(const std::string& name) { return std::string(DCHAOS_SCENARIO_DIR) + "/" + name + ".json"; }

}  // namespace

TEST_CASE("minimal config parses and runs") {
  const ScenarioConfig c = parse_scenario(minimal());
  CHECK(c.families.size() == 1);
  const ScenarioResult r = run_scenario(c, {});
  CHECK(r.exit_code == 0);
  CHECK(r.report["tasks"][0]["status"] == "info");
}

TEST_CASE("schema errors name the field path") {
  json doc = minimal();
  doc["vectors"]["w"]["blocks"][0]["end"] = 1;
  CHECK(schema_message(doc).find("vectors.w.blocks[0].end") != std::string::npos);

  doc = minimal();
  doc["schema_version"] = 2;
  CHECK(schema_message(doc).find("schema_version") != std::string::npos);

  doc = minimal();
  doc["families"][0]["kind"] = "rotation";
  CHECK(schema_message(doc).find("families[0].kind") != std::string::npos);

  doc = minimal();
  doc["tasks"][0].erase("id");
  CHECK(schema_message(doc).find("tasks[0]") != std::string::npos);

  doc = minimal();
  doc["detection"] = {{"threshold", 2}};
  CHECK(schema_message(doc).find("detection") != std::string::npos);
}

TEST_CASE("unknown references are schema errors at run time") {
  json doc = minimal();
  doc["tasks"][0]["vector"] = "missing";
  const ScenarioConfig c = parse_scenario(doc);
  CHECK_THROWS_AS(run_scenario(c, {}), Error);
}

TEST_CASE("horizon override replaces the plan horizon") {
  RunOptions o;
  o.horizon = 5.0;
  const ScenarioResult r = run_scenario(parse_scenario(minimal()), o);
  CHECK(r.report["tasks"][0]["horizon"] == 5.0);
}

TEST_CASE("number formatting and CSV") {
  CHECK(format_number(2.718281828459045) == "2.718281828459045");
  CHECK(format_number(0.5) == "0.5");
  CHECK(profile_csv({1, 2}, {0.5, 0.25}, "ratio") == "t,ratio\n1,0.5\n2,0.25\n");
}

TEST_CASE("bundled polinomi scenario passes and the report is written") {
  const ScenarioResult r = run_scenario(load_scenario(scenario_path("polinomi-AB")), {});
  CHECK(r.exit_code == 0);
  const auto dir = std::filesystem::temp_directory_path() / "dchaos_test_out";
  std::filesystem::remove_all(dir);
  write_outputs(r, dir.string());
  CHECK(std::filesystem::exists(dir / "report.json"));
  CHECK(std::filesystem::exists(dir / "summary.txt"));
  std::ifstream in(dir / "report.json");
  const json written = json::parse(in);
  CHECK(!written["metadata"]["generated_at"].get<std::string>().empty());
  CHECK(report_without_metadata(written) == report_without_metadata(r.report));
}

TEST_CASE("missing config file is an I/O error") {
  try {
    load_scenario("/nonexistent/config.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}
