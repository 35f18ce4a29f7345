#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "farpoint/report.hpp"
#include "farpoint/serialization.hpp"

using namespace farpoint;
using nlohmann::json;

namespace {

std::vector<std::string> fields_of(const ConfigError& e) {
  std::vector<std::string> out;
  for (const ConfigDiagnostic& d : e.diagnostics()) out.push_back(d.field);
  return out;
}

std::vector<std::string> config_problems(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return fields_of(e);
  }
  return {};
}

std::string masked(const ReportEnvelope& env) {
  json j = envelope_to_json(env);
  j.erase("timestamps");
  return j.dump();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Registry, AllScenariosRegistered) {
  std::vector<std::string> names;
  for (const ScenarioSpec& s : registered_scenarios()) names.push_back(s.name);
  EXPECT_EQ(names, (std::vector<std::string>{"ck_counterexample", "fk_remark", "extreme_points", "ball_remark",
                                             "density_probe"}));
  EXPECT_NE(find_scenario("fk_remark"), nullptr);
  EXPECT_EQ(find_scenario("nope"), nullptr);
}

TEST(Config, DefaultsAreFilledIn) {
  const RunConfig c = parse_config(R"({"scenario": "fk_remark", "seed": 3, "parameters": {"x_count": 11}})");
  EXPECT_EQ(c.scenario, "fk_remark");
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(c.parameters["x_count"], 11);
  EXPECT_EQ(c.parameters["k_values"], json({1, 2, 5}));
  EXPECT_EQ(c.formats, std::vector<std::string>{"json"});
  EXPECT_FALSE(c.output_dir.has_value());
}

TEST(Config, CollectsEveryProblem) {
  const auto problems = config_problems(R"({
    "scenario": "fk_remark",
    "colour": "blue",
    "seed": -1,
    "formats": ["xml"],
    "parameters": {"x_count": 1.5, "k_values": "1,2", "bogus": 1}
  })");
  EXPECT_EQ(problems, (std::vector<std::string>{"colour", "seed", "formats", "parameters.bogus",
                                                "parameters.k_values", "parameters.x_count"}));
}

TEST(Config, RejectsBadDocuments) {
  EXPECT_EQ(config_problems("[1]"), std::vector<std::string>{"<document>"});
  EXPECT_EQ(config_problems("{"), std::vector<std::string>{"<document>"});
  EXPECT_EQ(config_problems("{}"), std::vector<std::string>{"scenario"});
  EXPECT_EQ(config_problems(R"({"scenario": "unknown"})"), std::vector<std::string>{"scenario"});
  EXPECT_EQ(config_problems(R"({"scenario": "extreme_points", "parameters": {"set": "cube"}})"),
            std::vector<std::string>{"parameters.set"});
  try {
    parse_config("{}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
  }
}

TEST(Run, FkRemarkPassesAndEmitsCsv) {
  const RunConfig c = parse_config(R"({"scenario": "fk_remark", "parameters": {"x_count": 5}})");
  const ReportEnvelope env = run(c);
  EXPECT_TRUE(env.overall_pass);
  EXPECT_EQ(env.tool_version, kToolVersion);
  ASSERT_EQ(env.csv_documents.count("fk_sup"), 1u);
  EXPECT_EQ(env.csv_documents.at("fk_sup").substr(0, 6), "x,sup\n");
  const json j = envelope_to_json(env);
  EXPECT_TRUE(j.contains("timestamps"));
  EXPECT_EQ(j["payload"]["scenario_name"], "fk_remark");
  EXPECT_EQ(j["overall_pass"], true);
}

TEST(Run, ScenarioErrorsBecomeFailingAssertions) {
  const RunConfig c = parse_config(R"({"scenario": "ck_counterexample", "parameters": {"x_offsets": [4.0]}})");
  const ReportEnvelope env = run(c);
  EXPECT_FALSE(env.overall_pass);
  const json j = envelope_to_json(env);
  ASSERT_EQ(j["payload"]["assertions"].size(), 1u);
  EXPECT_EQ(j["payload"]["assertions"][0]["description"], "InvalidX");
  EXPECT_TRUE(env.csv_documents.empty());
}

TEST(Run, DeterministicApartFromTimestamps) {
  for (const char* text : {R"({"scenario": "density_probe", "seed": 8, "parameters": {"samples": 40}})",
                           R"({"scenario": "ball_remark", "seed": 2, "parameters": {"sphere_samples": 2000}})",
                           R"({"scenario": "extreme_points", "parameters": {"sample_counts": [100, 1000]}})"}) {
    const RunConfig c = parse_config(text);
    EXPECT_EQ(masked(run(c)), masked(run(c))) << text;
  }
  const RunConfig a = parse_config(R"({"scenario": "density_probe", "seed": 8, "parameters": {"samples": 40}})");
  const RunConfig b = parse_config(R"({"scenario": "density_probe", "seed": 9, "parameters": {"samples": 40}})");
  EXPECT_NE(masked(run(a)), masked(run(b)));
}

TEST(Run, DensityProbeExpectation) {
  const RunConfig pass = parse_config(
      R"({"scenario": "density_probe", "parameters": {"samples": 30, "expect_attained_fraction": 1.0}})");
  EXPECT_TRUE(run(pass).overall_pass);
  const RunConfig fail = parse_config(
      R"({"scenario": "density_probe", "parameters": {"samples": 30, "expect_attained_fraction": 0.5}})");
  EXPECT_FALSE(run(fail).overall_pass);
}

TEST(Emit, WritesReportAndCsv) {
  const auto dir = std::filesystem::temp_directory_path() / "farpoint_test_emit";
  std::filesystem::remove_all(dir);
  const RunConfig c = parse_config(R"({"scenario": "fk_remark", "parameters": {"x_count": 3}})");
  const ReportEnvelope env = run(c);
  const auto paths = emit(env, {"json", "csv"}, dir / "nested");
  ASSERT_EQ(paths.size(), 2u);
  const json j = json::parse(slurp(dir / "nested" / "report.json"));
  EXPECT_EQ(j, envelope_to_json(env));
  EXPECT_EQ(slurp(dir / "nested" / "fk_sup.csv"), env.csv_documents.at("fk_sup"));
  std::filesystem::remove_all(dir);
}

TEST(Emit, UnwritableDirectoryIsIoError) {
  const auto file = std::filesystem::temp_directory_path() / "farpoint_test_blocker";
  std::ofstream(file) << "x";
  const ReportEnvelope env = run(parse_config(R"({"scenario": "fk_remark", "parameters": {"x_count": 2}})"));
  try {
    emit(env, {"json"}, file / "sub");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
  std::filesystem::remove(file);
}

TEST(Csv, NumberFormatting) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(3.0), "3");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
  const DataSeries s{"t", {"a", "b"}, {{1.0, 0.5}, {2.0, 1e-12}}};
  EXPECT_EQ(to_csv(s), "a,b\n1,0.5\n2,1e-12\n");
}

// The documented schema lists the same scenarios, parameters and defaults as
// the registry.
TEST(Registry, MatchesDocumentedSchema) {
  const json schema = json::parse(slurp(FARPOINT_SCHEMA_PATH));
  const json& names = schema["properties"]["scenario"]["enum"];
  ASSERT_EQ(names.size(), registered_scenarios().size());
  for (const json& branch : schema["allOf"]) {
    const std::string name = branch["if"]["properties"]["scenario"]["const"];
    const ScenarioSpec* spec = find_scenario(name);
    ASSERT_NE(spec, nullptr) << name;
    const json& props = branch["then"]["properties"]["parameters"]["properties"];
    EXPECT_EQ(props.size(), spec->params.size()) << name;
    for (const ParamSpec& p : spec->params) {
      ASSERT_TRUE(props.contains(p.name)) << name << "." << p.name;
      if (p.default_value) EXPECT_EQ(props[p.name]["default"], *p.default_value) << name << "." << p.name;
      else EXPECT_FALSE(props[p.name].contains("default")) << name << "." << p.name;
    }
  }
}
