#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "farpoint/error.hpp"

namespace farpoint {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class ParamType { Integer, Real, IntegerList, RealList, Text };

std::string to_string(ParamType type);

struct ParamSpec {
  std::string name;
  ParamType type;
  /// Absent for optional parameters without a default.
  std::optional<nlohmann::json> default_value;
  std::string help;
  /// Allowed values for Text parameters; empty means any string.
  std::vector<std::string> choices;
};

struct ScenarioSpec {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
};

const std::vector<ScenarioSpec>& registered_scenarios();
const ScenarioSpec* find_scenario(std::string_view name);

struct RunConfig {
  std::string scenario;
  /// Validated parameters with defaults filled in.
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::optional<std::string> output_dir;
  std::vector<std::string> formats{"json"};
};

struct ConfigDiagnostic {
  std::string field;
  std::string message;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigDiagnostic> diagnostics);

  const std::vector<ConfigDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ConfigDiagnostic> diagnostics_;
};

/// Parses and validates a JSON run configuration. Throws ConfigError listing
/// every problem found.
RunConfig parse_config(std::string_view source);

nlohmann::json config_to_json(const RunConfig& config);

struct ReportEnvelope {
  std::string tool_version;
  nlohmann::json config;
  std::string started_at;
  std::string finished_at;
  nlohmann::json payload;
  /// CSV documents keyed by file stem.
  std::map<std::string, std::string> csv_documents;
  bool overall_pass = false;
};

/// Runs the configured scenario. Scenario failures are reported inside the
/// envelope with overall_pass = false rather than thrown.
ReportEnvelope run(const RunConfig& config);

/// JSON form of the envelope. Timestamps live under the single "timestamps"
/// key; everything else is a pure function of the configuration.
nlohmann::json envelope_to_json(const ReportEnvelope& envelope);

/// Writes report.json and/or one CSV per series into output_dir. Throws
/// IoError when the directory or a file cannot be written.
std::vector<std::filesystem::path> emit(const ReportEnvelope& envelope, const std::vector<std::string>& formats,
                                        const std::filesystem::path& output_dir);

}  // namespace farpoint
