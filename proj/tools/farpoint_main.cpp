#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "farpoint/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

int list_scenarios() {
  for (const farpoint::ScenarioSpec& spec : farpoint::registered_scenarios()) {
    std::cout << spec.name << "\n  " << spec.summary << '\n';
    for (const farpoint::ParamSpec& p : spec.params) {
      std::cout << "    " << p.name << " (" << farpoint::to_string(p.type) << ")";
      if (p.default_value) std::cout << " = " << p.default_value->dump();
      std::cout << "  " << p.help << '\n';
    }
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"farpoint: farthest points under perturbation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(farpoint::kToolVersion));

  auto* list = app.add_subcommand("list", "List scenarios and their parameters");

  auto* run = app.add_subcommand("run", "Run a scenario from a JSON configuration");
  std::string config_path;
  std::string output_dir;
  std::vector<std::string> formats;
  std::optional<std::uint64_t> seed;
  run->add_option("--config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("--output", output_dir, "Output directory");
  run->add_option("--format", formats, "Output formats")
      ->delimiter(',')
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--seed", seed, "Override the configuration seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  if (list->parsed()) return list_scenarios();

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot read " << config_path << '\n';
    return kExitIo;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  farpoint::RunConfig config;
  try {
    config = farpoint::parse_config(buffer.str());
  } catch (const farpoint::ConfigError& e) {
    for (const farpoint::ConfigDiagnostic& d : e.diagnostics()) {
      std::cerr << "config error: " << d.field << ": " << d.message << '\n';
    }
    return kExitConfig;
  }
  if (seed) config.seed = *seed;
  if (!formats.empty()) config.formats = formats;

  std::string dir = "farpoint-out";
  if (!output_dir.empty()) {
    dir = output_dir;
  } else if (config.output_dir) {
    dir = *config.output_dir;
  } else if (const char* env = std::getenv("FARPOINT_OUTPUT"); env && *env) {
    dir = env;
  }
  config.output_dir = dir;

  const farpoint::ReportEnvelope envelope = farpoint::run(config);
  try {
    for (const auto& path : farpoint::emit(envelope, config.formats, dir)) std::cout << path.string() << '\n';
  } catch (const farpoint::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitIo;
  }
  std::cout << config.scenario << ": " << (envelope.overall_pass ? "PASS" : "FAIL") << '\n';
  return envelope.overall_pass ? kExitPass : kExitFail;
}
