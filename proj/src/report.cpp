#include "farpoint/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <set>

#include "farpoint/attainment.hpp"
#include "farpoint/generic_structure.hpp"
#include "farpoint/random.hpp"
#include "farpoint/scenarios.hpp"
#include "farpoint/serialization.hpp"
#include "farpoint/set_models.hpp"

namespace farpoint {

using nlohmann::json;

std::string to_string(ParamType type) {
  switch (type) {
    case ParamType::Integer: return "integer";
    case ParamType::Real: return "real";
    case ParamType::IntegerList: return "integer list";
    case ParamType::RealList: return "real list";
    case ParamType::Text: return "string";
  }
  return "unknown";
}

const std::vector<ScenarioSpec>& registered_scenarios() {
  static const std::vector<ScenarioSpec> specs = {
      {"ck_counterexample",
       "C([0,1]) family with f = (1 - ||z||)^+: f_x never attains its sup for x in the ball B(2, 1)",
       {
           {"n_max", ParamType::Integer, json(1000), "number of enumerated elements", {}},
           {"schedule", ParamType::IntegerList, json({10, 100, 1000}), "increasing truncations for the verdict", {}},
           {"x_offsets", ParamType::RealList, json({2.0}), "x(t) = offset + slope * t, one entry per x", {}},
           {"x_slopes", ParamType::RealList, json({0.0}), "slopes matching x_offsets", {}},
       }},
      {"fk_remark",
       "C = [0, 1], f_k = 1_{0,1}/k: no x attains the sup although f_k -> 0 uniformly",
       {
           {"k_values", ParamType::IntegerList, json({1, 2, 5}), "penalty denominators k >= 1", {}},
           {"x_min", ParamType::Real, json(-1.0), "left end of the x grid", {}},
           {"x_max", ParamType::Real, json(2.0), "right end of the x grid", {}},
           {"x_count", ParamType::Integer, json(101), "number of equally spaced grid values", {}},
       }},
      {"extreme_points",
       "sup over a polytope or the unit ball equals the sup over its extreme points",
       {
           {"set", ParamType::Text, json("polytope"), "polytope or ball", {"polytope", "ball"}},
           {"dimension", ParamType::Integer, json(2), "ambient dimension", {}},
           {"vertices", ParamType::RealList, json({-1.0, -1.0, 1.0, -1.0, 1.0, 1.0, -1.0, 1.0}),
            "polytope vertices, flattened row by row", {}},
           {"objective", ParamType::Text, json("distance_plus_norm"), "objective from the menu",
            {"distance_plus_norm", "distance", "square"}},
           {"x", ParamType::RealList, json({2.0, 0.0}), "center for the distance objectives", {}},
           {"sample_counts", ParamType::IntegerList, json({1000, 10000, 100000}), "increasing sample sizes", {}},
           {"seed_count", ParamType::Integer, json(5), "number of seeds, starting at the run seed", {}},
       }},
      {"ball_remark",
       "C = unit ball of R^d: sup ||x - z|| + ||z|| = ||x|| + 2, attained at -x/||x||",
       {
           {"dimension", ParamType::Integer, json(2), "ambient dimension", {}},
           {"x_count", ParamType::Integer, json(10), "number of random centers x", {}},
           {"x_radius", ParamType::Real, json(3.0), "centers are drawn from [-x_radius, x_radius]^d", {}},
           {"sphere_samples", ParamType::Integer, json(100000), "sphere sample size", {}},
       }},
      {"density_probe",
       "Monte-Carlo estimate of how often sampled x attain the sup (statistical evidence only)",
       {
           {"model", ParamType::Text, json("finite"), "finite point set or the C([0,1]) family", {"finite", "ck"}},
           {"dimension", ParamType::Integer, json(2), "dimension of the finite set", {}},
           {"points", ParamType::RealList, json({0.0, 0.0, 1.0, 0.0, 0.0, 1.0}), "finite set, flattened", {}},
           {"n_max", ParamType::Integer, json(10000), "enumerated elements of the C([0,1]) family", {}},
           {"perturbation", ParamType::Text, json("zero"), "perturbation f",
            {"zero", "norm_of", "one_minus_norm_plus"}},
           {"box_lower", ParamType::RealList, json({-3.0, -3.0}), "sampling box, finite model", {}},
           {"box_upper", ParamType::RealList, json({3.0, 3.0}), "sampling box, finite model", {}},
           {"samples", ParamType::Integer, json(1000), "number of sampled x", {}},
           {"schedule", ParamType::IntegerList, json({100, 1000, 10000}), "truncations for each verdict", {}},
           {"eta", ParamType::Real, json(1e-9), "attainment tolerance", {}},
           {"expect_attained_fraction", ParamType::Real, std::nullopt, "assert this attained fraction", {}},
       }},
  };
  return specs;
}

const ScenarioSpec* find_scenario(std::string_view name) {
  for (const ScenarioSpec& s : registered_scenarios()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

std::string join_messages(const std::vector<ConfigDiagnostic>& diagnostics) {
  std::string out;
  for (const ConfigDiagnostic& d : diagnostics) {
    if (!out.empty()) out += "; ";
    out += d.field + ": " + d.message;
  }
  return out;
}

bool matches_type(const json& v, ParamType type) {
  auto all_of = [&](auto pred) {
    if (!v.is_array()) return false;
    for (const json& e : v) {
      if (!pred(e)) return false;
    }
    return true;
  };
  switch (type) {
    case ParamType::Integer: return v.is_number_integer();
    case ParamType::Real: return v.is_number();
    case ParamType::IntegerList: return all_of([](const json& e) { return e.is_number_integer(); });
    case ParamType::RealList: return all_of([](const json& e) { return e.is_number(); });
    case ParamType::Text: return v.is_string();
  }
  return false;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<Vector> unflatten(const std::vector<double>& flat, std::size_t d, const char* what) {
  if (d == 0 || flat.empty() || flat.size() % d != 0) {
    throw Error(ErrorCode::InvalidParameter, std::string(what) + " length must be a positive multiple of dimension");
  }
  std::vector<Vector> out;
  for (std::size_t i = 0; i < flat.size(); i += d) {
    out.push_back(Vector::coordinates({flat.begin() + static_cast<std::ptrdiff_t>(i),
                                       flat.begin() + static_cast<std::ptrdiff_t>(i + d)}));
  }
  return out;
}

Perturbation perturbation_from(const std::string& name) {
  if (name == "norm_of") return Perturbation::norm_of();
  if (name == "one_minus_norm_plus") return Perturbation::one_minus_norm_plus();
  return Perturbation::zero();
}

ScenarioReport dispatch(const RunConfig& config, std::map<std::string, std::string>& csv) {
  const json& p = config.parameters;
  if (config.scenario == "ck_counterexample") {
    const auto offsets = p["x_offsets"].get<std::vector<double>>();
    const auto slopes = p["x_slopes"].get<std::vector<double>>();
    if (offsets.size() != slopes.size()) {
      throw Error(ErrorCode::InvalidParameter, "x_offsets and x_slopes must have equal length");
    }
    std::vector<GridFunction> xs;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      xs.push_back(GridFunction({0.0, 1.0}, {offsets[i], offsets[i] + slopes[i]}));
    }
    return run_ck_counterexample(p["n_max"].get<std::size_t>(), p["schedule"].get<std::vector<std::size_t>>(), xs);
  }
  if (config.scenario == "fk_remark") {
    const double lo = p["x_min"].get<double>();
    const double hi = p["x_max"].get<double>();
    const auto count = p["x_count"].get<std::size_t>();
    if (count < 2) throw Error(ErrorCode::InvalidParameter, "x_count must be >= 2");
    std::vector<double> grid;
    for (std::size_t i = 0; i < count; ++i) {
      grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    return run_fk_remark(p["k_values"].get<std::vector<int>>(), grid);
  }
  if (config.scenario == "extreme_points") {
    const auto d = p["dimension"].get<std::size_t>();
    SetDescriptor set = EuclideanBall{d};
    if (p["set"] == "polytope") set = Polytope{unflatten(p["vertices"].get<std::vector<double>>(), d, "vertices")};
    ObjectiveSpec objective;
    const std::string name = p["objective"].get<std::string>();
    if (name == "square") {
      objective.kind = ObjectiveSpec::Kind::Square;
    } else {
      objective.kind = name == "distance" ? ObjectiveSpec::Kind::Distance : ObjectiveSpec::Kind::DistancePlusNorm;
      objective.x = Vector::coordinates(p["x"].get<std::vector<double>>());
    }
    std::vector<std::uint64_t> seeds;
    for (std::int64_t i = 0; i < p["seed_count"].get<std::int64_t>(); ++i) seeds.push_back(config.seed + i);
    return extreme_points_scenario(set, objective, p["sample_counts"].get<std::vector<std::size_t>>(), seeds);
  }
  if (config.scenario == "ball_remark") {
    const auto d = p["dimension"].get<std::size_t>();
    const double radius = p["x_radius"].get<double>();
    std::vector<Vector> xs;
    for (std::size_t j = 0; j < p["x_count"].get<std::size_t>(); ++j) {
      SampleStream stream(config.seed, j);
      std::vector<double> c(d);
      for (double& v : c) v = stream.uniform(-radius, radius);
      xs.push_back(Vector::coordinates(std::move(c)));
    }
    return run_ball_remark(d, xs, config.seed, p["sphere_samples"].get<std::size_t>());
  }

  // density_probe
  const Perturbation f = perturbation_from(p["perturbation"].get<std::string>());
  const auto schedule = p["schedule"].get<std::vector<std::size_t>>();
  const bool ck = p["model"] == "ck";
  if (schedule.empty()) throw Error(ErrorCode::InvalidParameter, "schedule must not be empty");
  if (ck && p["n_max"].get<std::size_t>() < schedule.back()) {
    throw Error(ErrorCode::InvalidParameter, "n_max must cover the last truncation of the schedule");
  }
  const CompactSetModel model =
      ck ? build_ck_family(p["n_max"].get<std::size_t>())
         : CompactSetModel::finite(unflatten(p["points"].get<std::vector<double>>(),
                                             p["dimension"].get<std::size_t>(), "points"));
  const NormedSpace space =
      ck ? NormedSpace::sup_norm_on_unit_interval() : NormedSpace::euclidean(p["dimension"].get<std::size_t>());
  const ProbeRegion region = ck ? ProbeRegion::grid_ball(2.0, 1.0, 11)
                                : ProbeRegion::box(p["box_lower"].get<std::vector<double>>(),
                                                   p["box_upper"].get<std::vector<double>>());
  const DensityProbeReport probe = density_probe(space, model, f, region, p["samples"].get<std::size_t>(),
                                                 config.seed, p["eta"].get<double>(), schedule);
  ScenarioReport report;
  report.scenario_name = "density_probe";
  report.parameters = p;
  report.details = probe;
  report.expect_at_most("attained fraction is at most 1", 1.0, probe.attained_fraction);
  report.expect_at_least("attained fraction is at least 0", 0.0, probe.attained_fraction);
  if (p.contains("expect_attained_fraction")) {
    report.expect_near("attained fraction matches the expectation", p["expect_attained_fraction"].get<double>(),
                       probe.attained_fraction, 0.0);
  }
  csv["density_samples"] = density_probe_csv(probe);
  return report;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigDiagnostic> diagnostics)
    : Error(ErrorCode::ConfigError, join_messages(diagnostics)), diagnostics_(std::move(diagnostics)) {}

RunConfig parse_config(std::string_view source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::vector<ConfigDiagnostic>{{"<document>", std::string("not valid JSON: ") + e.what()}});
  }
  if (!doc.is_object()) throw ConfigError(std::vector<ConfigDiagnostic>{{"<document>", "top level must be an object"}});

  std::vector<ConfigDiagnostic> problems;
  static const std::set<std::string> known_keys{"scenario", "parameters", "seed", "output_dir", "formats"};
  for (const auto& [key, value] : doc.items()) {
    if (!known_keys.contains(key)) problems.push_back({key, "unknown key"});
  }

  RunConfig config;
  const ScenarioSpec* spec = nullptr;
  if (!doc.contains("scenario")) {
    problems.push_back({"scenario", "missing"});
  } else if (!doc["scenario"].is_string()) {
    problems.push_back({"scenario", "must be a string"});
  } else {
    config.scenario = doc["scenario"].get<std::string>();
    spec = find_scenario(config.scenario);
    if (!spec) problems.push_back({"scenario", "unknown scenario '" + config.scenario + "'"});
  }

  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<std::int64_t>() < 0)) {
      problems.push_back({"seed", "must be a nonnegative integer"});
    } else {
      config.seed = s.get<std::uint64_t>();
    }
  }
  if (doc.contains("output_dir")) {
    if (doc["output_dir"].is_string()) config.output_dir = doc["output_dir"].get<std::string>();
    else problems.push_back({"output_dir", "must be a string"});
  }
  if (doc.contains("formats")) {
    const json& f = doc["formats"];
    config.formats.clear();
    if (!f.is_array() || f.empty()) {
      problems.push_back({"formats", "must be a nonempty array"});
    } else {
      for (const json& e : f) {
        if (e == "json" || e == "csv") config.formats.push_back(e.get<std::string>());
        else problems.push_back({"formats", "entries must be \"json\" or \"csv\""});
      }
    }
  }

  json given = json::object();
  if (doc.contains("parameters")) {
    if (doc["parameters"].is_object()) given = doc["parameters"];
    else problems.push_back({"parameters", "must be an object"});
  }
  if (spec) {
    for (const auto& [key, value] : given.items()) {
      const auto it = std::find_if(spec->params.begin(), spec->params.end(),
                                   [&](const ParamSpec& ps) { return ps.name == key; });
      if (it == spec->params.end()) {
        problems.push_back({"parameters." + key, "unknown parameter for " + spec->name});
      } else if (!matches_type(value, it->type)) {
        problems.push_back({"parameters." + key, "expected " + to_string(it->type)});
      } else if (!it->choices.empty() &&
                 std::find(it->choices.begin(), it->choices.end(), value.get<std::string>()) == it->choices.end()) {
        problems.push_back({"parameters." + key, "not one of the allowed values"});
      } else {
        config.parameters[key] = value;
      }
    }
    for (const ParamSpec& ps : spec->params) {
      if (!config.parameters.contains(ps.name) && ps.default_value) config.parameters[ps.name] = *ps.default_value;
    }
  }

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return config;
}

json config_to_json(const RunConfig& config) {
  json j{{"scenario", config.scenario},
         {"parameters", config.parameters},
         {"seed", config.seed},
         {"formats", config.formats}};
  j["output_dir"] = config.output_dir ? json(*config.output_dir) : json(nullptr);
  return j;
}

ReportEnvelope run(const RunConfig& config) {
  ReportEnvelope env;
  env.tool_version = std::string(kToolVersion);
  env.config = config_to_json(config);
  env.started_at = utc_timestamp();

  ScenarioReport report;
  try {
    report = dispatch(config, env.csv_documents);
  } catch (const Error& e) {
    report = ScenarioReport{};
    report.scenario_name = config.scenario;
    report.parameters = config.parameters;
    report.record_failure(std::string(to_string(e.code())), e.what());
    env.csv_documents.clear();
  }
  for (const DataSeries& s : report.artifacts) env.csv_documents[s.name] = to_csv(s);
  env.overall_pass = report.passed();
  env.payload = report;
  env.finished_at = utc_timestamp();
  return env;
}

json envelope_to_json(const ReportEnvelope& envelope) {
  return json{{"tool_version", envelope.tool_version},
              {"config", envelope.config},
              {"timestamps", {{"start", envelope.started_at}, {"end", envelope.finished_at}}},
              {"payload", envelope.payload},
              {"overall_pass", envelope.overall_pass}};
}

std::vector<std::filesystem::path> emit(const ReportEnvelope& envelope, const std::vector<std::string>& formats,
                                        const std::filesystem::path& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec || !std::filesystem::is_directory(output_dir)) {
    throw Error(ErrorCode::IoError, "cannot create output directory " + output_dir.string());
  }
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  };

  std::vector<std::filesystem::path> paths;
  const auto wants = [&](const char* f) { return std::find(formats.begin(), formats.end(), f) != formats.end(); };
  if (wants("json")) {
    const auto path = output_dir / "report.json";
    write(path, envelope_to_json(envelope).dump(2) + "\n");
    paths.push_back(path);
  }
  if (wants("csv")) {
    for (const auto& [name, text] : envelope.csv_documents) {
      const auto path = output_dir / (name + ".csv");
      write(path, text);
      paths.push_back(path);
    }
  }
  return paths;
}

}  // namespace farpoint
