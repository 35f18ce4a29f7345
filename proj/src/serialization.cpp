#include "farpoint/serialization.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace farpoint {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json assertion_value(const std::variant<double, std::string>& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

}  // namespace

void to_json(json& j, const Vector& v) {
  if (v.is_coordinates()) {
    j = json(std::vector<double>(v.coords().begin(), v.coords().end()));
    return;
  }
  const GridFunction& f = v.function();
  j = json{{"breakpoints", std::vector<double>(f.breakpoints().begin(), f.breakpoints().end())},
           {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

void to_json(json& j, const Functional& g) {
  if (g.is_dual_coordinates()) {
    j = json{{"kind", "DualCoordinates"},
             {"coefficients", std::vector<double>(g.coefficients().begin(), g.coefficients().end())},
             {"dual_norm_bound", g.dual_norm_bound()}};
  } else {
    j = json{{"kind", "SignedPointMass"},
             {"location", g.point_mass().location},
             {"sign", g.point_mass().sign},
             {"dual_norm_bound", g.dual_norm_bound()}};
  }
}

void to_json(json& j, const AttainmentRecord& rec) {
  j = json{{"lower", rec.lower},
           {"upper", rec.upper},
           {"best_index", rec.best_index},
           {"best_value", rec.best_value},
           {"prefix_size", rec.prefix_size},
           {"best_limit_point", rec.best_limit_point ? json(*rec.best_limit_point) : json(nullptr)}};
}

void to_json(json& j, const NonAttainmentCertificate& cert) {
  json limits = json::array();
  for (const LimitPointValue& lp : cert.limit_point_values) {
    limits.push_back(json{{"point", lp.point}, {"value", lp.value}});
  }
  j = json{{"escape_indices", cert.escape_indices},
           {"sup_limit", cert.sup_limit},
           {"limit_point_values", limits},
           {"margin", cert.margin}};
}

void to_json(json& j, const MembershipVerdict& verdict) {
  if (const auto* a = std::get_if<Attained>(&verdict)) {
    j = json{{"kind", "Attained"},
             {"witness", a->witness},
             {"value", a->value},
             {"witness_index", a->witness_index ? json(*a->witness_index) : json(nullptr)},
             {"witness_limit_point", a->witness_limit_point ? json(*a->witness_limit_point) : json(nullptr)}};
  } else if (const auto* n = std::get_if<NotAttained>(&verdict)) {
    j = json{{"kind", "NotAttained"}, {"certificate", n->certificate}};
  } else {
    j = json{{"kind", "Undetermined"}, {"reason", std::get<Undetermined>(verdict).reason}};
  }
}

void to_json(json& j, const SubgradientSet& set) {
  j = json{{"extremes", set.extremes}, {"maximizer_indices", set.maximizer_indices}, {"hull_marker", set.hull_marker}};
}

void to_json(json& j, const FnProbeRecord& rec) {
  j = json{{"n", rec.n},
           {"member", rec.member},
           {"witness_functional", rec.witness_functional ? json(*rec.witness_functional) : json(nullptr)},
           {"min_gap_found", rec.min_gap_found},
           {"resolution", rec.resolution}};
}

void to_json(json& j, const LauStepRecord& rec) {
  j = json{{"y0", rec.y0},
           {"z0", rec.z0},
           {"z0_index", rec.z0_index},
           {"n", rec.n},
           {"lambda", rec.lambda},
           {"epsilon", rec.epsilon},
           {"x0", rec.x0},
           {"alpha", rec.alpha},
           {"ball_radius", rec.ball_radius},
           {"checks",
            {{"in_ball", rec.checks.in_ball},
             {"growth_lhs", rec.checks.growth_lhs},
             {"growth_rhs", rec.checks.growth_rhs},
             {"descent_lhs", rec.checks.descent_lhs},
             {"descent_rhs", rec.checks.descent_rhs},
             {"descent_holds", rec.checks.descent_holds}}}};
}

void to_json(json& j, const ProbeRegion& region) {
  j = json{{"lower", region.lower}, {"upper", region.upper}, {"breakpoints", region.breakpoints}};
}

void to_json(json& j, const DensityProbeReport& report) {
  j = json{{"region", report.region},
           {"samples", report.samples},
           {"seed", report.seed},
           {"attained_fraction", report.attained_fraction},
           {"unique_argmax_fraction", report.unique_argmax_fraction},
           {"g_condition_fraction", optional_number(report.g_condition_fraction)},
           {"per_sample_verdicts",
            {{"attained", report.per_sample_verdicts.attained},
             {"not_attained", report.per_sample_verdicts.not_attained},
             {"undetermined", report.per_sample_verdicts.undetermined}}},
           {"evidence", "statistical"}};
}

void to_json(json& j, const Assertion& a) {
  j = json{{"description", a.description},
           {"relation", to_string(a.relation)},
           {"expected", assertion_value(a.expected)},
           {"observed", assertion_value(a.observed)},
           {"tolerance", a.tolerance},
           {"pass", a.pass}};
}

void to_json(json& j, const ScenarioReport& report) {
  json artifacts = json::array();
  for (const DataSeries& s : report.artifacts) {
    artifacts.push_back(json{{"name", s.name}, {"columns", s.columns}, {"row_count", s.rows.size()}});
  }
  j = json{{"scenario_name", report.scenario_name},
           {"parameters", report.parameters},
           {"assertions", report.assertions},
           {"artifacts", artifacts},
           {"pass", report.passed()}};
  if (!report.details.is_null()) j["details"] = report.details;
}

void to_json(json& j, const SetDescriptor& set) {
  if (const auto* p = std::get_if<Polytope>(&set)) {
    j = json{{"kind", "polytope"}, {"vertices", p->vertices}};
  } else {
    j = json{{"kind", "euclidean_ball"}, {"dimension", std::get<EuclideanBall>(set).dimension}};
  }
}

void to_json(json& j, const ExtremePointReport& report) {
  j = json{{"set", report.descriptor},
           {"objective", report.objective},
           {"sup_over_extremes", report.sup_over_extremes},
           {"extreme_argmax", report.extreme_argmax},
           {"sup_over_dense_sample", report.sup_over_dense_sample},
           {"sample_count", report.sample_count}};
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string to_csv(const DataSeries& series) {
  std::ostringstream out;
  for (std::size_t i = 0; i < series.columns.size(); ++i) out << (i ? "," : "") << series.columns[i];
  out << '\n';
  for (const auto& row : series.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  return out.str();
}

std::string density_probe_csv(const DensityProbeReport& report) {
  std::ostringstream out;
  out << "index,verdict,r_lower,r_upper,best_index\n";
  for (const ProbeSample& row : report.rows) {
    out << row.index << ',' << row.verdict << ',' << format_number(row.r_lower) << ','
        << (row.r_upper ? format_number(*row.r_upper) : std::string()) << ',' << row.best_index << '\n';
  }
  return out.str();
}

}  // namespace farpoint
