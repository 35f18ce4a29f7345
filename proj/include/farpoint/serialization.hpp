#pragma once

#include <string>

#include <json.hpp>

#include "farpoint/attainment.hpp"
#include "farpoint/generic_structure.hpp"
#include "farpoint/scenarios.hpp"
#include "farpoint/space.hpp"

namespace farpoint {

// nlohmann::json conversions. Field names follow the type definitions.
void to_json(nlohmann::json& j, const Vector& v);
void to_json(nlohmann::json& j, const Functional& g);
void to_json(nlohmann::json& j, const AttainmentRecord& rec);
void to_json(nlohmann::json& j, const NonAttainmentCertificate& cert);
void to_json(nlohmann::json& j, const MembershipVerdict& verdict);
void to_json(nlohmann::json& j, const SubgradientSet& set);
void to_json(nlohmann::json& j, const FnProbeRecord& rec);
void to_json(nlohmann::json& j, const LauStepRecord& rec);
void to_json(nlohmann::json& j, const ProbeRegion& region);
void to_json(nlohmann::json& j, const DensityProbeReport& report);
void to_json(nlohmann::json& j, const Assertion& a);
void to_json(nlohmann::json& j, const ScenarioReport& report);
void to_json(nlohmann::json& j, const SetDescriptor& set);
void to_json(nlohmann::json& j, const ExtremePointReport& report);

/// Shortest round-trip decimal form, independent of the C locale.
std::string format_number(double value);

/// Header row plus one line per row, comma separated, '\n' line ends.
std::string to_csv(const DataSeries& series);

/// One row per sample: index, verdict, r_lower, r_upper, best_index.
std::string density_probe_csv(const DensityProbeReport& report);

}  // namespace farpoint
