#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "farpoint/perturbation.hpp"
#include "farpoint/set_models.hpp"
#include "farpoint/space.hpp"

namespace farpoint {

inline constexpr double kDefaultEta = 1e-9;
inline constexpr std::array<std::size_t, 3> kDefaultSchedule{100, 1000, 10000};

/// Bracket on r(x) = sup_C ||x - z|| - f(z) from the first N enumerated
/// elements plus the limit points, closed above by the model's tail bound.
struct AttainmentRecord {
  double lower = 0.0;
  double upper = 0.0;
  /// Prefix maximizer; ties go to the smallest index.
  std::size_t best_index = 0;
  /// Equal to lower.
  double best_value = 0.0;
  std::size_t prefix_size = 0;
  /// Set when a limit point strictly beats every enumerated element.
  std::optional<std::size_t> best_limit_point;
};

AttainmentRecord eval_r(const NormedSpace& space, const CompactSetModel& model, const Perturbation& f,
                        const Vector& x, std::size_t N);

struct ArgmaxEntry {
  std::size_t index;
  Vector element;
  double value;
};

/// Enumerated elements within eta of the prefix maximum, in index order.
std::vector<ArgmaxEntry> argmax_set(const NormedSpace& space, const CompactSetModel& model,
                                    const Perturbation& f, const Vector& x, std::size_t N, double eta);

struct LimitPointValue {
  Vector point;
  double value;
};

struct NonAttainmentCertificate {
  /// Prefix argmax at each truncation of the schedule; strictly increasing.
  std::vector<std::size_t> escape_indices;
  /// Upper end of the final bracket (the final lower end when no tail bound
  /// is registered).
  double sup_limit = 0.0;
  std::vector<LimitPointValue> limit_point_values;
  /// sup_limit minus the best limit-point value.
  double margin = 0.0;
};

struct Attained {
  Vector witness;
  double value;
  std::optional<std::size_t> witness_index;
  std::optional<std::size_t> witness_limit_point;
};

struct NotAttained {
  NonAttainmentCertificate certificate;
};

struct Undetermined {
  std::string reason;
};

using MembershipVerdict = std::variant<Attained, NotAttained, Undetermined>;

std::string verdict_name(const MembershipVerdict& verdict);

/// Decides whether x lies in D(C, f) from finite evidence.
///
/// Attained: an element or limit point reaches upper - eta and, for an
/// element, the argmax is the same at the last two truncations.
/// NotAttained: the argmax index strictly increases along the schedule and
/// every limit point sits at least eta below the final lower bound.
/// Anything else is Undetermined.
MembershipVerdict classify_membership(const NormedSpace& space, const CompactSetModel& model,
                                      const Perturbation& f, const Vector& x,
                                      std::span<const std::size_t> schedule, double eta = kDefaultEta);

}  // namespace farpoint
