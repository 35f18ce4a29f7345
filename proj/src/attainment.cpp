#include "farpoint/attainment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "farpoint/error.hpp"

namespace farpoint {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Objective values of the first `count` enumerated elements, in index order.
std::vector<double> scan_prefix(const NormedSpace& space, const CompactSetModel& model,
                                const Perturbation& f, const Vector& x, std::size_t count) {
  std::vector<double> values(count);
  const std::size_t first = model.first_index();
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = objective(space, f, x, element(model, first + i));
  }
  return values;
}

std::vector<double> scan_limits(const NormedSpace& space, const CompactSetModel& model,
                                const Perturbation& f, const Vector& x) {
  std::vector<double> values;
  for (const Vector& p : model.limit_points()) values.push_back(objective(space, f, x, p));
  return values;
}

// Position of the first maximum among values[0, count).
std::size_t first_argmax(const std::vector<double>& values, std::size_t count) {
  return static_cast<std::size_t>(std::max_element(values.begin(), values.begin() + count) -
                                  values.begin());
}

}  // namespace

AttainmentRecord eval_r(const NormedSpace& space, const CompactSetModel& model, const Perturbation& f,
                        const Vector& x, std::size_t N) {
  if (N < 1) throw Error(ErrorCode::InvalidParameter, "eval_r needs N >= 1");
  space.require(x);
  if (model.empty() && model.limit_points().empty()) throw Error(ErrorCode::EmptySet, "r over an empty set");

  const std::size_t count = std::min(N, model.size());
  const std::vector<double> values = scan_prefix(space, model, f, x, count);

  AttainmentRecord rec;
  rec.prefix_size = count;
  rec.lower = kNegInf;
  if (count > 0) {
    const std::size_t pos = first_argmax(values, count);
    rec.best_index = model.first_index() + pos;
    rec.lower = values[pos];
  }
  const std::vector<double> limits = scan_limits(space, model, f, x);
  for (std::size_t i = 0; i < limits.size(); ++i) {
    if (limits[i] > rec.lower) {
      rec.lower = limits[i];
      rec.best_limit_point = i;
    }
  }
  rec.best_value = rec.lower;
  const double tail = objective_tail_bound(model, space, f, x, std::max<std::size_t>(count, 1));
  rec.upper = std::max(rec.lower, tail);
  return rec;
}

std::vector<ArgmaxEntry> argmax_set(const NormedSpace& space, const CompactSetModel& model,
                                    const Perturbation& f, const Vector& x, std::size_t N, double eta) {
  if (!(eta > 0.0)) throw Error(ErrorCode::InvalidParameter, "argmax_set needs eta > 0");
  if (N < 1) throw Error(ErrorCode::InvalidParameter, "argmax_set needs N >= 1");
  space.require(x);
  if (model.empty()) throw Error(ErrorCode::EmptySet, "argmax over an empty set");

  const std::size_t count = std::min(N, model.size());
  const std::vector<double> values = scan_prefix(space, model, f, x, count);
  const double top = values[first_argmax(values, count)];
  std::vector<ArgmaxEntry> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (values[i] >= top - eta) {
      const std::size_t index = model.first_index() + i;
      out.push_back({index, element(model, index), values[i]});
    }
  }
  return out;
}

std::string verdict_name(const MembershipVerdict& verdict) {
  if (std::holds_alternative<Attained>(verdict)) return "Attained";
  if (std::holds_alternative<NotAttained>(verdict)) return "NotAttained";
  return "Undetermined";
}

MembershipVerdict classify_membership(const NormedSpace& space, const CompactSetModel& model,
                                      const Perturbation& f, const Vector& x,
                                      std::span<const std::size_t> schedule, double eta) {
  if (schedule.empty() || schedule.front() < 1) return Undetermined{"schedule must be nonempty and start at N >= 1"};
  if (std::adjacent_find(schedule.begin(), schedule.end(), std::greater_equal<>()) != schedule.end()) {
    return Undetermined{"schedule must be strictly increasing"};
  }
  if (!(eta > 0.0)) return Undetermined{"eta must be positive"};
  if (model.empty()) return Undetermined{"model has no enumerable elements"};

  const std::size_t first = model.first_index();
  const std::size_t final_count = std::min(schedule.back(), model.size());
  const std::vector<double> values = scan_prefix(space, model, f, x, final_count);

  std::vector<std::size_t> argmax_positions;
  for (std::size_t N : schedule) argmax_positions.push_back(first_argmax(values, std::min(N, model.size())));
  const std::size_t final_pos = argmax_positions.back();
  const double prefix_max = values[final_pos];

  const std::vector<double> limits = scan_limits(space, model, f, x);
  double final_lower = prefix_max;
  std::optional<std::size_t> best_limit;
  for (std::size_t i = 0; i < limits.size(); ++i) {
    if (limits[i] > final_lower) {
      final_lower = limits[i];
      best_limit = i;
    }
  }

  std::optional<double> upper;
  try {
    upper = std::max(final_lower, objective_tail_bound(model, space, f, x, final_count));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedCombination) throw;
  }

  if (upper) {
    if (best_limit) {
      if (final_lower >= *upper - eta) {
        const Vector& p = model.limit_points()[*best_limit];
        return Attained{p, final_lower, std::nullopt, best_limit};
      }
    } else if (prefix_max >= *upper - eta) {
      const bool stable =
          argmax_positions.size() < 2 || argmax_positions[argmax_positions.size() - 2] == final_pos;
      if (stable) {
        const std::size_t index = first + final_pos;
        return Attained{element(model, index), prefix_max, index, std::nullopt};
      }
      return Undetermined{"near-maximal element found but the argmax moved at the last truncation"};
    }
  }

  const bool escaping =
      argmax_positions.size() >= 2 &&
      std::adjacent_find(argmax_positions.begin(), argmax_positions.end(), std::greater_equal<>()) ==
          argmax_positions.end();
  if (!escaping) {
    return Undetermined{upper ? "no element reaches the upper bracket and the argmax does not escape"
                              : "no tail bound registered and the argmax does not escape"};
  }
  if (limits.empty()) return Undetermined{"argmax escapes but the model declares no limit point"};
  const double best_limit_value = *std::max_element(limits.begin(), limits.end());
  if (best_limit_value > final_lower - eta) {
    return Undetermined{"a limit point comes within eta of the supremum"};
  }

  NonAttainmentCertificate cert;
  for (std::size_t pos : argmax_positions) cert.escape_indices.push_back(first + pos);
  cert.sup_limit = upper.value_or(final_lower);
  for (std::size_t i = 0; i < limits.size(); ++i) {
    cert.limit_point_values.push_back({model.limit_points()[i], limits[i]});
  }
  cert.margin = cert.sup_limit - best_limit_value;
  return NotAttained{std::move(cert)};
}

}  // namespace farpoint
