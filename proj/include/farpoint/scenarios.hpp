#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "farpoint/space.hpp"

namespace farpoint {

enum class Relation {
  Near,          // |expected - observed| <= tolerance
  Below,         // observed < expected
  AtMost,        // observed <= expected + tolerance
  AtLeast,       // observed >= expected - tolerance
  Matches,       // exact flag / label match
};

std::string to_string(Relation relation);

struct Assertion {
  std::string description;
  Relation relation = Relation::Near;
  std::variant<double, std::string> expected;
  std::variant<double, std::string> observed;
  double tolerance = 0.0;
  bool pass = false;
};

/// A named table for plotting; written as CSV by the report layer.
struct DataSeries {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ScenarioReport {
  std::string scenario_name;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<Assertion> assertions;
  std::vector<DataSeries> artifacts;
  /// Free-form structured result (for example a probe report); null if unused.
  nlohmann::json details;

  void expect_near(std::string description, double expected, double observed, double tolerance);
  void expect_below(std::string description, double bound, double observed);
  void expect_at_most(std::string description, double bound, double observed, double tolerance = 0.0);
  void expect_at_least(std::string description, double bound, double observed, double tolerance = 0.0);
  void expect_match(std::string description, std::string expected, std::string observed);
  /// Records a refused or failed run as a failing assertion.
  void record_failure(std::string description, std::string detail);

  bool passed() const;
};

/// The C([0, 1]) counterexample with f(z) = (1 - ||z||)^+. Every x must lie
/// in the closed ball of radius 1 around the constant 2; otherwise InvalidX.
ScenarioReport run_ck_counterexample(std::size_t n_max, const std::vector<std::size_t>& schedule,
                                     const std::vector<GridFunction>& x_choices);

/// sup { |x - z| - p * 1_{0,1}(z) : z in [0, 1] } worked out in closed form.
struct IntervalSupAnalysis {
  double sup = 0.0;
  /// The endpoint farthest from x: 0 when x >= 1/2, else 1.
  double far_endpoint = 0.0;
  bool attained = false;
  std::optional<double> attaining_z;
};

/// endpoint_penalty is 1/k for f_k and 0 for the unperturbed control.
IntervalSupAnalysis analyze_interval_sup(double x, double endpoint_penalty);

ScenarioReport run_fk_remark(const std::vector<int>& k_values, const std::vector<double>& x_grid);

struct Polytope {
  std::vector<Vector> vertices;
};

struct EuclideanBall {
  std::size_t dimension = 1;
};

using SetDescriptor = std::variant<Polytope, EuclideanBall>;

/// Convex objectives for the extreme-point check.
struct ObjectiveSpec {
  enum class Kind { DistancePlusNorm, Distance, Square };
  Kind kind = Kind::DistancePlusNorm;
  /// Center x for the distance objectives.
  std::optional<Vector> x;

  std::string name() const;
};

struct ExtremePointReport {
  SetDescriptor descriptor;
  std::string objective;
  double sup_over_extremes = 0.0;
  Vector extreme_argmax;
  double sup_over_dense_sample = 0.0;
  std::size_t sample_count = 0;
};

/// Compares the supremum over the extreme points (vertex enumeration or the
/// closed form on the unit sphere) with the supremum over a seeded sample of
/// the whole set. Throws InvalidObjective for objectives that do not fit the
/// set.
ExtremePointReport run_extreme_points(const SetDescriptor& set, const ObjectiveSpec& objective,
                                      std::size_t sample_count, std::uint64_t seed);

/// Runs run_extreme_points over every (count, seed) pair and asserts the
/// sample never beats the extremes and the mean gap does not grow with count.
ScenarioReport extreme_points_scenario(const SetDescriptor& set, const ObjectiveSpec& objective,
                                       const std::vector<std::size_t>& sample_counts,
                                       const std::vector<std::uint64_t>& seeds);

/// sup over the unit sphere of ||x - z|| and ||x - z|| + ||z||: best of
/// `samples` uniform sphere points followed by projected ascent.
struct SphereSupEstimate {
  double raw_distance_plus_norm = 0.0;
  double raw_distance = 0.0;
  double refined_distance_plus_norm = 0.0;
  double refined_distance = 0.0;
  Vector refined_point;
};

SphereSupEstimate estimate_sphere_sup(const Vector& x, std::size_t samples, std::uint64_t seed);

/// C = closed unit ball of R^d: checks sup ||x - z|| + ||z|| = ||x|| + 2,
/// attained at -x/||x|| (the first basis vector when x = 0).
ScenarioReport run_ball_remark(std::size_t dimension, const std::vector<Vector>& x_samples, std::uint64_t seed,
                               std::size_t sphere_samples = 100000);

}  // namespace farpoint
