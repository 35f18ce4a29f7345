#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "farpoint/attainment.hpp"
#include "farpoint/perturbation.hpp"
#include "farpoint/random.hpp"
#include "farpoint/set_models.hpp"
#include "farpoint/space.hpp"

namespace farpoint {

inline constexpr std::size_t kWholePrefix = std::numeric_limits<std::size_t>::max();

/// Extreme points of the subdifferential of r at x for a finite set in R^d:
/// one unit vector (x - z*) / ||x - z*|| per maximizer z*. When some
/// maximizer coincides with x the subdifferential is the whole dual ball and
/// hull_marker is set instead.
struct SubgradientSet {
  std::vector<Functional> extremes;
  std::vector<std::size_t> maximizer_indices;
  bool hull_marker = false;
};

/// Throws UnsupportedSpace outside Euclidean space and UnsupportedCombination
/// for models other than finite sets.
SubgradientSet subgradient_extremes(const NormedSpace& space, const CompactSetModel& model,
                                    const Perturbation& f, const Vector& x, double eta = kDefaultEta);

/// r_lower(x) - max_z (<x*, x - z> - f(z)) over the first N elements and the
/// limit points. Nonnegative up to rounding whenever ||x*|| <= 1.
double g_gap(const Functional& xstar, const NormedSpace& space, const CompactSetModel& model,
             const Perturbation& f, const Vector& x, std::size_t N = kWholePrefix);

struct FnProbeRecord {
  int n = 1;
  bool member = false;
  std::optional<Functional> witness_functional;
  /// Largest gap met during the search.
  double min_gap_found = 0.0;
  /// Barycentric resolution actually searched.
  int resolution = 0;
};

/// Searches conv(extremes) on a barycentric grid for a subgradient whose
/// gap is at least 1/n. The resolution is lowered automatically when the
/// grid would exceed a fixed point budget; the record reports what was used.
FnProbeRecord fn_membership(const NormedSpace& space, const CompactSetModel& model, const Perturbation& f,
                            const Vector& x, int n, int resolution = 100);

struct LauChecks {
  bool in_ball = false;
  double growth_lhs = 0.0;
  double growth_rhs = 0.0;
  /// r(y0) - r(x0) and the bound eps - lambda/(1+lambda) (r(x0) + f(z0))
  /// that it stays under.
  double descent_lhs = 0.0;
  double descent_rhs = 0.0;
  bool descent_holds = false;
};

struct LauStepRecord {
  Vector y0;
  Vector z0;
  std::size_t z0_index = 0;
  int n = 1;
  double lambda = 0.0;
  double epsilon = 0.0;
  Vector x0;
  double alpha = 0.0;
  double ball_radius = 0.0;
  LauChecks checks;
};

/// The outward move x0 = y0 + lambda (y0 - z0) with
/// lambda = radius / (alpha + ||y0||), eps = lambda / (n (1 + lambda)) and z0
/// the first element within eps of r(y0). Throws NoEpsilonMaximizer when the
/// prefix of length N holds no such element.
LauStepRecord lau_step(const NormedSpace& space, const CompactSetModel& model, const Perturbation& f,
                       const Vector& y0, double ball_radius, int n, std::size_t N = kWholePrefix);

/// Axis-aligned sampling box. With empty breakpoints it describes points of
/// R^d; otherwise it describes grid functions whose value at breakpoint i
/// lies in [lower[i], upper[i]].
struct ProbeRegion {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> breakpoints;

  static ProbeRegion box(std::vector<double> lower, std::vector<double> upper);
  /// Grid functions center + u with |u| <= radius at `count` equally spaced
  /// breakpoints of [0, 1].
  static ProbeRegion grid_ball(double center, double radius, std::size_t count);

  Vector draw(SampleStream& stream) const;
};

struct VerdictCounts {
  std::size_t attained = 0;
  std::size_t not_attained = 0;
  std::size_t undetermined = 0;
};

struct ProbeSample {
  std::size_t index = 0;
  std::string verdict;
  double r_lower = 0.0;
  std::optional<double> r_upper;
  std::size_t best_index = 0;
  bool unique_argmax = false;
  std::optional<bool> g_condition;
};

/// Statistical evidence only: fractions over samples, not a density proof.
struct DensityProbeReport {
  ProbeRegion region;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double attained_fraction = 0.0;
  double unique_argmax_fraction = 0.0;
  /// Fraction of samples meeting the G-condition; finite Euclidean sets only.
  std::optional<double> g_condition_fraction;
  VerdictCounts per_sample_verdicts;
  std::vector<ProbeSample> rows;
};

DensityProbeReport density_probe(const NormedSpace& space, const CompactSetModel& model,
                                 const Perturbation& f, const ProbeRegion& region, std::size_t samples,
                                 std::uint64_t seed, double eta = kDefaultEta,
                                 std::span<const std::size_t> schedule = kDefaultSchedule);

}  // namespace farpoint
