#include "farpoint/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "farpoint/attainment.hpp"
#include "farpoint/error.hpp"
#include "farpoint/perturbation.hpp"
#include "farpoint/random.hpp"
#include "farpoint/serialization.hpp"
#include "farpoint/set_models.hpp"

namespace farpoint {

std::string to_string(Relation relation) {
  switch (relation) {
    case Relation::Near: return "near";
    case Relation::Below: return "below";
    case Relation::AtMost: return "at_most";
    case Relation::AtLeast: return "at_least";
    case Relation::Matches: return "matches";
  }
  return "unknown";
}

void ScenarioReport::expect_near(std::string description, double expected, double observed, double tolerance) {
  const bool pass = std::abs(expected - observed) <= tolerance;
  assertions.push_back({std::move(description), Relation::Near, expected, observed, tolerance, pass});
}

void ScenarioReport::expect_below(std::string description, double bound, double observed) {
  assertions.push_back({std::move(description), Relation::Below, bound, observed, 0.0, observed < bound});
}

void ScenarioReport::expect_at_most(std::string description, double bound, double observed, double tolerance) {
  const bool pass = observed <= bound + tolerance;
  assertions.push_back({std::move(description), Relation::AtMost, bound, observed, tolerance, pass});
}

void ScenarioReport::expect_at_least(std::string description, double bound, double observed, double tolerance) {
  const bool pass = observed >= bound - tolerance;
  assertions.push_back({std::move(description), Relation::AtLeast, bound, observed, tolerance, pass});
}

void ScenarioReport::expect_match(std::string description, std::string expected, std::string observed) {
  const bool pass = expected == observed;
  assertions.push_back({std::move(description), Relation::Matches, std::move(expected), std::move(observed), 0.0, pass});
}

void ScenarioReport::record_failure(std::string description, std::string detail) {
  assertions.push_back({std::move(description), Relation::Matches, std::string("ok"), std::move(detail), 0.0, false});
}

bool ScenarioReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

// ---------------------------------------------------------------------------
// C([0, 1]) counterexample

ScenarioReport run_ck_counterexample(std::size_t n_max, const std::vector<std::size_t>& schedule,
                                     const std::vector<GridFunction>& x_choices) {
  if (schedule.empty()) throw Error(ErrorCode::InvalidParameter, "schedule must not be empty");
  if (n_max < *std::max_element(schedule.begin(), schedule.end())) {
    throw Error(ErrorCode::InvalidParameter, "n_max must cover the largest truncation");
  }
  const NormedSpace space = NormedSpace::sup_norm_on_unit_interval();
  const Vector two(GridFunction::constant(2.0));
  for (const GridFunction& x : x_choices) {
    const double offset = norm(space, Vector(x) - two);
    if (offset > 1.0) {
      throw Error(ErrorCode::InvalidX, "||x - 2|| = " + format_number(offset) + " exceeds 1");
    }
  }

  ScenarioReport report;
  report.scenario_name = "ck_counterexample";
  report.parameters = {{"n_max", n_max}, {"schedule", schedule}};
  for (const GridFunction& x : x_choices) report.parameters["x_choices"].push_back(Vector(x));

  const CompactSetModel model = build_ck_family(n_max);
  const Perturbation f = Perturbation::one_minus_norm_plus();

  double worst_norm_error = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    worst_norm_error = std::max(worst_norm_error, std::abs(norm(space, Vector(ck_bump(n))) - 1.0));
  }
  report.expect_near("||x_n|| = 1 for every n <= n_max", 0.0, worst_norm_error, 0.0);

  // Pointwise convergence to 0: x_n(t) = 0 as soon as 1/n <= t, and x_n(0) = 0.
  std::size_t pointwise_violations = 0;
  for (double t : {0.0, 0.001, 0.05, 0.3, 0.75, 1.0}) {
    for (std::size_t n = 1; n <= n_max; ++n) {
      const bool must_vanish = t == 0.0 || static_cast<double>(n) * t >= 1.0;
      if (must_vanish && element(model, n).function()(t) != 0.0) ++pointwise_violations;
    }
  }
  report.expect_near("elements vanish at fixed t once n >= 1/t", 0.0, static_cast<double>(pointwise_violations), 0.0);

  std::vector<Vector> elements;
  elements.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) elements.push_back(element(model, n));

  for (std::size_t j = 0; j < x_choices.size(); ++j) {
    const Vector x(x_choices[j]);
    const std::string tag = "x[" + std::to_string(j) + "]: ";
    const double x_norm = norm(space, x);
    const double target = x_norm + 1.0;

    DataSeries series;
    series.name = j == 0 ? "fx_vs_n" : "fx_vs_n_x" + std::to_string(j);
    series.columns = {"n", "f_x"};
    double max_fx = -std::numeric_limits<double>::infinity();
    double closed_form_error = 0.0;
    const bool constant_x = x.function().min_value() == x.function().max_value();
    for (std::size_t n = 1; n <= n_max; ++n) {
      const Vector& z = elements[n - 1];
      const double fx = distance(space, x, z) + norm(space, z);
      max_fx = std::max(max_fx, fx);
      if (constant_x) {
        const double expected = x_norm + 1.0 - 1.0 / static_cast<double>(n);
        closed_form_error = std::max(closed_form_error, std::abs(fx - expected));
      }
      series.rows.push_back({static_cast<double>(n), fx});
    }
    report.artifacts.push_back(std::move(series));

    report.expect_below(tag + "every enumerated f_x stays below ||x|| + 1", target, max_fx);
    if (constant_x) {
      report.expect_near(tag + "f_x(element(n)) = ||x|| + 1 - 1/n for every n", 0.0, closed_form_error, 1e-12);
    }
    const AttainmentRecord rec = eval_r(space, model, f, x, n_max);
    report.expect_near(tag + "upper end of the sup bracket is ||x|| + 1", target, rec.upper + 1.0, 1e-12);
    report.expect_at_least(tag + "enumerated sup approaches ||x|| + 1 within 1/n_max", target, max_fx,
                           1.0 / static_cast<double>(n_max) + 1e-12);

    const MembershipVerdict verdict = classify_membership(space, model, f, x, schedule);
    report.expect_match(tag + "verdict", "NotAttained", verdict_name(verdict));
    if (const auto* na = std::get_if<NotAttained>(&verdict)) {
      // On C the objective equals f_x - 1, so limit-point values shift by one.
      const double limit_fx = na->certificate.limit_point_values.front().value + 1.0;
      report.expect_near(tag + "f_x at the limit point 0 equals ||x||", x_norm, limit_fx, 1e-12);
      report.expect_near(tag + "certificate margin equals 1", 1.0, na->certificate.margin, 1e-9);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// f_k on C = [0, 1]

IntervalSupAnalysis analyze_interval_sup(double x, double endpoint_penalty) {
  if (!(endpoint_penalty >= 0.0)) throw Error(ErrorCode::InvalidParameter, "penalty must be nonnegative");
  IntervalSupAnalysis out;
  // For x >= 1/2 the farthest point of [0, 1] is 0, otherwise 1. Interior
  // points come arbitrarily close to that distance without reaching it, so
  // the supremum is the unpenalized endpoint distance.
  out.far_endpoint = x >= 0.5 ? 0.0 : 1.0;
  out.sup = std::abs(x - out.far_endpoint);
  if (endpoint_penalty == 0.0) {
    out.attained = true;
    out.attaining_z = out.far_endpoint;
  }
  return out;
}

ScenarioReport run_fk_remark(const std::vector<int>& k_values, const std::vector<double>& x_grid) {
  for (int k : k_values) {
    if (k < 1) throw Error(ErrorCode::InvalidParameter, "k must be >= 1");
  }
  ScenarioReport report;
  report.scenario_name = "fk_remark";
  report.parameters = {{"k_values", k_values}, {"x_grid", x_grid}};

  const NormedSpace line = NormedSpace::euclidean(1);
  auto value_at = [&](const Perturbation& f, double x, double z) {
    return objective(line, f, Vector::coordinates({x}), Vector::coordinates({z}));
  };

  DataSeries series{"fk_sup", {"x", "sup"}, {}};
  for (double x : x_grid) {
    const std::string tag = "x=" + format_number(x);
    const double expected_sup = std::max(std::abs(x), std::abs(x - 1.0));

    const IntervalSupAnalysis control = analyze_interval_sup(x, 0.0);
    const double control_value = value_at(Perturbation::zero(), x, control.attaining_z.value_or(0.0));
    report.expect_match(tag + " f=0: verdict", "Attained", control.attained ? "Attained" : "NotAttained");
    report.expect_near(tag + " f=0: value at the far endpoint equals the sup", expected_sup, control_value, 1e-15);
    series.rows.push_back({x, control.sup});

    for (int k : k_values) {
      const Perturbation fk = Perturbation::pair_indicator(k);
      const std::string ktag = tag + " k=" + std::to_string(k) + ": ";
      const IntervalSupAnalysis a = analyze_interval_sup(x, 1.0 / k);
      report.expect_near(ktag + "sup = max(|x|, |x - 1|)", expected_sup, a.sup, 1e-15);
      report.expect_match(ktag + "verdict", "NotAttained", a.attained ? "Attained" : "NotAttained");

      // Both endpoints fall short of the sup by exactly 1/k.
      const double best_endpoint = std::max(value_at(fk, x, 0.0), value_at(fk, x, 1.0));
      report.expect_near(ktag + "endpoints fall short by 1/k", a.sup - 1.0 / k, best_endpoint, 1e-12);

      // Interior points tending to the far endpoint approach the sup from below.
      const double direction = a.far_endpoint == 0.0 ? 1.0 : -1.0;
      double closest = -std::numeric_limits<double>::infinity();
      bool strictly_below = true;
      for (int m = 1; m <= 40; ++m) {
        const double z = a.far_endpoint + direction * std::ldexp(1.0, -m);
        const double v = value_at(fk, x, z);
        strictly_below = strictly_below && v < a.sup;
        closest = std::max(closest, v);
      }
      report.expect_near(ktag + "interior sequence approaches the sup", a.sup, closest, 1e-9);
      report.expect_match(ktag + "interior values stay below the sup", "true", strictly_below ? "true" : "false");
    }
  }
  report.artifacts.push_back(std::move(series));
  return report;
}

// ---------------------------------------------------------------------------
// Extreme points

std::string ObjectiveSpec::name() const {
  switch (kind) {
    case Kind::DistancePlusNorm: return "distance_plus_norm";
    case Kind::Distance: return "distance";
    case Kind::Square: return "square";
  }
  return "unknown";
}

namespace {

std::size_t set_dimension(const SetDescriptor& set) {
  if (const auto* p = std::get_if<Polytope>(&set)) {
    if (p->vertices.empty()) throw Error(ErrorCode::EmptySet, "polytope without vertices");
    const std::size_t d = p->vertices.front().dimension();
    for (const Vector& v : p->vertices) {
      if (!v.is_coordinates() || v.dimension() != d) {
        throw Error(ErrorCode::RepresentationMismatch, "polytope vertices must share one dimension");
      }
    }
    return d;
  }
  const std::size_t d = std::get<EuclideanBall>(set).dimension;
  if (d == 0) throw Error(ErrorCode::InvalidParameter, "ball dimension must be >= 1");
  return d;
}

void validate_objective(const ObjectiveSpec& objective, std::size_t d) {
  if (objective.kind == ObjectiveSpec::Kind::Square) {
    if (d != 1) throw Error(ErrorCode::InvalidObjective, "z^2 is only offered on the real line");
    return;
  }
  if (!objective.x || !objective.x->is_coordinates() || objective.x->dimension() != d) {
    throw Error(ErrorCode::InvalidObjective, "distance objectives need a center x of the set's dimension");
  }
}

double evaluate(const ObjectiveSpec& objective, const NormedSpace& space, const Vector& z) {
  switch (objective.kind) {
    case ObjectiveSpec::Kind::DistancePlusNorm:
      return distance(space, *objective.x, z) + norm(space, z);
    case ObjectiveSpec::Kind::Distance:
      return distance(space, *objective.x, z);
    case ObjectiveSpec::Kind::Square:
      return z.coords()[0] * z.coords()[0];
  }
  return 0.0;
}

std::vector<double> dirichlet_weights(SampleStream& s, std::size_t m) {
  std::vector<double> w(m);
  for (double& v : w) v = -std::log(1.0 - s.uniform01());
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= total;
  return w;
}

std::vector<double> unit_direction(SampleStream& s, std::size_t d) {
  std::vector<double> g(d);
  double len = 0.0;
  while (len == 0.0) {
    len = 0.0;
    for (double& v : g) {
      v = s.normal();
      len += v * v;
    }
    len = std::sqrt(len);
  }
  for (double& v : g) v /= len;
  return g;
}

// A point of the polytope. Half the draws are uniform convex combinations;
// the other half start at a random vertex and move a heavy-tailed fraction
// s = u^4 of the way toward such a combination, so the sample also fills in
// the neighbourhoods of the vertices.
Vector polytope_point(const Polytope& p, SampleStream& s) {
  const std::size_t m = p.vertices.size();
  const std::size_t d = p.vertices.front().dimension();
  const bool anchored = s.uniform01() < 0.5;
  const auto anchor = static_cast<std::size_t>(s.uniform_int(0, static_cast<std::int64_t>(m) - 1));
  const double shrink = std::pow(s.uniform01(), 4.0);
  std::vector<double> w = dirichlet_weights(s, m);
  if (anchored) {
    for (double& v : w) v *= shrink;
    w[anchor] += 1.0 - shrink;
  }
  std::vector<double> c(d, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    auto v = p.vertices[i].coords();
    for (std::size_t k = 0; k < d; ++k) c[k] += w[i] * v[k];
  }
  return Vector::coordinates(std::move(c));
}

Vector ball_point(std::size_t d, SampleStream& s) {
  std::vector<double> g = unit_direction(s, d);
  const double radius = std::pow(s.uniform01(), 1.0 / static_cast<double>(d));
  for (double& v : g) v *= radius;
  return Vector::coordinates(std::move(g));
}

// -x/||x||, or the first basis vector when x = 0.
Vector antipode(const Vector& x) {
  const NormedSpace space = NormedSpace::natural_for(x);
  const double n = norm(space, x);
  if (n == 0.0) return Vector::basis(x.dimension(), 0);
  return (-1.0 / n) * x;
}

}  // namespace

ExtremePointReport run_extreme_points(const SetDescriptor& set, const ObjectiveSpec& objective,
                                      std::size_t sample_count, std::uint64_t seed) {
  const std::size_t d = set_dimension(set);
  validate_objective(objective, d);
  const NormedSpace space = NormedSpace::euclidean(d);

  double best = -std::numeric_limits<double>::infinity();
  std::optional<Vector> best_point;
  if (const auto* p = std::get_if<Polytope>(&set)) {
    for (const Vector& v : p->vertices) {
      const double value = evaluate(objective, space, v);
      if (value > best) {
        best = value;
        best_point = v;
      }
    }
  } else {
    // On the unit sphere: ||x - z|| peaks at ||x|| + 1 for z = -x/||x||,
    // and z^2 peaks at 1.
    switch (objective.kind) {
      case ObjectiveSpec::Kind::DistancePlusNorm:
        best = norm(space, *objective.x) + 2.0;
        best_point = antipode(*objective.x);
        break;
      case ObjectiveSpec::Kind::Distance:
        best = norm(space, *objective.x) + 1.0;
        best_point = antipode(*objective.x);
        break;
      case ObjectiveSpec::Kind::Square:
        best = 1.0;
        best_point = Vector::basis(1, 0);
        break;
    }
  }

  double sampled = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sample_count; ++i) {
    SampleStream stream(seed, i);
    const Vector z = std::holds_alternative<Polytope>(set) ? polytope_point(std::get<Polytope>(set), stream)
                                                           : ball_point(d, stream);
    sampled = std::max(sampled, evaluate(objective, space, z));
  }
  return ExtremePointReport{set, objective.name(), best, *best_point, sampled, sample_count};
}

ScenarioReport extreme_points_scenario(const SetDescriptor& set, const ObjectiveSpec& objective,
                                       const std::vector<std::size_t>& sample_counts,
                                       const std::vector<std::uint64_t>& seeds) {
  ScenarioReport report;
  report.scenario_name = "extreme_points";
  report.parameters = {{"set", set}, {"objective", objective.name()}, {"sample_counts", sample_counts},
                       {"seeds", seeds}};
  if (objective.x) report.parameters["x"] = *objective.x;

  DataSeries series{"gap_vs_samples", {"samples", "mean_gap"}, {}};
  double previous_gap = std::numeric_limits<double>::infinity();
  for (std::size_t count : sample_counts) {
    double gap_sum = 0.0;
    double sup_extremes = 0.0;
    for (std::uint64_t seed : seeds) {
      const ExtremePointReport r = run_extreme_points(set, objective, count, seed);
      sup_extremes = r.sup_over_extremes;
      report.expect_at_most("samples=" + std::to_string(count) + " seed=" + std::to_string(seed) +
                                ": sample sup <= sup over extreme points",
                            r.sup_over_extremes, r.sup_over_dense_sample, 1e-12);
      gap_sum += r.sup_over_extremes - r.sup_over_dense_sample;
    }
    const double mean_gap = seeds.empty() ? 0.0 : gap_sum / static_cast<double>(seeds.size());
    series.rows.push_back({static_cast<double>(count), mean_gap});
    report.parameters["sup_over_extremes"] = sup_extremes;
    if (std::isfinite(previous_gap)) {
      report.expect_at_most("samples=" + std::to_string(count) + ": mean gap does not grow", previous_gap,
                            mean_gap, 1e-15);
    }
    previous_gap = mean_gap;
  }
  report.artifacts.push_back(std::move(series));
  return report;
}

// ---------------------------------------------------------------------------
// Unit ball remark

SphereSupEstimate estimate_sphere_sup(const Vector& x, std::size_t samples, std::uint64_t seed) {
  const std::size_t d = x.dimension();
  const NormedSpace space = NormedSpace::euclidean(d);
  if (samples < 1) throw Error(ErrorCode::InvalidParameter, "need at least one sphere sample");

  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_point;
  for (std::size_t i = 0; i < samples; ++i) {
    SampleStream stream(seed, i);
    std::vector<double> z = unit_direction(stream, d);
    const double value = distance(space, x, Vector::coordinates(z));
    if (value > best) {
      best = value;
      best_point = std::move(z);
    }
  }

  SphereSupEstimate out{best + 1.0, best, 0.0, 0.0, Vector::coordinates(best_point)};
  // Projected ascent for ||x - z|| on the sphere: step along (z - x)/||z - x||
  // and renormalise. Each step is kept only if it improves the value.
  std::vector<double> z = best_point;
  double value = best;
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<double> diff(d);
    double len = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      diff[k] = z[k] - x.coords()[k];
      len += diff[k] * diff[k];
    }
    len = std::sqrt(len);
    if (len == 0.0) break;
    std::vector<double> next(d);
    double next_len = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      next[k] = z[k] + diff[k] / len;
      next_len += next[k] * next[k];
    }
    next_len = std::sqrt(next_len);
    if (next_len == 0.0) break;
    for (double& c : next) c /= next_len;
    const double next_value = distance(space, x, Vector::coordinates(next));
    if (!(next_value > value)) break;
    value = next_value;
    z = std::move(next);
  }
  const Vector refined = Vector::coordinates(z);
  out.refined_distance = value;
  out.refined_distance_plus_norm = value + norm(space, refined);
  out.refined_point = refined;
  return out;
}

ScenarioReport run_ball_remark(std::size_t dimension, const std::vector<Vector>& x_samples, std::uint64_t seed,
                               std::size_t sphere_samples) {
  if (dimension < 1) throw Error(ErrorCode::InvalidParameter, "dimension must be >= 1");
  const NormedSpace space = NormedSpace::euclidean(dimension);
  for (const Vector& x : x_samples) space.require(x);

  ScenarioReport report;
  report.scenario_name = "ball_remark";
  report.parameters = {{"dimension", dimension}, {"seed", seed}, {"sphere_samples", sphere_samples}};
  report.parameters["x_samples"] = nlohmann::json::array();
  for (const Vector& x : x_samples) report.parameters["x_samples"].push_back(x);

  DataSeries series{"ball_sup", {"x_norm", "analytic_sup", "sphere_sup", "ball_sample_sup"}, {}};
  for (std::size_t j = 0; j < x_samples.size(); ++j) {
    const Vector& x = x_samples[j];
    const std::string tag = "x[" + std::to_string(j) + "]: ";
    const double x_norm = norm(space, x);
    const double analytic = x_norm + 2.0;

    const Vector witness = antipode(x);
    const double witness_value = distance(space, x, witness) + norm(space, witness);
    report.expect_near(tag + "value at -x/||x|| equals ||x|| + 2 (attained)", analytic, witness_value, 1e-12);

    const std::uint64_t stream_seed = seed + 7919 * j;
    const SphereSupEstimate sphere = estimate_sphere_sup(x, sphere_samples, stream_seed);
    report.expect_at_most(tag + "raw sphere sample never exceeds ||x|| + 2", analytic,
                          sphere.raw_distance_plus_norm, 1e-12);
    report.expect_near(tag + "sphere sup of ||x - z|| + ||z|| is ||x|| + 2", analytic,
                       sphere.refined_distance_plus_norm, 2e-3);
    report.expect_near(tag + "sphere sup of ||x - z|| is ||x|| + 1", x_norm + 1.0, sphere.refined_distance, 2e-3);
    report.expect_near(tag + "the two sphere sups differ by exactly 1", 1.0,
                       sphere.refined_distance_plus_norm - sphere.refined_distance, 1e-12);

    double ball_best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sphere_samples; ++i) {
      SampleStream stream(stream_seed ^ 0x5bd1e995ULL, i);
      const Vector z = ball_point(dimension, stream);
      ball_best = std::max(ball_best, distance(space, x, z) + norm(space, z));
    }
    report.expect_at_most(tag + "full-ball sample sup <= sphere sup", sphere.refined_distance_plus_norm,
                          ball_best, 1e-9);
    series.rows.push_back({x_norm, analytic, sphere.refined_distance_plus_norm, ball_best});
  }
  report.artifacts.push_back(std::move(series));
  return report;
}

}  // namespace farpoint
