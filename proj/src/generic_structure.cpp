#include "farpoint/generic_structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "farpoint/error.hpp"
#include "farpoint/random.hpp"

namespace farpoint {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kGridBudget = 200000;

void require_euclidean_finite(const NormedSpace& space, const CompactSetModel& model) {
  if (space.kind() != NormedSpace::Kind::Euclidean) {
    throw Error(ErrorCode::UnsupportedSpace, "subdifferentials are only computed in Euclidean spaces");
  }
  if (!model.is_finite()) {
    throw Error(ErrorCode::UnsupportedCombination, "subdifferentials are only computed for finite sets");
  }
  if (model.empty()) throw Error(ErrorCode::EmptySet, "subdifferential over an empty set");
}

// Elements of the model that the gap functions range over.
std::vector<Vector> candidate_points(const CompactSetModel& model, std::size_t N) {
  std::vector<Vector> pts;
  const std::size_t count = std::min(N, model.size());
  for (std::size_t i = 0; i < count; ++i) pts.push_back(element(model, model.first_index() + i));
  for (const Vector& p : model.limit_points()) pts.push_back(p);
  return pts;
}

struct GapContext {
  const NormedSpace& space;
  const Perturbation& f;
  const Vector& x;
  std::vector<Vector> differences;  // x - z
  std::vector<double> penalties;    // f(z)
  double r_lower = kNegInf;

  GapContext(const NormedSpace& s, const CompactSetModel& model, const Perturbation& pf, const Vector& px,
             std::size_t N)
      : space(s), f(pf), x(px) {
    for (const Vector& z : candidate_points(model, N)) {
      differences.push_back(x - z);
      penalties.push_back(perturbation_eval(f, space, z));
      r_lower = std::max(r_lower, norm(space, differences.back()) - penalties.back());
    }
  }

  double gap(const Functional& xstar) const {
    double best = kNegInf;
    for (std::size_t i = 0; i < differences.size(); ++i) {
      best = std::max(best, apply_functional(xstar, differences[i]) - penalties[i]);
    }
    return r_lower - best;
  }
};

std::size_t binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c > 1e18 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(std::llround(c));
}

// Calls visit(weights) for every composition of `resolution` into parts.size() parts.
template <typename Visit>
void for_each_composition(std::vector<int>& parts, std::size_t slot, int remaining, Visit&& visit) {
  if (slot + 1 == parts.size()) {
    parts[slot] = remaining;
    visit(parts);
    return;
  }
  for (int c = remaining; c >= 0; --c) {
    parts[slot] = c;
    for_each_composition(parts, slot + 1, remaining - c, visit);
  }
}

}  // namespace

SubgradientSet subgradient_extremes(const NormedSpace& space, const CompactSetModel& model,
                                    const Perturbation& f, const Vector& x, double eta) {
  require_euclidean_finite(space, model);
  SubgradientSet out;
  for (const ArgmaxEntry& e : argmax_set(space, model, f, x, model.size(), eta)) {
    const Vector diff = x - e.element;
    out.maximizer_indices.push_back(e.index);
    if (norm(space, diff) == 0.0) {
      out.hull_marker = true;
      continue;
    }
    out.extremes.push_back(norming_functional(space, diff));
  }
  return out;
}

double g_gap(const Functional& xstar, const NormedSpace& space, const CompactSetModel& model,
             const Perturbation& f, const Vector& x, std::size_t N) {
  if (xstar.dual_norm_bound() > 1.0 + 1e-12) {
    throw Error(ErrorCode::InvalidParameter, "g_gap needs a functional in the dual unit ball");
  }
  space.require(x);
  return GapContext(space, model, f, x, N).gap(xstar);
}

FnProbeRecord fn_membership(const NormedSpace& space, const CompactSetModel& model, const Perturbation& f,
                            const Vector& x, int n, int resolution) {
  if (n < 1 || resolution < 1) throw Error(ErrorCode::InvalidParameter, "fn_membership needs n, resolution >= 1");
  const SubgradientSet sub = subgradient_extremes(space, model, f, x);
  const GapContext ctx(space, model, f, x, kWholePrefix);
  const double threshold = 1.0 / n;

  FnProbeRecord rec;
  rec.n = n;
  rec.min_gap_found = kNegInf;
  auto consider = [&](const Functional& g) {
    const double gap = ctx.gap(g);
    if (gap > rec.min_gap_found) {
      rec.min_gap_found = gap;
      if (gap >= threshold) rec.witness_functional = g;
    }
  };

  if (sub.hull_marker) {
    // The subdifferential is the whole dual ball; probe its center, the
    // coordinate poles and the regular extremes.
    const std::size_t d = space.dimension();
    consider(Functional::dual(std::vector<double>(d, 0.0)));
    for (std::size_t i = 0; i < d; ++i) {
      for (double s : {1.0, -1.0}) {
        std::vector<double> e(d, 0.0);
        e[i] = s;
        consider(Functional::dual(std::move(e)));
      }
    }
    for (const Functional& g : sub.extremes) consider(g);
    rec.resolution = 0;
  } else {
    const std::size_t k = sub.extremes.size();
    int res = k == 1 ? 1 : resolution;
    while (res > 1 && binomial(static_cast<std::size_t>(res) + k - 1, k - 1) > kGridBudget) --res;
    rec.resolution = res;
    const std::size_t d = space.dimension();
    std::vector<int> parts(k, 0);
    for_each_composition(parts, 0, res, [&](const std::vector<int>& w) {
      std::vector<double> c(d, 0.0);
      for (std::size_t j = 0; j < k; ++j) {
        if (w[j] == 0) continue;
        const double weight = static_cast<double>(w[j]) / res;
        auto g = sub.extremes[j].coefficients();
        for (std::size_t i = 0; i < d; ++i) c[i] += weight * g[i];
      }
      consider(Functional::dual(std::move(c)));
    });
  }
  rec.member = rec.min_gap_found >= threshold;
  if (!rec.member) rec.witness_functional.reset();
  return rec;
}

LauStepRecord lau_step(const NormedSpace& space, const CompactSetModel& model, const Perturbation& f,
                       const Vector& y0, double ball_radius, int n, std::size_t N) {
  if (!(ball_radius > 0.0)) throw Error(ErrorCode::InvalidParameter, "ball radius must be positive");
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "lau_step needs n >= 1");
  if (model.empty()) throw Error(ErrorCode::EmptySet, "lau_step over an empty set");
  space.require(y0);

  const double a = alpha(model);
  const double y_norm = norm(space, y0);
  if (a + y_norm == 0.0) {
    throw Error(ErrorCode::InvalidParameter, "alpha + ||y0|| vanishes; the step is undefined");
  }
  const double lambda = ball_radius / (a + y_norm);
  const double eps = lambda / (n * (1.0 + lambda));

  const AttainmentRecord at_y = eval_r(space, model, f, y0, N);
  const double threshold = at_y.upper - eps;
  const std::size_t count = std::min(N, model.size());
  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < count && !chosen; ++i) {
    const std::size_t index = model.first_index() + i;
    if (objective(space, f, y0, element(model, index)) > threshold) chosen = index;
  }
  if (!chosen) {
    throw Error(ErrorCode::NoEpsilonMaximizer,
                "no element within eps of r(y0) among the first " + std::to_string(count) + "; increase N");
  }

  const Vector z0 = element(model, *chosen);
  const Vector x0 = linear_combination(1.0 + lambda, y0, -lambda, z0);
  const double f_z0 = perturbation_eval(f, space, z0);
  const double r_x0 = eval_r(space, model, f, x0, N).lower;

  LauChecks checks;
  checks.in_ball = distance(space, x0, y0) <= ball_radius * (1.0 + 1e-12);
  checks.growth_lhs = r_x0;
  checks.growth_rhs = (1.0 + lambda) * (at_y.lower - eps) + lambda * f_z0;
  checks.descent_lhs = at_y.lower - r_x0;
  checks.descent_rhs = eps - lambda / (1.0 + lambda) * (r_x0 + f_z0);
  checks.descent_holds = checks.descent_lhs <= checks.descent_rhs + 1e-12;

  return LauStepRecord{y0, z0, *chosen, n, lambda, eps, x0, a, ball_radius, checks};
}

ProbeRegion ProbeRegion::box(std::vector<double> lower, std::vector<double> upper) {
  if (lower.empty() || lower.size() != upper.size()) {
    throw Error(ErrorCode::InvalidParameter, "box bounds must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) throw Error(ErrorCode::InvalidParameter, "box lower bound exceeds upper bound");
  }
  return ProbeRegion{std::move(lower), std::move(upper), {}};
}

ProbeRegion ProbeRegion::grid_ball(double center, double radius, std::size_t count) {
  if (count < 2 || !(radius >= 0.0)) throw Error(ErrorCode::InvalidParameter, "grid ball needs count >= 2, radius >= 0");
  ProbeRegion r;
  for (std::size_t i = 0; i < count; ++i) {
    r.breakpoints.push_back(i + 1 == count ? 1.0 : static_cast<double>(i) / static_cast<double>(count - 1));
    r.lower.push_back(center - radius);
    r.upper.push_back(center + radius);
  }
  return r;
}

Vector ProbeRegion::draw(SampleStream& stream) const {
  std::vector<double> values(lower.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = stream.uniform(lower[i], upper[i]);
  if (breakpoints.empty()) return Vector::coordinates(std::move(values));
  return Vector(GridFunction(breakpoints, std::move(values)));
}

DensityProbeReport density_probe(const NormedSpace& space, const CompactSetModel& model,
                                 const Perturbation& f, const ProbeRegion& region, std::size_t samples,
                                 std::uint64_t seed, double eta, std::span<const std::size_t> schedule) {
  if (samples < 1) throw Error(ErrorCode::InvalidParameter, "density_probe needs samples >= 1");
  if (schedule.empty()) throw Error(ErrorCode::InvalidParameter, "density_probe needs a schedule");
  const bool track_g = space.kind() == NormedSpace::Kind::Euclidean && model.is_finite();
  const std::size_t final_n = schedule.back();

  DensityProbeReport report;
  report.region = region;
  report.samples = samples;
  report.seed = seed;
  std::size_t unique = 0;
  std::size_t g_count = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    SampleStream stream(seed, i);
    const Vector x = region.draw(stream);
    const MembershipVerdict verdict = classify_membership(space, model, f, x, schedule, eta);

    ProbeSample row;
    row.index = i;
    row.verdict = verdict_name(verdict);
    try {
      const AttainmentRecord rec = eval_r(space, model, f, x, final_n);
      row.r_lower = rec.lower;
      row.r_upper = rec.upper;
      row.best_index = rec.best_index;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnsupportedCombination) throw;
      const auto top = argmax_set(space, model, f, x, final_n, eta);
      row.r_lower = top.front().value;
      row.best_index = top.front().index;
    }
    row.unique_argmax = argmax_set(space, model, f, x, final_n, eta).size() == 1;
    if (track_g) {
      row.g_condition = fn_membership(space, model, f, x, 1, 20).min_gap_found <= 1e-9;
      g_count += *row.g_condition ? 1 : 0;
    }

    if (std::holds_alternative<Attained>(verdict)) ++report.per_sample_verdicts.attained;
    else if (std::holds_alternative<NotAttained>(verdict)) ++report.per_sample_verdicts.not_attained;
    else ++report.per_sample_verdicts.undetermined;
    unique += row.unique_argmax ? 1 : 0;
    report.rows.push_back(std::move(row));
  }
  const auto total = static_cast<double>(samples);
  report.attained_fraction = static_cast<double>(report.per_sample_verdicts.attained) / total;
  report.unique_argmax_fraction = static_cast<double>(unique) / total;
  if (track_g) report.g_condition_fraction = static_cast<double>(g_count) / total;
  return report;
}

}  // namespace farpoint
