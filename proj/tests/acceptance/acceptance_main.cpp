// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "farpoint/attainment.hpp"
#include "farpoint/generic_structure.hpp"
#include "farpoint/random.hpp"
#include "farpoint/report.hpp"
#include "farpoint/scenarios.hpp"
#include "farpoint/serialization.hpp"
#include "farpoint/set_models.hpp"

using namespace farpoint;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

const NormedSpace kSup = NormedSpace::sup_norm_on_unit_interval();
constexpr std::array<std::size_t, 3> kSchedule{100, 1000, 10000};

// f_x(z) = ||x - z|| + ||z||
double fx(const NormedSpace& space, const Vector& x, const Vector& z) {
  return distance(space, x, z) + norm(space, z);
}

std::vector<Vector> random_points(SampleStream& s, std::size_t count, std::size_t d, double half_width) {
  std::vector<Vector> pts;
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<double> c(d);
    for (double& v : c) v = s.uniform(-half_width, half_width);
    pts.push_back(Vector::coordinates(std::move(c)));
  }
  return pts;
}

// 1. C([0,1]) counterexample at n_max = 10^4, x = 2.
void criterion_1(Outcome& out) {
  const Stopwatch clock;
  const CompactSetModel m = build_ck_family(10000);
  const Vector x(GridFunction::constant(2.0));
  double worst = 0.0;
  for (std::size_t n = 1; n <= 10000; ++n) {
    worst = std::max(worst, std::abs(fx(kSup, x, element(m, n)) - (3.0 - 1.0 / static_cast<double>(n))));
  }
  const MembershipVerdict v = classify_membership(kSup, m, Perturbation::one_minus_norm_plus(), x, kSchedule);
  const double seconds = clock.seconds();

  out.require(worst <= 1e-12, "f_x(element n) = 3 - 1/n within 1e-12");
  out.require(std::holds_alternative<NotAttained>(v), "verdict NotAttained (got " + verdict_name(v) + ")");
  if (const auto* na = std::get_if<NotAttained>(&v)) {
    const auto& cert = na->certificate;
    const double limit_fx = fx(kSup, x, cert.limit_point_values.at(0).point);
    out.require(std::abs(limit_fx - 2.0) <= 1e-12, "limit-point f_x = 2");
    out.require(cert.margin >= 1.0 - 1e-9, "margin >= 1 - 1e-9");
    out.detail << " limit_fx=" << format_number(limit_fx) << " margin=" << format_number(cert.margin);
  }
  out.require(seconds < 5.0, "runtime < 5 s");
  out.detail << " max_err=" << format_number(worst) << " runtime=" << seconds << "s";
}

// 2. 100 random x in the ball of radius 1 around 2, 11-breakpoint grids.
void criterion_2(Outcome& out) {
  const CompactSetModel m = build_ck_family(10000);
  const ProbeRegion region = ProbeRegion::grid_ball(2.0, 1.0, 11);
  const std::uint64_t seed = 2024;
  const DensityProbeReport rep =
      density_probe(kSup, m, Perturbation::one_minus_norm_plus(), region, 100, seed, kDefaultEta, kSchedule);
  out.require(rep.per_sample_verdicts.not_attained == 100, "all 100 samples NotAttained");
  out.require(rep.attained_fraction == 0.0, "attained_fraction == 0.0");

  bool strict = true;
  for (std::size_t i = 0; i < 100; ++i) {
    SampleStream stream(seed, i);
    const Vector x = region.draw(stream);
    const double bound = norm(kSup, x) + 1.0;
    double best = -INFINITY;
    for (std::size_t n = 1; n <= m.size(); ++n) best = std::max(best, fx(kSup, x, element(m, n)));
    strict = strict && best < bound;
  }
  out.require(strict, "max enumerated f_x < ||x|| + 1");
  out.detail << " not_attained=" << rep.per_sample_verdicts.not_attained
             << " attained_fraction=" << format_number(rep.attained_fraction);
}

// 3. Same family, f = ||z||: attained at the zero function.
void criterion_3(Outcome& out) {
  const Stopwatch clock;
  const CompactSetModel m = build_ck_family(10000);
  const Vector x(GridFunction::constant(2.0));
  const MembershipVerdict v = classify_membership(kSup, m, Perturbation::norm_of(), x, kSchedule);
  const double seconds = clock.seconds();
  out.require(std::holds_alternative<Attained>(v), "verdict Attained (got " + verdict_name(v) + ")");
  if (const auto* a = std::get_if<Attained>(&v)) {
    out.require(norm(kSup, a->witness) == 0.0, "witness is the zero function");
    out.require(std::abs(a->value - 2.0) <= 1e-12, "value 2 within 1e-12");
    out.detail << " value=" << format_number(a->value);
  }
  out.require(seconds < 2.0, "runtime < 2 s");
  out.detail << " runtime=" << seconds << "s";
}

// 4. Outward step and subgradient inequality on random Euclidean instances.
void criterion_4(Outcome& out) {
  const Stopwatch clock;
  std::size_t step_ok = 0;
  std::size_t subgradient_ok = 0;
  double worst_subgradient = -INFINITY;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    SampleStream s(4004, i);
    const auto d = static_cast<std::size_t>(s.uniform_int(1, 5));
    const auto k = static_cast<std::size_t>(s.uniform_int(1, 20));
    const CompactSetModel m = CompactSetModel::finite(random_points(s, k, d, 2.0));
    const Perturbation f = s.uniform01() < 0.5 ? Perturbation::zero() : Perturbation::norm_of();
    const NormedSpace e = NormedSpace::euclidean(d);
    const Vector x = random_points(s, 1, d, 4.0).front();
    const double radius = s.uniform(0.01, 3.0);
    const int n = static_cast<int>(s.uniform_int(1, 100));

    const LauStepRecord step = lau_step(e, m, f, x, radius, n);
    if (step.checks.in_ball && step.checks.growth_lhs >= step.checks.growth_rhs - 1e-9) ++step_ok;

    const double r_x = eval_r(e, m, f, x, m.size()).lower;
    const SubgradientSet sub = subgradient_extremes(e, m, f, x, 1e-12);
    bool holds = !sub.extremes.empty();
    for (int t = 0; t < 100; ++t) {
      std::vector<double> dir(d);
      for (double& v : dir) v = s.normal();
      const Vector y = linear_combination(1.0, x, s.uniform(0.0, 3.0), Vector::coordinates(dir));
      const double r_y = eval_r(e, m, f, y, m.size()).lower;
      for (const Functional& g : sub.extremes) {
        const double excess = apply_functional(g, y - x) - (r_y - r_x);
        worst_subgradient = std::max(worst_subgradient, excess);
        holds = holds && excess <= 1e-9;
      }
    }
    if (holds) ++subgradient_ok;
  }
  const double seconds = clock.seconds();
  out.require(step_ok == 1000, "in_ball and growth in 100% of instances");
  out.require(subgradient_ok == 1000, "subgradient inequality on every direction");
  out.require(seconds < 30.0, "runtime < 30 s");
  out.detail << " step_ok=" << step_ok << "/1000 subgradient_ok=" << subgradient_ok
             << "/1000 worst_excess=" << format_number(worst_subgradient) << " runtime=" << seconds << "s";
}

// 5. F_n at x = (0, 1), C = {(+-1, 0)}.
void criterion_5(Outcome& out) {
  const NormedSpace e2 = NormedSpace::euclidean(2);
  const CompactSetModel m =
      CompactSetModel::finite({Vector::coordinates({1.0, 0.0}), Vector::coordinates({-1.0, 0.0})});
  const Vector x = Vector::coordinates({0.0, 1.0});
  const SubgradientSet sub = subgradient_extremes(e2, m, Perturbation::zero(), x);
  const auto a = sub.extremes.at(0).coefficients();
  const auto b = sub.extremes.at(1).coefficients();
  const Functional mid = Functional::dual({(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0});
  const double gap = g_gap(mid, e2, m, Perturbation::zero(), x);
  out.require(std::abs(gap - 1.0 / std::numbers::sqrt2) <= 1e-9, "midpoint gap = 1/sqrt2");
  out.require(fn_membership(e2, m, Perturbation::zero(), x, 2).member, "x in F_2");

  std::size_t outside = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    SampleStream s(5005, i);
    // |p1| log-uniform in [1e-6, 1], p2 uniform.
    const double p1 = std::pow(10.0, s.uniform(-6.0, 0.0)) * (s.uniform01() < 0.5 ? -1.0 : 1.0);
    const double p2 = s.uniform(-0.5, 0.5);
    const Vector xp = Vector::coordinates({p1, 1.0 + p2});
    if (!fn_membership(e2, m, Perturbation::zero(), xp, 2).member) ++outside;
  }
  out.require(outside == 1000, "all perturbations leave F_2");
  out.detail << " gap=" << format_number(gap) << " outside=" << outside << "/1000";
}

// 6. Extreme points: random polytopes and the unit ball.
void criterion_6(Outcome& out) {
  bool dominated = true;
  double worst_gap = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    SampleStream s(6006, i);
    const auto d = static_cast<std::size_t>(s.uniform_int(1, 4));
    const auto k = static_cast<std::size_t>(s.uniform_int(static_cast<std::int64_t>(d) + 1, 10));
    const Polytope p{random_points(s, k, d, 1.0)};
    ObjectiveSpec obj;
    const auto pick = s.uniform_int(0, d == 1 ? 2 : 1);
    obj.kind = pick == 0 ? ObjectiveSpec::Kind::DistancePlusNorm
               : pick == 1 ? ObjectiveSpec::Kind::Distance
                           : ObjectiveSpec::Kind::Square;
    if (obj.kind != ObjectiveSpec::Kind::Square) obj.x = random_points(s, 1, d, 3.0).front();
    for (std::size_t count : {1000u, 10000u, 100000u}) {
      const ExtremePointReport rep = run_extreme_points(p, obj, count, 60 + i);
      dominated = dominated && rep.sup_over_dense_sample <= rep.sup_over_extremes + 1e-12;
      if (count == 100000) worst_gap = std::max(worst_gap, rep.sup_over_extremes - rep.sup_over_dense_sample);
    }
  }
  out.require(dominated, "sample sup <= vertex sup + 1e-12");
  out.require(worst_gap <= 5e-3, "gap at 1e5 samples <= 5e-3");

  double worst_ball = 0.0;
  bool ball_reports = true;
  for (std::uint64_t j = 0; j < 10; ++j) {
    SampleStream s(6060, j);
    const auto d = static_cast<std::size_t>(s.uniform_int(2, 10));
    const Vector x = random_points(s, 1, d, 3.0).front();
    const double analytic = norm(NormedSpace::euclidean(d), x) + 2.0;
    const SphereSupEstimate est = estimate_sphere_sup(x, 100000, 600 + j);
    worst_ball = std::max(worst_ball, std::abs(est.refined_distance_plus_norm - analytic));
    ball_reports = ball_reports && run_ball_remark(d, {x}, 600 + j, 20000).passed();
  }
  out.require(worst_ball <= 2e-3, "|ball sup - (||x|| + 2)| <= 2e-3");
  out.require(ball_reports, "ball scenario assertions");
  out.detail << " worst_polytope_gap=" << format_number(worst_gap) << " worst_ball_err=" << format_number(worst_ball);
}

// 7. f_k on [0, 1].
void criterion_7(Outcome& out) {
  const Stopwatch clock;
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(-1.0 + 3.0 * i / 100.0);
  const ScenarioReport rep = run_fk_remark({1, 2, 5}, grid);
  std::size_t not_attained = 0;
  std::size_t control = 0;
  for (const Assertion& a : rep.assertions) {
    if (a.relation != Relation::Matches || !a.pass) continue;
    const auto& expected = std::get<std::string>(a.expected);
    if (expected == "NotAttained") ++not_attained;
    if (expected == "Attained") ++control;
  }
  const double seconds = clock.seconds();
  out.require(not_attained == 303, "NotAttained for all 303 (x, k)");
  out.require(control == 101, "control Attained for all 101 x");
  out.require(rep.passed(), "all scenario assertions");
  out.require(seconds < 1.0, "runtime < 1 s");
  out.detail << " not_attained=" << not_attained << "/303 control=" << control << "/101 runtime=" << seconds << "s";
}

// 8. r is 1-Lipschitz and convex.
void criterion_8(Outcome& out) {
  double worst_lip = -INFINITY;
  double worst_convex = -INFINITY;
  const std::array<Perturbation, 3> menu{Perturbation::zero(), Perturbation::norm_of(),
                                         Perturbation::one_minus_norm_plus()};
  for (std::uint64_t i = 0; i < 10000; ++i) {
    SampleStream s(8008, i);
    const auto d = static_cast<std::size_t>(s.uniform_int(1, 5));
    const auto k = static_cast<std::size_t>(s.uniform_int(1, 20));
    const CompactSetModel m = CompactSetModel::finite(random_points(s, k, d, 2.0));
    const Perturbation& f = menu[static_cast<std::size_t>(s.uniform_int(0, 2))];
    const NormedSpace e = NormedSpace::euclidean(d);
    const Vector x = random_points(s, 1, d, 4.0).front();
    const Vector y = random_points(s, 1, d, 4.0).front();
    const double t = s.uniform01();
    const auto r = [&](const Vector& v) { return eval_r(e, m, f, v, k).lower; };
    const double rx = r(x);
    const double ry = r(y);
    worst_lip = std::max(worst_lip, std::abs(rx - ry) - distance(e, x, y));
    worst_convex = std::max(worst_convex, r(linear_combination(t, x, 1.0 - t, y)) - (t * rx + (1.0 - t) * ry));
  }
  out.require(worst_lip <= 1e-9, "1-Lipschitz within 1e-9");
  out.require(worst_convex <= 1e-9, "convexity within 1e-9");
  out.detail << " worst_lipschitz_excess=" << format_number(worst_lip)
             << " worst_convexity_excess=" << format_number(worst_convex);
}

// 9. Repeated runs give identical JSON once timestamps are masked.
void criterion_9(Outcome& out) {
  const std::vector<std::string> configs{
      R"({"scenario": "density_probe", "seed": 99, "parameters": {"samples": 200}})",
      R"({"scenario": "density_probe", "seed": 7, "parameters": {"model": "ck", "perturbation": "one_minus_norm_plus", "samples": 10}})",
      R"({"scenario": "ck_counterexample", "parameters": {"n_max": 2000, "schedule": [10, 100, 1000, 2000]}})",
      R"({"scenario": "fk_remark"})",
      R"({"scenario": "extreme_points", "seed": 3, "parameters": {"sample_counts": [100, 1000]}})",
      R"({"scenario": "ball_remark", "seed": 5, "parameters": {"sphere_samples": 5000}})",
  };
  std::size_t identical = 0;
  for (const std::string& text : configs) {
    const RunConfig c = parse_config(text);
    const auto masked = [&] {
      const ReportEnvelope env = run(c);
      nlohmann::json j = envelope_to_json(env);
      j.erase("timestamps");
      j["csv"] = env.csv_documents;
      return j.dump();
    };
    if (masked() == masked()) ++identical;
  }
  out.require(identical == configs.size(), "identical payloads for every configuration");
  out.detail << " identical=" << identical << "/" << configs.size();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"1 counterexample reproduction", criterion_1},
      {"2 ball-hypothesis sweep", criterion_2},
      {"3 norm perturbation restores attainment", criterion_3},
      {"4 outward step and subgradients", criterion_4},
      {"5 F_n structure", criterion_5},
      {"6 extreme points", criterion_6},
      {"7 f_k on the unit interval", criterion_7},
      {"8 Lipschitz and convexity fuzzing", criterion_8},
      {"9 determinism", criterion_9},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome out;
    try {
      check(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s criterion %s:%s\n", out.pass ? "PASS" : "FAIL", name.c_str(), out.detail.str().c_str());
    std::fflush(stdout);
    failures += out.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
