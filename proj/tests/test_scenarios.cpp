#include <gtest/gtest.h>

#include <cmath>

#include "farpoint/error.hpp"
#include "farpoint/scenarios.hpp"
#include "farpoint/serialization.hpp"
#include "oracles.hpp"

using namespace farpoint;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no farpoint::Error thrown";
  return ErrorCode::IoError;
}

std::string failing(const ScenarioReport& r) {
  std::string out;
  for (const Assertion& a : r.assertions) {
    if (!a.pass) out += a.description + "\n";
  }
  return out;
}

}  // namespace

TEST(CkScenario, ConstantTwoPasses) {
  const ScenarioReport r = run_ck_counterexample(500, {10, 100, 500}, {GridFunction::constant(2.0)});
  EXPECT_TRUE(r.passed()) << failing(r);
  ASSERT_EQ(r.artifacts.size(), 1u);
  const DataSeries& s = r.artifacts[0];
  EXPECT_EQ(s.name, "fx_vs_n");
  ASSERT_EQ(s.rows.size(), 500u);
  for (const auto& row : s.rows) {
    EXPECT_NEAR(row[1], oracle::ck_fx_constant(2.0, static_cast<std::size_t>(row[0])), 1e-12);
  }
}

TEST(CkScenario, NonConstantXInsideTheBall) {
  const ScenarioReport r = run_ck_counterexample(
      1000, {10, 100, 1000},
      {GridFunction({0.0, 0.5, 1.0}, {1.0, 3.0, 2.5}), GridFunction({0.0, 1.0}, {2.9, 1.1})});
  EXPECT_TRUE(r.passed()) << failing(r);
  EXPECT_EQ(r.artifacts.size(), 2u);
}

TEST(CkScenario, RejectsXOutsideTheBall) {
  EXPECT_EQ(code_of([] { run_ck_counterexample(100, {10, 100}, {GridFunction::constant(3.5)}); }),
            ErrorCode::InvalidX);
  EXPECT_EQ(code_of([] { run_ck_counterexample(50, {10, 100}, {GridFunction::constant(2.0)}); }),
            ErrorCode::InvalidParameter);
}

TEST(IntervalSup, ClosedFormAgainstScan) {
  for (int i = 0; i <= 60; ++i) {
    const double x = -1.0 + 3.0 * i / 60.0;
    for (double p : {0.0, 1.0, 0.5, 0.2}) {
      const IntervalSupAnalysis a = analyze_interval_sup(x, p);
      const double scanned = oracle::interval_sup_scan(x, p, 100000);
      EXPECT_GE(a.sup, scanned - 1e-12);
      EXPECT_LE(a.sup - scanned, 3.0 / 100000);
      EXPECT_EQ(a.attained, p == 0.0);
      EXPECT_EQ(a.far_endpoint, x >= 0.5 ? 0.0 : 1.0);
    }
  }
}

TEST(FkScenario, Passes) {
  const ScenarioReport r = run_fk_remark({1, 2, 5}, {-1.0, 0.0, 0.25, 0.5, 0.75, 1.0, 2.0});
  EXPECT_TRUE(r.passed()) << failing(r);
  EXPECT_EQ(code_of([] { run_fk_remark({0}, {0.0}); }), ErrorCode::InvalidParameter);
}

TEST(ExtremePoints, SquareVertexSupIsExact) {
  const Polytope square{{Vector::coordinates({-1, -1}), Vector::coordinates({1, -1}), Vector::coordinates({1, 1}),
                         Vector::coordinates({-1, 1})}};
  ObjectiveSpec obj{ObjectiveSpec::Kind::DistancePlusNorm, Vector::coordinates({2.0, 0.0})};
  const ExtremePointReport rep = run_extreme_points(square, obj, 20000, 1);
  // Farthest vertices (-1, +-1): sqrt(10) + sqrt(2).
  EXPECT_NEAR(rep.sup_over_extremes, std::sqrt(10.0) + std::sqrt(2.0), 1e-12);
  EXPECT_LE(rep.sup_over_dense_sample, rep.sup_over_extremes + 1e-12);
  EXPECT_GE(rep.sup_over_dense_sample, rep.sup_over_extremes - 5e-3);
}

TEST(ExtremePoints, BallClosedForms) {
  const Vector x = Vector::coordinates({3.0, 4.0});
  const ExtremePointReport a =
      run_extreme_points(EuclideanBall{2}, {ObjectiveSpec::Kind::DistancePlusNorm, x}, 1000, 1);
  EXPECT_DOUBLE_EQ(a.sup_over_extremes, 7.0);
  EXPECT_LE(a.sup_over_dense_sample, 7.0 + 1e-12);
  const ExtremePointReport b = run_extreme_points(EuclideanBall{2}, {ObjectiveSpec::Kind::Distance, x}, 1000, 1);
  EXPECT_DOUBLE_EQ(b.sup_over_extremes, 6.0);
  const ExtremePointReport c =
      run_extreme_points(EuclideanBall{1}, {ObjectiveSpec::Kind::Square, std::nullopt}, 1000, 1);
  EXPECT_DOUBLE_EQ(c.sup_over_extremes, 1.0);
}

TEST(ExtremePoints, InvalidObjectives) {
  EXPECT_EQ(code_of([] {
              run_extreme_points(EuclideanBall{2}, {ObjectiveSpec::Kind::Square, std::nullopt}, 10, 1);
            }),
            ErrorCode::InvalidObjective);
  EXPECT_EQ(code_of([] {
              run_extreme_points(EuclideanBall{2}, {ObjectiveSpec::Kind::Distance, std::nullopt}, 10, 1);
            }),
            ErrorCode::InvalidObjective);
  EXPECT_EQ(code_of([] {
              run_extreme_points(EuclideanBall{2}, {ObjectiveSpec::Kind::Distance, Vector::zeros(3)}, 10, 1);
            }),
            ErrorCode::InvalidObjective);
}

TEST(ExtremePoints, ScenarioIsDeterministic) {
  const Polytope tri{{Vector::coordinates({0, 0}), Vector::coordinates({1, 0}), Vector::coordinates({0, 1})}};
  const ObjectiveSpec obj{ObjectiveSpec::Kind::Distance, Vector::coordinates({0.2, 0.3})};
  const ScenarioReport a = extreme_points_scenario(tri, obj, {100, 1000}, {1, 2});
  const ScenarioReport b = extreme_points_scenario(tri, obj, {100, 1000}, {1, 2});
  EXPECT_TRUE(a.passed()) << failing(a);
  EXPECT_EQ(nlohmann::json(a).dump(), nlohmann::json(b).dump());
}

TEST(BallRemark, WitnessAndEstimates) {
  const ScenarioReport r =
      run_ball_remark(3, {Vector::coordinates({2.0, -1.0, 0.5}), Vector::zeros(3)}, 7, 20000);
  EXPECT_TRUE(r.passed()) << failing(r);
  const SphereSupEstimate e = estimate_sphere_sup(Vector::coordinates({0.0, 3.0}), 5000, 1);
  EXPECT_NEAR(e.refined_distance_plus_norm, 5.0, 1e-6);
  EXPECT_NEAR(e.refined_distance, 4.0, 1e-6);
  EXPECT_LE(e.raw_distance_plus_norm, 5.0 + 1e-12);
}
