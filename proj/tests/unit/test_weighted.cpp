#include <cmath>

#include <gtest/gtest.h>

#include "faberlab/curve.hpp"
#include "faberlab/error.hpp"
#include "faberlab/faber.hpp"
#include "faberlab/laurent.hpp"
#include "faberlab/weighted.hpp"

using namespace faberlab;

namespace {

void expect_plan_invariants(const WeightPlan& plan) {
  EXPECT_LT(plan.tail_bound, 1.0 / (2 * plan.m));
  EXPECT_LT(plan.sup_g_minus_P, 1.0 / plan.m);
  EXPECT_LT(plan.sup_P_on_circle, plan.P_bound());
  EXPECT_LT(plan.max_window_g, 0.5);
  EXPECT_EQ(plan.d_m, static_cast<int>(plan.a.size()));
  EXPECT_GT(plan.r_m, 0.0);
  EXPECT_LT(plan.r_m, 1.0);
}

}  // namespace

TEST(Weighted, SingleCornerSchedule) {
  const std::vector<double> thetas{0.0};
  const auto rd = choose_rm_delta(thetas, 1);
  EXPECT_DOUBLE_EQ(rd.r_m, 7.0 / 8);
  EXPECT_EQ(rd.p, 3);
  EXPECT_GT(rd.delta_m, 0.0);
  EXPECT_LT(rd.max_window_g, 0.5);
}

TEST(Weighted, DeltoidScheduleAdmitsWindows) {
  const auto rd = choose_rm_delta(ExteriorMap::deltoid(), 4);
  EXPECT_GT(rd.r_m, 0.0);
  EXPECT_LT(rd.r_m, 1.0);
  EXPECT_LT(rd.max_window_g, 0.5);
  EXPECT_NEAR(rd.delta_m, std::ldexp(kPi / 3, -rd.q), 1e-15);
}

TEST(Weighted, CornerFreeCurveIsRejected) {
  EXPECT_THROW(choose_rm_delta(ExteriorMap::ellipse(0.5), 1), InvalidArgument);
  EXPECT_THROW(make_weight_plan(ExteriorMap::circle(1.0), 2), InvalidArgument);
  EXPECT_THROW(choose_rm_delta(ExteriorMap::lune(), 0), InvalidArgument);
}

TEST(Weighted, SingleFactorIsExact) {
  const std::vector<double> thetas{0.0};
  const auto plan = build_Pm(thetas, 1, 0.9, 0.1);
  ASSERT_EQ(plan.d_m, 1);
  EXPECT_NEAR(std::abs(plan.a[0] - (-0.9)), 0.0, 1e-15);
  for (double t : {0.0, 0.5, 2.0}) {
    const cplx w = std::polar(1.0, t);
    EXPECT_LT(std::abs(plan.g(w) - plan.P(w)), 1e-15);
  }
  expect_plan_invariants(plan);
}

TEST(Weighted, LuneConjugateFactors) {
  const auto plan = build_Pm(ExteriorMap::lune(), 1, 0.9, 0.1);
  ASSERT_EQ(plan.d_m, 2);
  EXPECT_EQ(plan.a[0], cplx{});
  EXPECT_NEAR(std::abs(plan.a[1] - (-0.81)), 0.0, 1e-14);
  ASSERT_EQ(plan.corner_points.size(), 2u);
  EXPECT_NEAR(std::abs(plan.corner_points[1] - cplx(-1.0)), 0.0, 1e-15);
  expect_plan_invariants(plan);
}

TEST(Weighted, RootOfProductMatchesDirectEvaluation) {
  const auto map = ExteriorMap::deltoid();
  const auto plan = make_weight_plan(map, 4);
  expect_plan_invariants(plan);
  for (double t : {0.3, 1.4, 3.9, 5.5}) {
    const cplx w = std::polar(1.0, t);
    const cplx direct = weight_g(plan.corner_points, plan.r_m, 4, w);
    EXPECT_LT(std::abs(plan.g(w) - direct), 1e-14);
    EXPECT_LT(std::abs(plan.g(w) - plan.P(w)), 1.0 / 4);
    // g^m recovers the product of the linear factors
    cplx prod = 1.0;
    for (const cplx wk : plan.corner_points) prod *= 1.0 - plan.r_m * wk / w;
    EXPECT_LT(std::abs(std::pow(direct, 4) - prod), 1e-12);
  }
}

TEST(Weighted, DeltoidMEightPlan) {
  const auto plan = make_weight_plan(ExteriorMap::deltoid(), 8);
  expect_plan_invariants(plan);
  EXPECT_LE(plan.P_bound(), std::pow(2.0, 3.0 / 8) + 0.125 + 1e-15);
  EXPECT_GT(plan.d_m, 0);
}

TEST(Weighted, InvalidRadiusAndWindow) {
  const std::vector<double> thetas{0.0};
  EXPECT_THROW(build_Pm(thetas, 1, 1.0, 0.1), InvalidArgument);
  EXPECT_THROW(build_Pm(thetas, 1, 0.9, 0.0), InvalidArgument);
  // a wide window around the corner sees |g| near 1.9
  EXPECT_THROW(build_Pm(thetas, 1, 0.9, 3.0), InvalidArgument);
}

TEST(Weighted, WeightedFaberCombinations) {
  const auto circle = faber_sequence(laurent_coeffs(ExteriorMap::circle(1.0), 8), 5);
  WeightPlan empty;
  const auto q0 = weighted_faber(circle, empty, 5);
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(q0.coeff(k), circle[5].coeff(k));

  WeightPlan single;
  single.a = {-0.9};
  single.d_m = 1;
  const auto q1 = weighted_faber(circle, single, 5);
  ASSERT_EQ(q1.degree(), 5);
  EXPECT_NEAR(std::abs(q1.coeff(5) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q1.coeff(4) - (-0.9)), 0.0, 1e-15);
  for (int k = 0; k < 4; ++k) EXPECT_LT(std::abs(q1.coeff(k)), 1e-15);
  EXPECT_THROW(weighted_faber(circle, single, 1), InvalidArgument);

  const auto lune = faber_sequence(laurent_coeffs(ExteriorMap::lune(), 64), 10);
  const auto plan = build_Pm(ExteriorMap::lune(), 1, 0.9, 0.1);
  const auto q = weighted_faber(lune, plan, 10);
  EXPECT_NEAR(std::abs(q.leading() - 1.0), 0.0, 1e-12);
  const cplx z(0.3, 0.4);
  EXPECT_LT(std::abs(q(z) - (lune[10](z) - 0.81 * lune[8](z))), 1e-12);

  std::vector<cplx> values(11);
  for (int k = 0; k <= 10; ++k) values[k] = lune[k](z);
  EXPECT_LT(std::abs(weighted_faber_value(values, plan, 10) - q(z)), 1e-12);
  EXPECT_THROW(weighted_faber_value(values, plan, 2), InvalidArgument);
}
