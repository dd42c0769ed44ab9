#include <algorithm>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "faberlab/curve.hpp"
#include "faberlab/error.hpp"
#include "faberlab/faber.hpp"
#include "faberlab/norms.hpp"
#include "faberlab/sweep.hpp"
#include "faberlab/weighted.hpp"
#include "oracles.hpp"

using namespace faberlab;

namespace {

BoundaryFunction faber_function(const ExteriorMap& map, const FaberEvaluator& ev, int n) {
  return [&map, &ev, n](double t) { return ev.evaluate(map.boundary_point(t), n)[n]; };
}

}  // namespace

TEST(Norms, CircleFaberIsUnimodular) {
  const auto map = ExteriorMap::circle(1.0);
  const auto ev = FaberEvaluator::for_map(map, 5);
  const auto est = sup_norm_on_curve(map, faber_function(map, ev, 5), boundary_mesh(map, 64, 0));
  EXPECT_NEAR(est.value, 1.0, 1e-13);
}

TEST(Norms, EllipseClosedForm) {
  const auto map = ExteriorMap::ellipse(0.5);
  const auto ev = FaberEvaluator::for_map(map, 10);
  const auto est = sup_norm_on_curve(map, faber_function(map, ev, 10), boundary_mesh(map, 256, 0));
  EXPECT_NEAR(est.value, oracle::ellipse_faber_norm(0.5, 10), 1e-8);
  // maxima sit where e^{20 i t} = 1
  EXPECT_NEAR(std::cos(20 * est.argmax_theta), 1.0, 1e-6);
  EXPECT_TRUE(est.converged);
  EXPECT_LE(est.last_delta, 1e-10);
}

TEST(Norms, DeltoidMaximumSitsAtACusp) {
  const auto map = ExteriorMap::deltoid();
  const auto ev = FaberEvaluator::for_map(map, 300);
  const auto est = sup_norm_on_curve(map, faber_function(map, ev, 300), boundary_mesh(map, 1024, 8));
  double dist = INFINITY;
  for (const auto& c : map.corners()) {
    const double d = std::abs(std::remainder(est.argmax_theta - c.theta, kTwoPi));
    dist = std::min(dist, d);
  }
  EXPECT_LT(dist, 0.05);
  EXPECT_EQ(est.refine_levels_used, 8);
}

TEST(Norms, PolynomialOverload) {
  const auto map = ExteriorMap::ellipse(0.5);
  const Polynomial z = Polynomial::monomial(1);
  EXPECT_NEAR(sup_norm_on_curve(map, z, boundary_mesh(map, 64, 0)).value, 1.5, 1e-12);
}

TEST(Norms, RefinementFindsOffGridPeak) {
  const double peak = 1.2345678;
  BoundaryFunction f = [&](double t) { return cplx(1.0 + 0.1 * std::cos(t - peak), 0.0); };
  std::vector<double> thetas(64), moduli(64);
  for (int j = 0; j < 64; ++j) {
    thetas[j] = kTwoPi * (j + 0.5) / 64;
    moduli[j] = std::abs(f(thetas[j]));
  }
  const auto est = refine_sup_norm(f, thetas, moduli);
  EXPECT_NEAR(est.value, 1.1, 1e-14);
  EXPECT_NEAR(est.argmax_theta, peak, 1e-5);
  EXPECT_GE(est.value, *std::max_element(moduli.begin(), moduli.end()));
}

TEST(Norms, NeverBelowTheCoarseMaximum) {
  const auto map = ExteriorMap::lune();
  const auto ev = FaberEvaluator::for_map(map, 60);
  const auto mesh = boundary_mesh(map, 512, 6);
  const auto f = faber_function(map, ev, 60);
  double coarse = 0.0;
  for (double t : norm_sample_thetas(map, mesh)) coarse = std::max(coarse, std::abs(f(t)));
  const auto est = sup_norm_on_curve(map, f, mesh);
  EXPECT_GE(est.value, coarse);
  // a finer mesh does not find a larger value than the refined estimate by more than tolerance
  const auto fine = sup_norm_on_curve(map, f, boundary_mesh(map, 8192, 6));
  EXPECT_NEAR(fine.value, est.value, 1e-6);
}

TEST(Norms, SampleThetasIncludeCorners) {
  const auto map = ExteriorMap::lune();
  const auto thetas = norm_sample_thetas(map, boundary_mesh(map, 128, 2));
  EXPECT_TRUE(std::is_sorted(thetas.begin(), thetas.end()));
  for (const auto& c : map.corners()) {
    EXPECT_NE(std::find(thetas.begin(), thetas.end(), c.theta), thetas.end());
  }
}

TEST(Norms, NonFiniteValuesAreRejected) {
  const auto map = ExteriorMap::ellipse(0.5);
  BoundaryFunction bad = [](double t) {
    return t > 3.0 ? cplx(std::numeric_limits<double>::quiet_NaN(), 0.0) : cplx(1.0);
  };
  EXPECT_THROW(sup_norm_on_curve(map, bad, boundary_mesh(map, 64, 0)), DomainError);
}

TEST(Norms, SweepMatchesClosedForm) {
  const auto map = ExteriorMap::ellipse(0.5);
  const std::vector<int> ns{1, 2, 5, 17, 40};
  const auto sweep = faber_norm_sweep(map, ns, boundary_mesh(map, 1024, 0));
  ASSERT_EQ(sweep.n, ns);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    EXPECT_NEAR(sweep.faber[i].value, oracle::ellipse_faber_norm(0.5, ns[i]), 1e-10);
    EXPECT_FALSE(sweep.weighted[i].has_value());
  }
}

TEST(Norms, SweepWeightedOnlyAboveDm) {
  const auto map = ExteriorMap::lune();
  const auto plan = build_Pm(map, 1, 0.9, 0.1);
  const std::vector<int> ns{1, 2, 3, 10};
  const auto sweep = faber_norm_sweep(map, ns, boundary_mesh(map, 512, 4), &plan);
  EXPECT_FALSE(sweep.weighted[0].has_value());
  EXPECT_FALSE(sweep.weighted[1].has_value());
  ASSERT_TRUE(sweep.weighted[2].has_value());
  ASSERT_TRUE(sweep.weighted[3].has_value());
  for (std::size_t i = 0; i < ns.size(); ++i) EXPECT_GE(sweep.faber[i].value, 1.0 - 1e-12);
}
