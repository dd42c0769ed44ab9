#include <cmath>

#include <gtest/gtest.h>

#include "faberlab/curve.hpp"
#include "faberlab/error.hpp"
#include "faberlab/faber.hpp"
#include "faberlab/laurent.hpp"
#include "oracles.hpp"

using namespace faberlab;

namespace {

void expect_coeffs(const Polynomial& p, const std::vector<cplx>& expected, double tol) {
  ASSERT_EQ(p.degree() + 1, static_cast<int>(expected.size()));
  for (int k = 0; k <= p.degree(); ++k) {
    EXPECT_LT(std::abs(p.coeff(k) - expected[k]), tol) << "coefficient " << k;
  }
}

BoundaryMesh single_point(double theta) {
  BoundaryMesh mesh;
  mesh.thetas = {theta};
  return mesh;
}

}  // namespace

TEST(Faber, SpecExamples) {
  const auto circle = faber_sequence(laurent_coeffs(ExteriorMap::circle(1.0), 8), 3);
  expect_coeffs(circle[3], {0.0, 0.0, 0.0, 1.0}, 1e-14);
  const auto ellipse = faber_sequence(laurent_coeffs(ExteriorMap::ellipse(0.5), 8), 2);
  expect_coeffs(ellipse[2], {-1.0, 0.0, 1.0}, 1e-13);
  const auto deltoid = faber_sequence(laurent_coeffs(ExteriorMap::deltoid(), 8), 3);
  expect_coeffs(deltoid[3], {-1.5, 0.0, 0.0, 1.0}, 1e-13);
  expect_coeffs(deltoid[0], {1.0}, 1e-15);
}

TEST(Faber, RecurrenceMatchesContourOracle) {
  for (const auto& map : {ExteriorMap::ellipse(0.5), ExteriorMap::deltoid(), ExteriorMap::lune(),
                          ExteriorMap::laurent(1.0, cplx(0.1, -0.2), {cplx(0.2, 0.1), 0.0, 0.05})}) {
    const auto seq = faber_sequence(laurent_coeffs(map, 64), 6);
    for (int n = 0; n <= 6; ++n) {
      expect_coeffs(seq[n], oracle::faber_by_contour(map, n), 1e-9);
    }
  }
}

TEST(Faber, LuneClosedForm) {
  const auto map = ExteriorMap::lune();
  const auto seq = faber_sequence(laurent_coeffs(map, 256), 20);
  for (int n : {1, 2, 5, 12, 20}) expect_coeffs(seq[n], oracle::lune_faber(n), 1e-9);

  // values from the recurrence agree with the exact monomial form
  const auto ev = FaberEvaluator::for_map(map, 40);
  for (double t : {0.4, 1.3, 2.2, 5.0}) {
    const cplx z = map.boundary_point(t);
    const auto vals = ev.evaluate(z, 40);
    for (int n : {10, 25, 40}) {
      const Polynomial exact(oracle::lune_faber(n));
      EXPECT_LT(std::abs(vals[n] - exact(z)), 1e-9 * std::max(1.0, std::abs(exact(z)))) << n;
    }
  }
}

TEST(Faber, LeadingCoefficientIsInverseCapacityPower) {
  const auto map = ExteriorMap::circle(2.0);
  const auto seq = faber_sequence(laurent_coeffs(map, 16), 12);
  for (int n = 0; n <= 12; ++n) {
    EXPECT_NEAR(std::abs(seq[n].leading() - std::pow(0.5, n)), 0.0, 1e-9 * std::pow(0.5, n));
    EXPECT_EQ(seq[n].degree(), n);
  }
  const auto lune = faber_sequence(laurent_coeffs(ExteriorMap::lune(), 64), 30);
  for (const auto& F : lune) EXPECT_NEAR(std::abs(F.leading() - 1.0), 0.0, 1e-9);
}

TEST(Faber, BoundaryValues) {
  const auto circle = ExteriorMap::circle(1.0);
  const auto Fc = faber_sequence(laurent_coeffs(circle, 8), 5)[5];
  const auto vc = faber_boundary_values(circle, Fc, single_point(kPi / 2));
  EXPECT_LT(std::abs(vc[0] - cplx(0.0, 1.0)), 1e-14);

  const auto ellipse = ExteriorMap::ellipse(0.5);
  const auto Fe = faber_sequence(laurent_coeffs(ellipse, 8), 2)[2];
  EXPECT_NEAR(std::abs(faber_boundary_values(ellipse, Fe, single_point(0.0))[0] - 1.25), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(normalized_boundary_values(ellipse, Fe, single_point(0.0))[0] - 1.25), 0.0,
              1e-13);

  const auto deltoid = ExteriorMap::deltoid();
  const auto Fd = faber_sequence(laurent_coeffs(deltoid, 8), 3)[3];
  EXPECT_NEAR(std::abs(faber_boundary_values(deltoid, Fd, single_point(0.0))[0] - 1.875), 0.0,
              1e-13);

  EXPECT_THROW(faber_boundary_values(deltoid, Fd, BoundaryMesh{}), InvalidArgument);
  EXPECT_THROW(faber_sequence(laurent_coeffs(deltoid, 8), -1), InvalidArgument);
  EXPECT_THROW(faber_sequence(LaurentSeries::unit({0.5}), 3), InvalidArgument);
}

TEST(Faber, NormalizedValuesOnTheCircleAreOne) {
  const auto map = ExteriorMap::circle(1.0);
  const auto ev = FaberEvaluator::for_map(map, 30);
  const std::vector<double> thetas{0.1, 1.0, 2.5, 4.0, 6.0};
  for (int n : {1, 7, 30}) {
    for (const cplx v : normalized_boundary_values(map, ev, n, thetas)) {
      EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-13);
    }
  }
}

TEST(Faber, EllipseClosedFormAtHighDegree) {
  const double c = 0.5;
  const auto map = ExteriorMap::ellipse(c);
  const auto ev = FaberEvaluator::for_map(map, 400);
  for (double t : {0.0, 0.7, 2.0, 3.3}) {
    const auto vals = ev.evaluate(map.boundary_point(t), 400);
    for (int n : {50, 200, 400}) {
      const cplx exact = std::polar(1.0, n * t) + std::pow(c, n) * std::polar(1.0, -n * t);
      EXPECT_LT(std::abs(vals[n] - exact), 1e-10) << n << " " << t;
    }
  }
}

TEST(Faber, DeltoidCuspValueApproachesTwo) {
  const auto map = ExteriorMap::deltoid();
  const auto ev = FaberEvaluator::for_map(map, 300);
  const std::vector<double> cusp{0.0};
  const double v = std::abs(normalized_boundary_values(map, ev, 300, cusp)[0]);
  EXPECT_GE(v, 1.8);
  EXPECT_LE(v, 2.1);
}

TEST(Faber, EvaluatorAgreesWithHornerAtLowDegree) {
  const auto map = ExteriorMap::deltoid();
  const auto series = laurent_coeffs(map, 32);
  const auto seq = faber_sequence(series, 12);
  const FaberEvaluator ev(series);
  EXPECT_GE(ev.max_degree(), 12);
  EXPECT_DOUBLE_EQ(ev.capacity(), series.b());
  const cplx z = map.boundary_point(0.8);
  const auto vals = ev.evaluate(z, 12);
  for (int n = 0; n <= 12; ++n) EXPECT_LT(std::abs(vals[n] - seq[n](z)), 1e-11) << n;
}

TEST(Faber, EvaluatorRefusesDegreesBeyondItsData) {
  const auto series = laurent_coeffs(ExteriorMap::lune(), 16);
  const FaberEvaluator ev(series);
  EXPECT_THROW(ev.evaluate(1.0, ev.max_degree() + 1), InvalidArgument);
}

TEST(Faber, BoundaryTableMatchesPointwiseEvaluation) {
  const auto map = ExteriorMap::lune();
  const auto ev = FaberEvaluator::for_map(map, 50);
  const std::vector<double> thetas{0.2, 1.1, 3.0};
  const auto table = faber_boundary_table(map, ev, thetas, 50);
  ASSERT_EQ(table.values.size(), thetas.size() * 51);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const auto direct = ev.evaluate(map.boundary_point(thetas[i]), 50);
    for (int n = 0; n <= 50; ++n) EXPECT_EQ(table.at(i, n), direct[n]);
    EXPECT_EQ(table.row(i).size(), 51u);
  }
}
