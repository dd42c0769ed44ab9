#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "faberlab/chebyshev.hpp"
#include "faberlab/curve.hpp"
#include "faberlab/faber.hpp"
#include "faberlab/laurent.hpp"
#include "faberlab/norms.hpp"
#include "faberlab/result_table.hpp"
#include "oracles.hpp"

using namespace faberlab;

namespace {

// sum_k k |b_k| < 1 keeps psi' away from zero on |w| > 1, so the map is univalent
ExteriorMap random_map(std::mt19937_64& rng, cplx b0 = 0.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> b(3);
  double weight = 0.0;
  for (int k = 1; k <= 3; ++k) {
    b[k - 1] = {u(rng), u(rng)};
    weight += k * std::abs(b[k - 1]);
  }
  const double scale = std::uniform_real_distribution<double>(0.2, 0.9)(rng) / weight;
  for (auto& c : b) c *= scale;
  return ExteriorMap::laurent(1.0, b0, b);
}

double faber_norm(const ExteriorMap& map, int n) {
  const auto ev = FaberEvaluator::for_map(map, n);
  BoundaryFunction f = [&](double t) { return ev.evaluate(map.boundary_point(t), n)[n]; };
  return sup_norm_on_curve(map, f, boundary_mesh(map, 512, 0)).value;
}

}  // namespace

TEST(Properties, RecurrenceAgreesWithContourOracleOnRandomMaps) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 6; ++trial) {
    const auto map = random_map(rng);
    const auto seq = faber_sequence(laurent_coeffs(map, 32), 5);
    for (int n = 1; n <= 5; ++n) {
      const auto ref = oracle::faber_by_contour(map, n);
      for (int k = 0; k <= n; ++k) EXPECT_LT(std::abs(seq[n].coeff(k) - ref[k]), 1e-9);
    }
  }
}

TEST(Properties, FaberNormsAreAtLeastOne) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 6; ++trial) {
    const auto map = random_map(rng);
    for (int n : {1, 4, 16, 64}) EXPECT_GE(faber_norm(map, n), 1.0 - 1e-9) << trial << " " << n;
  }
}

TEST(Properties, TranslationLeavesNormsUnchanged) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    std::mt19937_64 copy = rng;
    const auto centred = random_map(rng);
    const auto shifted = random_map(copy, cplx(0.7, -1.3));
    for (int n : {3, 20}) EXPECT_NEAR(faber_norm(centred, n), faber_norm(shifted, n), 1e-9);
  }
}

TEST(Properties, ChebyshevSandwichOnRandomMaps) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 4; ++trial) {
    const auto map = random_map(rng);
    const auto mesh = boundary_mesh(map, 512, 0);
    for (int n : {2, 5}) {
      const auto res = chebyshev_monic(map, n, mesh);
      EXPECT_TRUE(res.converged);
      // mesh maxima can only undershoot the continuous norm slightly
      EXPECT_GE(res.widom, 1.0 - 1e-3);
      const auto ev = FaberEvaluator::for_map(map, n);
      double fmesh = 0.0;
      for (double t : mesh.thetas) fmesh = std::max(fmesh, std::abs(ev.evaluate(map.boundary_point(t), n)[n]));
      EXPECT_LE(res.widom, fmesh + 1e-9);
    }
  }
}

TEST(Properties, TailBoundDominatesTruncationError) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double rate = std::uniform_real_distribution<double>(0.3, 0.9)(rng);
    std::vector<cplx> a(256);
    for (int j = 1; j <= 256; ++j) a[j - 1] = cplx(u(rng), u(rng)) * std::pow(rate, j);
    const auto s = LaurentSeries::unit(a);
    const int d = 8;
    const auto sd = s.truncated(d);
    double err = 0.0;
    for (int k = 0; k < 512; ++k) {
      const cplx w = std::polar(1.0, kTwoPi * k / 512);
      err = std::max(err, std::abs(s(w) - sd(w)));
    }
    EXPECT_GE(sup_tail_bound(s, d), err);
  }
}

TEST(Properties, CsvRoundTripIsExact) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-300.0, 300.0);
  ResultTable t({"v"});
  std::vector<double> values;
  for (int i = 0; i < 200; ++i) {
    values.push_back(std::pow(10.0, u(rng)) * (i % 2 ? -1.0 : 1.0));
    t.add_row({values.back()});
  }
  const auto back = ResultTable::from_csv(t.to_csv());
  for (int i = 0; i < 200; ++i) EXPECT_EQ(back.number(i, "v"), values[i]);
}

TEST(Properties, EvaluatorMatchesHornerOnRandomMaps) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const auto map = random_map(rng, cplx(0.1, 0.2));
    const auto series = laurent_coeffs(map, 32);
    const auto seq = faber_sequence(series, 10);
    const FaberEvaluator ev(series);
    const cplx z = map.boundary_point(2.0 * trial + 0.3);
    const auto vals = ev.evaluate(z, 10);
    for (int n = 0; n <= 10; ++n) EXPECT_LT(std::abs(vals[n] - seq[n](z)), 1e-10);
  }
}
