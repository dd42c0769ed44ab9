#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "faberlab/curve.hpp"
#include "faberlab/error.hpp"

using namespace faberlab;

namespace {

double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  auto one_sided = [](const std::vector<cplx>& x, const std::vector<cplx>& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = INFINITY;
      for (const auto& q : y) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace

TEST(Curve, CornerMetadataOfBuiltins) {
  const auto lune = ExteriorMap::lune();
  ASSERT_EQ(lune.corners().size(), 2u);
  for (const auto& c : lune.corners()) {
    EXPECT_DOUBLE_EQ(c.lambda, 0.5);
    EXPECT_DOUBLE_EQ(c.Lambda, 1.5);
  }
  EXPECT_TRUE(ExteriorMap::circle(1.0).corners().empty());
  EXPECT_TRUE(ExteriorMap::ellipse(0.5).corners().empty());

  const auto deltoid = ExteriorMap::deltoid();
  ASSERT_EQ(deltoid.corners().size(), 3u);
  for (int k = 0; k < 3; ++k) {
    const auto& c = deltoid.corners()[k];
    EXPECT_NEAR(c.theta, kTwoPi * k / 3, 1e-15);
    EXPECT_DOUBLE_EQ(c.lambda, 2.0);
    EXPECT_DOUBLE_EQ(c.Lambda, std::max(c.lambda, 2.0 - c.lambda));
    EXPECT_LT(std::abs(c.z - deltoid.boundary_point(c.theta)), 1e-12);
  }
}

TEST(Curve, MeasuredAnglesMatchDeclaredOnes) {
  for (const auto& map : {ExteriorMap::deltoid(), ExteriorMap::lune()}) {
    for (const auto& c : map.corners()) EXPECT_NEAR(measured_lambda(map, c.theta), c.lambda, 1e-3);
  }
  EXPECT_NEAR(measured_lambda(ExteriorMap::ellipse(0.5), 1.0), 1.0, 1e-6);
}

TEST(Curve, Capacity) {
  EXPECT_DOUBLE_EQ(ExteriorMap::circle(2.5).capacity(), 2.5);
  EXPECT_DOUBLE_EQ(ExteriorMap::deltoid().capacity(), 1.0);
  EXPECT_DOUBLE_EQ(ExteriorMap::lune().capacity(), 1.0);
  EXPECT_DOUBLE_EQ(ExteriorMap::ellipse(0.3).capacity(), 1.0);
  const cplx far = std::polar(1e6, 0.7);
  for (const auto& map : {ExteriorMap::circle(2.5), ExteriorMap::ellipse(0.5), ExteriorMap::deltoid(),
                          ExteriorMap::lune()}) {
    EXPECT_NEAR(std::abs(map.psi(far) / far), map.capacity(), 1e-10);
  }
}

TEST(Curve, PsiValues) {
  EXPECT_NEAR(std::abs(ExteriorMap::ellipse(0.5).psi(1.0) - 1.5), 0.0, 1e-15);
  const cplx lune_i = ExteriorMap::lune().psi(cplx(0.0, 1.0));
  EXPECT_NEAR(std::abs(lune_i - cplx(0.0, (1.0 + std::sqrt(2.0)) / 2)), 0.0, 1e-14);
  // the lune branch follows psi(w) ~ w along the positive axis too
  EXPECT_GT(ExteriorMap::lune().psi(3.0).real(), 2.9);
}

TEST(Curve, CornerDerivativeIsRejected) {
  const auto deltoid = ExteriorMap::deltoid();
  EXPECT_THROW(deltoid.psi_prime(std::polar(1.0, kTwoPi / 3)), CornerPointError);
  EXPECT_NO_THROW(deltoid.psi_prime(std::polar(1.0, 1.0)));
  EXPECT_THROW(ExteriorMap::lune().psi_prime(-1.0), CornerPointError);
}

TEST(Curve, DomainAndParameterErrors) {
  EXPECT_THROW(ExteriorMap::ellipse(0.5).psi(0.5), DomainError);
  EXPECT_THROW(ExteriorMap::ellipse(1.0), InvalidArgument);
  EXPECT_THROW(ExteriorMap::ellipse(0.0), InvalidArgument);
  EXPECT_THROW(ExteriorMap::circle(-1.0), InvalidArgument);
  // psi'(w) = 1 - 1.2 w^{-3} vanishes on |w| = 1.2^{1/3} > 1
  EXPECT_THROW(ExteriorMap::laurent(1.0, 0.0, {0.0, 0.6}), InvalidArgument);
  EXPECT_NO_THROW(ExteriorMap::laurent(1.0, 0.0, {0.0, 0.1}));
}

TEST(Curve, BuiltinFactoryMatchesNamedConstructors) {
  const double c[] = {0.25};
  const auto e = make_builtin_curve(CurveKind::Ellipse, c);
  EXPECT_EQ(e.kind(), CurveKind::Ellipse);
  EXPECT_DOUBLE_EQ(e.parameter(), 0.25);
  EXPECT_EQ(make_builtin_curve(CurveKind::Deltoid).corners().size(), 3u);
  EXPECT_THROW(make_builtin_curve(CurveKind::Ellipse), InvalidArgument);
}

TEST(Curve, BoundaryAreSimpleClosedCurves) {
  for (const auto& map : {ExteriorMap::circle(1.0), ExteriorMap::ellipse(0.5), ExteriorMap::deltoid(),
                          ExteriorMap::lune()}) {
    EXPECT_TRUE(is_simple_on_circle(map, 1.0 + 1e-3, 4096)) << to_string(map.kind());
  }
}

TEST(Curve, MeshSizes) {
  EXPECT_EQ(boundary_mesh(ExteriorMap::circle(1.0), 64, 3).size(), 64u);
  EXPECT_EQ(boundary_mesh(ExteriorMap::deltoid(), 64, 2).size(), 82u);
  EXPECT_EQ(boundary_mesh(ExteriorMap::lune(), 128, 0).size(), 132u);
}

TEST(Curve, MeshInvariants) {
  const auto map = ExteriorMap::deltoid();
  const auto mesh = boundary_mesh(map, 256, 6);
  ASSERT_FALSE(mesh.empty());
  EXPECT_TRUE(std::is_sorted(mesh.thetas.begin(), mesh.thetas.end()));
  EXPECT_EQ(std::adjacent_find(mesh.thetas.begin(), mesh.thetas.end()), mesh.thetas.end());
  EXPECT_GE(mesh.thetas.front(), 0.0);
  EXPECT_LT(mesh.thetas.back(), kTwoPi);
  const double delta0 = corner_half_gap(std::vector<double>{0.0, kTwoPi / 3, 2 * kTwoPi / 3});
  for (const auto& c : map.corners()) {
    for (double t : mesh.thetas) EXPECT_GT(std::abs(std::remainder(t - c.theta, kTwoPi)), 0.0);
    for (int j = 0; j <= 6; ++j) {
      for (int side : {-1, 1}) {
        const double target = wrap_angle(c.theta + side * delta0 * std::ldexp(1.0, -(j + 1)));
        const bool found = std::any_of(mesh.thetas.begin(), mesh.thetas.end(),
                                       [&](double t) { return std::abs(t - target) < 1e-14; });
        EXPECT_TRUE(found) << "corner " << c.theta << " level " << j;
      }
    }
  }
  EXPECT_THROW(boundary_mesh(map, 32, 2), InvalidArgument);
  EXPECT_THROW(boundary_mesh(map, 64, -1), InvalidArgument);
}

TEST(Curve, CornerHalfGap) {
  EXPECT_DOUBLE_EQ(corner_half_gap(std::vector<double>{}), kPi);
  EXPECT_DOUBLE_EQ(corner_half_gap(std::vector<double>{1.0}), kPi);
  EXPECT_NEAR(corner_half_gap(std::vector<double>{0.0, kPi}), kPi / 2, 1e-15);
  EXPECT_NEAR(corner_half_gap(std::vector<double>{0.0, 0.5, 4.0}), 0.25, 1e-15);
}

TEST(Curve, DeltoidIsTheConjugateForm) {
  // On |w| = 1, w + w^{-2}/2 equals w + conj(w)^2/2 (three cusps); the
  // literal w + w^2/2 traces a different curve with a single cusp.
  const auto map = ExteriorMap::deltoid();
  std::vector<cplx> ours, conj_form, literal;
  for (int s = 0; s < 720; ++s) {
    const cplx w = std::polar(1.0, kTwoPi * s / 720);
    ours.push_back(map.boundary_point(kTwoPi * s / 720));
    conj_form.push_back(w + std::conj(w) * std::conj(w) / 2.0);
    literal.push_back(w + w * w / 2.0);
  }
  EXPECT_LT(hausdorff(ours, conj_form), 1e-12);
  EXPECT_GT(hausdorff(ours, literal), 0.5);
}

TEST(Curve, ArcLength) {
  const std::vector<double> full{0.0, kTwoPi};
  EXPECT_NEAR(cumulative_arc_length(ExteriorMap::circle(2.0), full).back(), 4 * kPi, 1e-12);
  // the deltoid a(2 e^{it} + e^{-2it}) with a = 1/2 has length 16a
  EXPECT_NEAR(cumulative_arc_length(ExteriorMap::deltoid(), full).back(), 8.0, 1e-9);
  const std::vector<double> arc{0.0, kTwoPi / 3};
  EXPECT_NEAR(cumulative_arc_length(ExteriorMap::deltoid(), arc).back(), 8.0 / 3, 1e-9);
  const std::vector<double> bad{1.0, 0.5};
  EXPECT_THROW(cumulative_arc_length(ExteriorMap::deltoid(), bad), InvalidArgument);
}

TEST(Curve, WrapAngle) {
  EXPECT_DOUBLE_EQ(wrap_angle(0.0), 0.0);
  EXPECT_NEAR(wrap_angle(-0.5), kTwoPi - 0.5, 1e-15);
  EXPECT_NEAR(wrap_angle(7.0), 7.0 - kTwoPi, 1e-15);
  EXPECT_LT(wrap_angle(kTwoPi), kTwoPi);
}

TEST(Curve, LambdaAtAndCornerIndex) {
  const auto lune = ExteriorMap::lune();
  EXPECT_DOUBLE_EQ(lune.lambda_at(kPi), 0.5);
  EXPECT_DOUBLE_EQ(lune.lambda_at(1.0), 1.0);
  EXPECT_EQ(lune.corner_index(kPi), 1);
  EXPECT_EQ(lune.corner_index(kTwoPi - 1e-12), 0);
  EXPECT_EQ(lune.corner_index(0.3), -1);
  EXPECT_DOUBLE_EQ(lune.max_Lambda(), 1.5);
  EXPECT_DOUBLE_EQ(ExteriorMap::ellipse(0.5).max_Lambda(), 1.0);
}

TEST(Curve, LaurentCornersAreSortedAndDistinct) {
  EXPECT_THROW(ExteriorMap::laurent(1.0, 0.0, {0.0, 0.5}, {{1.0, 2.0}, {1.0, 2.0}}),
               InvalidArgument);
  EXPECT_THROW(ExteriorMap::laurent(1.0, 0.0, {0.0, 0.5}, {{1.0, 2.5}}), InvalidArgument);
  const auto ok = ExteriorMap::laurent(1.0, 0.0, {0.0, 0.5},
                                       {{2 * kTwoPi / 3, 2.0}, {0.0, 2.0}, {kTwoPi / 3, 2.0}});
  ASSERT_EQ(ok.corners().size(), 3u);
  EXPECT_LT(ok.corners()[0].theta, ok.corners()[1].theta);
  EXPECT_LT(ok.corners()[1].theta, ok.corners()[2].theta);
  EXPECT_NEAR(std::abs(ok.psi(2.0) - ExteriorMap::deltoid().psi(2.0)), 0.0, 1e-15);
}
