#pragma once

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace faberlab::detail {

// Adaptive bisection over the 31-point Gauss-Kronrod rule. Each panel is
// mapped onto [-1, 1] before the rule is applied: the recursive driver in
// Boost 1.74 compares the unscaled error of that rule with a scaled
// tolerance, which overstates errors on short panels and recurses to the
// depth limit.
template <class F>
double gk_adaptive(const F& f, double a, double b, unsigned depth, double rel_tol, double* error,
                   double abs_tol = 0.0) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double e = 0.0;
  const double v =
      half * GK::integrate([&](double x) { return f(mid + half * x); }, -1.0, 1.0, 0, 0.0, &e);
  e *= std::abs(half);
  if (abs_tol == 0.0) abs_tol = std::abs(v) * rel_tol;
  if (depth == 0 || e <= std::max(abs_tol, std::abs(v) * rel_tol)) {
    *error += e;
    return v;
  }
  return gk_adaptive(f, a, mid, depth - 1, rel_tol, error, 0.5 * abs_tol) +
         gk_adaptive(f, mid, b, depth - 1, rel_tol, error, 0.5 * abs_tol);
}

}  // namespace faberlab::detail
