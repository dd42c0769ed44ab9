#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "faberlab/curve.hpp"
#include "faberlab/result_table.hpp"

namespace faberlab {

/// Unwrapped samples of v_theta(t) = arg(psi(e^{it}) - psi(e^{i theta})).
struct SecantProfile {
  double theta = 0.0;
  std::vector<double> t_grid;
  std::vector<double> values;
  double jump = 0.0;  // lambda(theta) * pi, the atom of dv_theta at t = theta
};

/// Continuous branch of the secant argument along t_grid, which must be
/// sorted inside (theta, theta + 2pi). Steps of pi/2 or more are bisected up
/// to 10 times; a persistent jump raises "grid too coarse".
SecantProfile secant_argument(const ExteriorMap& map, double theta, std::span<const double> t_grid);

/// dv_theta/dt = Re(e^{it} psi'(e^{it}) / (psi(e^{it}) - psi(e^{i theta}))).
double secant_density(const ExteriorMap& map, double theta, double t);

struct QuadOptions {
  double tol = 1e-8;        // target for the accumulated error estimate
  double window = 1e-4;     // initial half-width of exclusion windows; shrunk while the
                            // window remainder keeps the error above tol
  std::optional<double> alpha;  // integration starts at alpha; default theta - pi
  unsigned max_depth = 15;
};

struct QuadResult {
  cplx value;
  double error = 0.0;  // quadrature error estimate plus window remainders
  bool converged = false;
};

/// F_n(psi(e^{i theta})) = (1/pi) int_alpha^{alpha+2pi} e^{int} dv_theta(t),
/// split into the atom lambda(theta) e^{in theta} and the density integral.
/// Each exclusion window contributes e^{i n t_c} times the change of v across
/// it, measured from the secant directions at its ends.
QuadResult pommerenke_faber_value(const ExteriorMap& map, double theta, int n,
                                  const QuadOptions& opts = {});

/// (1/pi) [lambda(theta) pi + int_{(theta-delta, theta+delta) \ {theta}} |dv_theta|].
double local_variation(const ExteriorMap& map, double theta, double delta,
                       const QuadOptions& opts = {});

/// (1/pi) int_{theta+delta}^{theta-delta+2pi} e^{int} dv_theta(t).
QuadResult variation_tail(const ExteriorMap& map, double theta, double delta, int n,
                          const QuadOptions& opts = {});

/// sup over thetas of |variation_tail|.
double riemann_lebesgue_sup(const ExteriorMap& map, double delta, int n,
                            std::span<const double> thetas, const QuadOptions& opts = {});

/// int_a^b |d arg(z(s) - zeta)| for a parametrized arc z with derivative dz.
/// Each breakpoint is also refined geometrically down to the parameter
/// distance |z(c) - zeta| / |dz(c)|, so zeta may sit close to z(c).
double arc_argument_variation(const std::function<cplx(double)>& z,
                              const std::function<cplx(double)>& dz, double a, double b,
                              cplx zeta, std::span<const double> breakpoints = {});

/// Angle in [0, pi] between the one-sided tangents at a corner, in units of pi.
double corner_smallest_angle(const ExteriorMap& map, int corner);

struct LemmaRow {
  std::string check;
  double theta = 0.0;
  double param = 0.0;  // delta, t, or n
  double lhs = 0.0;
  double bound = 0.0;
  std::string bound_form;
  bool pass = false;
};

struct LemmaReport {
  std::vector<LemmaRow> rows;
  bool all_pass() const;
  /// Columns: check, theta, param, lhs, bound, bound_form, pass.
  ResultTable to_table() const;
};

struct LemmaCheckOptions {
  std::vector<double> deltas{0.4, 0.2, 0.1};
  double margin = 0.05;        // epsilon read into the pi + eps and pi(1 - mu) + eps forms
  double corner_margin = 0.1;  // eps in the corner window bound max Lambda + eps
  QuadOptions quad;
};

/// Window variations at a smooth point and at each corner, the secant
/// variation of short arcs seen from nearby off-curve points, and the
/// corner-to-arc variation at each corner with a positive angle.
LemmaReport lemma_checks(const ExteriorMap& map, const LemmaCheckOptions& opts = {});

/// The degenerate arc z(s) = s, s in [-1, 1], seen from zeta = i eta.
LemmaRow straight_segment_check(double eta = 1e-7);

}  // namespace faberlab
