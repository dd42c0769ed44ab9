#include "faberlab/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "faberlab/error.hpp"
#include "quadrature.hpp"

namespace faberlab {

namespace {

constexpr double kRelTol = 1e-11;

cplx boundary(const ExteriorMap& map, double t) { return map.boundary_point(t); }

double density_at(const ExteriorMap& map, cplx z_theta, double t) {
  const cplx w = std::polar(1.0, t);
  return std::real(w * map.psi_prime(w) / (map.psi(w) - z_theta));
}

// Principal change of arg(psi - z) between two parameters.
double arg_change(const ExteriorMap& map, cplx z, double t0, double t1) {
  return std::arg((boundary(map, t1) - z) / (boundary(map, t0) - z));
}

struct Window {
  double lo;
  double hi;
  double center;
  bool at_theta;
};

// Exclusion windows inside [a, b] around theta and the corners (mod 2pi).
std::vector<Window> exclusion_windows(const ExteriorMap& map, double theta, double a, double b,
                                      double h, bool theta_inside) {
  std::vector<Window> out;
  const bool theta_is_corner = map.corner_index(theta) >= 0;
  auto add = [&](double c, bool at_theta) {
    for (int j = -2; j <= 2; ++j) {
      const double s = c + kTwoPi * j;
      if (s + h <= a || s - h >= b) continue;
      if (at_theta && (s - h < a || s + h > b)) {
        throw DomainError("the point theta must lie strictly inside the integration range");
      }
      out.push_back({std::max(a, s - h), std::min(b, s + h), s, at_theta});
    }
  };
  if (theta_inside) add(theta, true);
  for (const auto& c : map.corners()) {
    double d = std::abs(wrap_angle(c.theta - theta));
    d = std::min(d, kTwoPi - d);
    if (theta_is_corner && d < 1e-10) continue;
    if (d < 2.0 * h) {
      throw DomainError(fmt::format(
          "theta = {:.12g} is within the exclusion window of the corner at {:.12g}", theta,
          c.theta));
    }
    add(c.theta, false);
  }
  std::sort(out.begin(), out.end(), [](const Window& x, const Window& y) { return x.lo < y.lo; });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].lo < out[i - 1].hi) throw DomainError("exclusion windows overlap");
  }
  return out;
}

// Smooth change of v_theta across the window around theta, with the atom
// lambda(theta) pi removed.
double theta_window_change(const ExteriorMap& map, double theta, const Window& w) {
  const cplx z = boundary(map, theta);
  const double lam = map.lambda_at(theta, 1e-10);
  const double raw = arg_change(map, z, w.lo, w.hi);
  const double shifted = raw + kTwoPi * std::round((lam * kPi - raw) / kTwoPi);
  return shifted - lam * kPi;
}

// abs_tol is the error budget of [a, b]; 0 leaves only the relative target
template <class F>
double gk(F&& f, double a, double b, unsigned depth, double* err, double abs_tol = 0.0) {
  return detail::gk_adaptive(f, a, b, depth, kRelTol, err, abs_tol);
}

struct Accumulated {
  cplx value;
  double error = 0.0;
};

// int_{[a,b]} weight(t) dv_theta(t) without the atom at theta (signed), or
// int |dv_theta| (absolute). Windows contribute their endpoint changes.
Accumulated integrate_dv(const ExteriorMap& map, double theta, double a, double b, int n,
                         bool absolute, bool theta_inside, const QuadOptions& opts) {
  const double h = opts.window;
  const cplx z = boundary(map, theta);
  const auto windows = exclusion_windows(map, theta, a, b, h, theta_inside);

  Accumulated acc;
  const double panel = std::min(0.5, 4.0 * kPi / (std::abs(n) + 1));
  auto integrate_segment = [&](double c, double d) {
    if (d - c <= 0.0) return;
    const int panels = std::max(1, static_cast<int>(std::ceil((d - c) / panel)));
    std::vector<double> cuts;
    for (int k = 0; k <= panels; ++k) cuts.push_back(c + (d - c) * k / panels);
    // segment ends abut exclusion windows, where the density may blow up
    const double reach = std::min(panel, 0.5 * (d - c));
    for (double r = 4.0 * h; r < reach; r *= 4.0) {
      cuts.push_back(c + r);
      cuts.push_back(d - r);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 1; k < cuts.size(); ++k) {
      const double lo = cuts[k - 1];
      const double hi = cuts[k];
      if (!(hi > lo)) continue;
      // equal shares of a tenth of the tolerance; graded panels next to a
      // singularity would otherwise chase round-off down to max_depth
      const double budget = 0.1 * opts.tol / static_cast<double>(cuts.size());
      if (absolute) {
        acc.value += gk([&](double t) { return std::abs(density_at(map, z, t)); }, lo, hi,
                        opts.max_depth, &acc.error, budget);
      } else {
        const double re = gk([&](double t) { return std::cos(n * t) * density_at(map, z, t); },
                             lo, hi, opts.max_depth, &acc.error, budget);
        const double im = gk([&](double t) { return std::sin(n * t) * density_at(map, z, t); },
                             lo, hi, opts.max_depth, &acc.error, budget);
        acc.value += cplx(re, im);
      }
    }
  };

  double cursor = a;
  for (const auto& w : windows) {
    integrate_segment(cursor, w.lo);
    const double change = w.at_theta ? theta_window_change(map, theta, w)
                                     : arg_change(map, z, w.lo, w.hi);
    if (absolute) {
      acc.value += std::abs(change);
    } else {
      acc.value += std::polar(change, n * w.center);
      acc.error += std::abs(n) * (w.hi - w.lo) * std::abs(change);
    }
    cursor = w.hi;
  }
  integrate_segment(cursor, b);
  return acc;
}

// The window remainder is first order in the half-width while the quadrature
// error is not, so shrink the windows until the combined estimate meets tol.
Accumulated integrate_signed(const ExteriorMap& map, double theta, double a, double b, int n,
                             bool theta_inside, const QuadOptions& opts) {
  QuadOptions o = opts;
  auto acc = integrate_dv(map, theta, a, b, n, false, theta_inside, o);
  for (int tries = 0; tries < 4 && acc.error > opts.tol * kPi && o.window > 1e-9; ++tries) {
    o.window = std::max(1e-9, o.window / 16.0);
    acc = integrate_dv(map, theta, a, b, n, false, theta_inside, o);
  }
  return acc;
}

}  // namespace

SecantProfile secant_argument(const ExteriorMap& map, double theta, std::span<const double> t_grid) {
  if (t_grid.empty()) throw InvalidArgument("empty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > theta && t_grid[i] < theta + kTwoPi)) {
      throw InvalidArgument(
          fmt::format("t grid must lie in (theta, theta + 2pi); got {:.12g}", t_grid[i]));
    }
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw InvalidArgument("t grid must be increasing");
  }
  const cplx z = boundary(map, theta);

  // increment of the continuous argument from t0 to t1, bisecting large steps
  auto increment = [&](auto&& self, double t0, double t1, int depth) -> double {
    const double d = arg_change(map, z, t0, t1);
    if (std::abs(d) < kPi / 2) return d;
    if (depth == 10) {
      throw ConvergenceError(fmt::format(
          "grid too coarse: argument step {:.4g} persists on [{:.12g}, {:.12g}]", d, t0, t1));
    }
    const double mid = 0.5 * (t0 + t1);
    return self(self, t0, mid, depth + 1) + self(self, mid, t1, depth + 1);
  };

  SecantProfile prof;
  prof.theta = theta;
  prof.t_grid.assign(t_grid.begin(), t_grid.end());
  prof.jump = kPi * map.lambda_at(theta, 1e-10);
  prof.values.resize(t_grid.size());
  prof.values[0] = std::arg(boundary(map, t_grid[0]) - z);
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    prof.values[i] = prof.values[i - 1] + increment(increment, t_grid[i - 1], t_grid[i], 0);
  }
  return prof;
}

double secant_density(const ExteriorMap& map, double theta, double t) {
  double d = std::abs(wrap_angle(t - theta));
  d = std::min(d, kTwoPi - d);
  if (d < 1e-14) throw DomainError("secant density is undefined at t = theta");
  if (map.corner_index(t) >= 0) throw CornerPointError("secant density requested at a corner");
  return density_at(map, boundary(map, theta), t);
}

QuadResult pommerenke_faber_value(const ExteriorMap& map, double theta, int n,
                                  const QuadOptions& opts) {
  if (n < 1) throw InvalidArgument("pommerenke_faber_value needs n >= 1");
  const double alpha = opts.alpha.value_or(theta - kPi);
  // place theta inside (alpha, alpha + 2pi)
  double th = theta;
  while (th <= alpha) th += kTwoPi;
  while (th >= alpha + kTwoPi) th -= kTwoPi;
  const auto acc = integrate_signed(map, th, alpha, alpha + kTwoPi, n, true, opts);
  QuadResult res;
  res.value = map.lambda_at(theta, 1e-10) * std::polar(1.0, n * th) + acc.value / kPi;
  res.error = acc.error / kPi;
  res.converged = res.error <= opts.tol;
  return res;
}

double local_variation(const ExteriorMap& map, double theta, double delta, const QuadOptions& opts) {
  if (!(delta > 0.0 && delta < kPi)) throw InvalidArgument("local_variation needs 0 < delta < pi");
  const auto acc = integrate_dv(map, theta, theta - delta, theta + delta, 0, true, true, opts);
  if (acc.error > 1e-3) {
    throw ConvergenceError(fmt::format("local variation quadrature error {:.3g} exceeds 1e-3",
                                       acc.error));
  }
  return map.lambda_at(theta, 1e-10) + acc.value.real() / kPi;
}

QuadResult variation_tail(const ExteriorMap& map, double theta, double delta, int n,
                          const QuadOptions& opts) {
  if (!(delta > opts.window && delta < kPi)) {
    throw InvalidArgument("variation_tail needs window < delta < pi");
  }
  const auto acc = integrate_signed(map, theta, theta + delta, theta - delta + kTwoPi, n, false, opts);
  QuadResult res;
  res.value = acc.value / kPi;
  res.error = acc.error / kPi;
  res.converged = res.error <= opts.tol;
  return res;
}

double riemann_lebesgue_sup(const ExteriorMap& map, double delta, int n,
                            std::span<const double> thetas, const QuadOptions& opts) {
  double sup = 0.0;
  for (double th : thetas) sup = std::max(sup, std::abs(variation_tail(map, th, delta, n, opts).value));
  return sup;
}

double arc_argument_variation(const std::function<cplx(double)>& z,
                              const std::function<cplx(double)>& dz, double a, double b,
                              cplx zeta, std::span<const double> breakpoints) {
  std::vector<double> cuts{a, b};
  for (double c : breakpoints) {
    if (!(c > a && c < b)) continue;
    cuts.push_back(c);
    // geometric cuts down to the parameter scale on which zeta is resolved
    const double speed = std::abs(dz(c));
    double r = speed > 0.0 ? std::abs(z(c) - zeta) / speed : 0.0;
    r = std::max(r, 1e-12 * (b - a));
    for (; r < b - a; r *= 4.0) {
      if (c - r > a) cuts.push_back(c - r);
      if (c + r < b) cuts.push_back(c + r);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  double err = 0.0;
  // z(s) - zeta cancels when zeta hugs the arc, so the integrand carries
  // relative noise near 1e-10 and a tighter tolerance never terminates.
  constexpr double kArcTol = 1e-8;
  auto f = [&](double s) { return std::abs(std::imag(dz(s) / (z(s) - zeta))); };
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i] > cuts[i - 1]) {
      total += detail::gk_adaptive(f, cuts[i - 1], cuts[i], 15, kArcTol, &err);
    }
  }
  if (err > 1e-3) {
    throw ConvergenceError(fmt::format("arc variation quadrature error {:.3g} exceeds 1e-3", err));
  }
  return total;
}

double corner_smallest_angle(const ExteriorMap& map, int corner) {
  const auto corners = map.corners();
  if (corner < 0 || corner >= static_cast<int>(corners.size())) {
    throw InvalidArgument("corner index out of range");
  }
  const double tk = corners[corner].theta;
  const cplx zk = corners[corner].z;
  constexpr double eps = 1e-7;
  const cplx fwd = boundary(map, tk + eps) - zk;
  const cplx bwd = boundary(map, tk - eps) - zk;
  return std::abs(std::arg(fwd / bwd)) / kPi;
}

bool LemmaReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const LemmaRow& r) { return r.pass; });
}

ResultTable LemmaReport::to_table() const {
  ResultTable t({"check", "theta", "param", "lhs", "bound", "bound_form", "pass"});
  for (const auto& r : rows) {
    t.add_row({r.check, r.theta, r.param, r.lhs, r.bound, r.bound_form, r.pass});
  }
  return t;
}

LemmaRow straight_segment_check(double eta) {
  const cplx zeta(0.0, eta);
  const double breaks[] = {0.0};
  const double lhs = arc_argument_variation([](double s) { return cplx(s, 0.0); },
                                            [](double) { return cplx(1.0, 0.0); }, -1.0, 1.0,
                                            zeta, breaks);
  return {"segment_variation", 0.0, eta, lhs, kPi, "pi", std::abs(lhs - kPi) < 1e-6};
}

LemmaReport lemma_checks(const ExteriorMap& map, const LemmaCheckOptions& opts) {
  LemmaReport report;
  const auto corners = map.corners();

  // a smooth point: the middle of the widest gap between corners
  double smooth = kPi / 2;
  if (!corners.empty()) {
    double best_gap = -1.0;
    for (std::size_t k = 0; k < corners.size(); ++k) {
      const double a = corners[k].theta;
      const double b = k + 1 < corners.size() ? corners[k + 1].theta : corners[0].theta + kTwoPi;
      if (b - a > best_gap) {
        best_gap = b - a;
        smooth = wrap_angle(0.5 * (a + b));
      }
    }
  }

  double prev = std::numeric_limits<double>::infinity();
  double prev_dini = std::numeric_limits<double>::infinity();
  for (double d : opts.deltas) {
    const double v = local_variation(map, smooth, d, opts.quad);
    report.rows.push_back({"window_variation", smooth, d, v, prev, "< previous, >= 1",
                           v < prev && v >= 1.0 - 1e-12});
    prev = v;
    const double dini = kPi * (v - 1.0);
    report.rows.push_back(
        {"arc_variation", smooth, d, dini, prev_dini, "< previous", dini < prev_dini});
    prev_dini = dini;
  }

  const double gap = corner_half_gap([&] {
    std::vector<double> t;
    for (const auto& c : corners) t.push_back(c.theta);
    return t;
  }());
  const double corner_bound = map.max_Lambda() + opts.corner_margin;
  for (const auto& c : corners) {
    for (double d : opts.deltas) {
      const double dd = std::min(d, 0.9 * gap);
      const double v = local_variation(map, c.theta, dd, opts.quad);
      report.rows.push_back({"corner_window_variation", c.theta, dd, v, corner_bound,
                             "max Lambda + eps", v <= corner_bound});
    }
  }

  // short arcs around the smooth point seen from nearby points on both sides
  const auto z = [&](double s) { return map.boundary_point(s); };
  const auto dz = [&](double s) { return map.boundary_tangent(s); };
  const cplx z0 = map.boundary_point(smooth);
  const cplx unit_t = map.boundary_tangent(smooth) / std::abs(map.boundary_tangent(smooth));
  for (double half : {0.02, 0.01, 0.005}) {
    for (double eta : {1e-2 * half, 1e-4 * half}) {
      for (int side : {-1, 1}) {
        const cplx zeta = z0 + cplx(0.0, side * eta) * unit_t;
        const double br[] = {smooth};
        const double lhs = arc_argument_variation(z, dz, smooth - half, smooth + half, zeta, br);
        report.rows.push_back({side > 0 ? "near_arc_variation_inner" : "near_arc_variation_outer",
                               smooth, half, lhs, kPi + opts.margin, "pi + eps",
                               lhs <= kPi + opts.margin});
      }
    }
  }

  // arcs leaving a corner: z on one side, zeta(t) on the other
  for (std::size_t k = 0; k < corners.size(); ++k) {
    const double mu = corner_smallest_angle(map, static_cast<int>(k));
    if (mu < 1e-3) continue;
    const double bound = kPi * (1.0 - mu) + opts.margin;
    const double tk = corners[k].theta;
    for (double delta : {0.02, 0.005}) {
      for (int dir : {1, -1}) {
        double worst = 0.0;
        double worst_t = 0.0;
        for (double frac : {0.5, 0.1, 0.01}) {
          const double tt = frac * delta;
          const cplx zeta = map.boundary_point(tk - dir * tt);
          // s = delta * sigma^2 smooths the square-root behaviour at the corner
          const auto zs = [&](double sigma) { return map.boundary_point(tk + dir * delta * sigma * sigma); };
          const auto dzs = [&](double sigma) {
            return map.boundary_tangent(tk + dir * delta * sigma * sigma) *
                   (2.0 * dir * delta * sigma);
          };
          const double br[] = {std::sqrt(frac)};
          // stay clear of the corner preimage itself; the skipped piece turns by O(1e-9)
          const double sigma0 = std::sqrt(1e-9 / delta);
          const double lhs = arc_argument_variation(zs, dzs, sigma0, 1.0, zeta, br);
          if (lhs > worst) {
            worst = lhs;
            worst_t = tt;
          }
        }
        report.rows.push_back({dir > 0 ? "corner_arc_variation_fwd" : "corner_arc_variation_bwd",
                               tk, worst_t, worst, bound, "pi (1 - mu) + eps", worst <= bound});
      }
    }
  }
  return report;
}

}  // namespace faberlab
