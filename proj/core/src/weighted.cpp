#include "faberlab/weighted.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "faberlab/error.hpp"

namespace faberlab {

namespace {

constexpr int kCircleGrid = 4096;
constexpr int kWindowGrid = 512;
constexpr double kCoefficientFloor = 1e-14;
constexpr std::size_t kMaxSeriesOrder = std::size_t{1} << 17;

std::vector<cplx> unit_points(std::span<const double> thetas) {
  std::vector<cplx> w;
  w.reserve(thetas.size());
  for (double t : thetas) w.push_back(std::polar(1.0, t));
  return w;
}

double window_max(std::span<const double> thetas, std::span<const cplx> points, double r, int m,
                  double delta) {
  double worst = 0.0;
  for (double tk : thetas) {
    for (int i = 0; i < kWindowGrid; ++i) {
      const double t = tk - delta + 2.0 * delta * i / (kWindowGrid - 1);
      worst = std::max(worst, std::abs(weight_g(points, r, m, std::polar(1.0, t))));
    }
  }
  return worst;
}

bool windows_separated(std::span<const double> thetas, double delta) {
  // each window (theta_k - delta, theta_k + delta) may contain only theta_k
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (std::size_t j = 0; j < thetas.size(); ++j) {
      if (i == j) continue;
      double d = std::abs(thetas[i] - thetas[j]);
      d = std::min(d, kTwoPi - d);
      if (d < delta) return false;
    }
  }
  return true;
}

void require_corners(std::span<const double> thetas, int m) {
  if (thetas.empty()) throw InvalidArgument("no corners: the weight construction needs l >= 1");
  if (m < 1) throw InvalidArgument(fmt::format("m must be >= 1, got {}", m));
}

std::vector<double> corner_thetas_of(const ExteriorMap& map) {
  std::vector<double> t;
  for (const auto& c : map.corners()) t.push_back(c.theta);
  return t;
}

}  // namespace

double WeightPlan::P_bound() const {
  return 1.0 / m + std::pow(2.0, static_cast<double>(corner_count()) / m);
}

cplx WeightPlan::g(cplx w) const { return weight_g(corner_points, r_m, m, w); }

cplx WeightPlan::P(cplx w) const {
  const cplx u = 1.0 / w;
  cplx acc{};
  for (std::size_t j = a.size(); j > 0; --j) acc = (acc + a[j - 1]) * u;
  return 1.0 + acc;
}

cplx weight_g(std::span<const cplx> corner_points, double r, int m, cplx w) {
  // principal logs: |r w_k / w| < 1 keeps 1 - r w_k / w in the right half plane
  cplx s{};
  for (const cplx& wk : corner_points) s += std::log(1.0 - r * wk / w);
  return std::exp(s / static_cast<double>(m));
}

RmDelta choose_rm_delta(std::span<const double> corner_thetas, int m) {
  require_corners(corner_thetas, m);
  const auto points = unit_points(corner_thetas);
  const double gap = corner_half_gap(corner_thetas);
  double best_seen = std::numeric_limits<double>::infinity();
  for (int p = 3; p <= 40; ++p) {
    const double r = 1.0 - std::ldexp(1.0, -p);
    for (int q = 1; q <= 12; ++q) {
      const double delta = std::ldexp(gap, -q);
      if (!windows_separated(corner_thetas, delta)) continue;
      const double g = window_max(corner_thetas, points, r, m, delta);
      best_seen = std::min(best_seen, g);
      if (g < 0.5) return {r, delta, p, q, g};
    }
  }
  throw ConvergenceError(fmt::format(
      "r_m schedule exhausted at p = 40 for m = {} and {} corners; smallest window max |g_m| = {:.4g}",
      m, corner_thetas.size(), best_seen));
}

RmDelta choose_rm_delta(const ExteriorMap& map, int m) {
  return choose_rm_delta(corner_thetas_of(map), m);
}

WeightPlan build_Pm(std::span<const double> corner_thetas, int m, double r_m, double delta_m) {
  require_corners(corner_thetas, m);
  if (!(r_m > 0.0 && r_m < 1.0)) throw InvalidArgument("r_m must lie in (0, 1)");
  if (!(delta_m > 0.0)) throw InvalidArgument("delta_m must be positive");

  WeightPlan plan;
  plan.m = m;
  plan.r_m = r_m;
  plan.delta_m = delta_m;
  plan.corner_thetas.assign(corner_thetas.begin(), corner_thetas.end());
  plan.corner_points = unit_points(corner_thetas);
  const double l = static_cast<double>(corner_thetas.size());

  plan.max_window_g = window_max(corner_thetas, plan.corner_points, r_m, m, delta_m);
  if (!(plan.max_window_g < 0.5)) {
    throw InvalidArgument(fmt::format("window bound fails: max |g_m| = {:.6g} on windows of "
                                      "half-width {:.4g}",
                                      plan.max_window_g, delta_m));
  }

  std::vector<cplx> grid(kCircleGrid);
  std::vector<cplx> g_grid(kCircleGrid);
  for (int i = 0; i < kCircleGrid; ++i) {
    grid[i] = std::polar(1.0, kTwoPi * i / kCircleGrid);
    g_grid[i] = plan.g(grid[i]);
  }

  // coefficients decay like r^j, so the budget starts a few e-folds out
  std::size_t N = 1024;
  while (N < kMaxSeriesOrder && static_cast<double>(N) * (1.0 - r_m) < 8.0) N *= 2;

  const double target_tail = 1.0 / (2.0 * m);
  for (;; N *= 2) {
    if (N > kMaxSeriesOrder) {
      throw ConvergenceError(fmt::format(
          "truncation of g_m cannot reach 1/m = {:.4g} within {} coefficients", 1.0 / m,
          kMaxSeriesOrder));
    }
    LogSeries L;
    L.coeffs.assign(N, cplx{});
    std::vector<cplx> power(plan.corner_points.size(), cplx{1.0, 0.0});
    double rj = 1.0;
    for (std::size_t j = 1; j <= N; ++j) {
      cplx s{};
      rj *= r_m;
      for (std::size_t k = 0; k < power.size(); ++k) {
        power[k] *= r_m * plan.corner_points[k];
        s += power[k];
      }
      // sums of roots of unity cancel to roundoff; keep them exactly zero
      if (std::abs(s) < 32.0 * std::numeric_limits<double>::epsilon() * l * rj) s = 0.0;
      L.coeffs[j - 1] = -s / (static_cast<double>(j) * m);
    }
    const LaurentSeries series = unit_exp(L, N);

    double tail_at_N = 0.0;
    try {
      tail_at_N = sup_tail_bound(series, 0);
    } catch (const ConvergenceError&) {
      continue;
    }
    (void)tail_at_N;

    // the tail bound is nonincreasing in d
    std::size_t lo = 0;
    std::size_t hi = N;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (sup_tail_bound(series, mid) < target_tail) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    if (lo >= N) continue;

    for (std::size_t d = lo; d < N; d = std::max(d + 1, d + d / 8)) {
      plan.a.assign(series.neg_coeffs().begin(), series.neg_coeffs().begin() + d);
      for (auto& c : plan.a) {
        if (std::abs(c) < kCoefficientFloor) c = 0.0;
      }
      while (!plan.a.empty() && plan.a.back() == cplx{}) plan.a.pop_back();
      double err = 0.0;
      double supP = 0.0;
      for (int i = 0; i < kCircleGrid; ++i) {
        const cplx P = plan.P(grid[i]);
        err = std::max(err, std::abs(g_grid[i] - P));
        supP = std::max(supP, std::abs(P));
      }
      if (err < 1.0 / m) {
        plan.d_m = static_cast<int>(plan.a.size());
        plan.sup_g_minus_P = err;
        plan.sup_P_on_circle = supP;
        plan.tail_bound = sup_tail_bound(series, d);
        plan.series_order = N;
        if (!(supP < plan.P_bound())) {
          throw ConvergenceError(fmt::format("sup |P_m| = {:.6g} violates the bound {:.6g}", supP,
                                             plan.P_bound()));
        }
        return plan;
      }
    }
  }
}

WeightPlan build_Pm(const ExteriorMap& map, int m, double r_m, double delta_m) {
  return build_Pm(corner_thetas_of(map), m, r_m, delta_m);
}

WeightPlan make_weight_plan(const ExteriorMap& map, int m) {
  const auto choice = choose_rm_delta(map, m);
  return build_Pm(map, m, choice.r_m, choice.delta_m);
}

Polynomial weighted_faber(std::span<const Polynomial> fabers, const WeightPlan& plan, int n) {
  if (n <= plan.d_m) {
    throw InvalidArgument(fmt::format("weighted Faber polynomial needs n > d_m = {}, got {}",
                                      plan.d_m, n));
  }
  if (static_cast<int>(fabers.size()) <= n) {
    throw InvalidArgument(fmt::format("need F_0..F_{}, got {} polynomials", n, fabers.size()));
  }
  Polynomial Q = fabers[n];
  for (int j = 1; j <= plan.d_m; ++j) {
    if (plan.a[j - 1] != cplx{}) Q.axpy(plan.a[j - 1], fabers[n - j]);
  }
  return Q;
}

cplx weighted_faber_value(std::span<const cplx> faber_values, const WeightPlan& plan, int n) {
  if (n <= plan.d_m) {
    throw InvalidArgument(fmt::format("weighted Faber polynomial needs n > d_m = {}, got {}",
                                      plan.d_m, n));
  }
  if (static_cast<int>(faber_values.size()) <= n) {
    throw InvalidArgument(fmt::format("need F_0..F_{} values, got {}", n, faber_values.size()));
  }
  cplx q = faber_values[n];
  for (int j = 1; j <= plan.d_m; ++j) q += plan.a[j - 1] * faber_values[n - j];
  return q;
}

}  // namespace faberlab
