#pragma once

#include <span>
#include <vector>

#include "faberlab/curve.hpp"
#include "faberlab/laurent.hpp"
#include "faberlab/polynomial.hpp"

namespace faberlab {

/// Corner weight g_m(w) = prod_k (1 - r w_k / w)^{1/m} with g_m(inf) = 1,
/// and its truncation P_m(w) = 1 + sum_{j<=d_m} a_j w^{-j}.
struct WeightPlan {
  int m = 1;
  double r_m = 0.0;
  double delta_m = 0.0;
  std::vector<double> corner_thetas;
  std::vector<cplx> corner_points;  // w_k = e^{i theta_k}
  std::vector<cplx> a;              // a_1 .. a_{d_m}
  int d_m = 0;

  double sup_P_on_circle = 0.0;  // 4096-point grid
  double sup_g_minus_P = 0.0;    // 4096-point grid
  double max_window_g = 0.0;     // 512 points per window
  double tail_bound = 0.0;       // sup_tail_bound at d_m
  std::size_t series_order = 0;  // coefficients computed before truncation

  std::size_t corner_count() const { return corner_points.size(); }
  /// m^{-1} + 2^{l/m}
  double P_bound() const;
  cplx g(cplx w) const;
  cplx P(cplx w) const;
};

struct RmDelta {
  double r_m = 0.0;
  double delta_m = 0.0;
  int p = 0;  // r_m = 1 - 2^{-p}
  int q = 0;  // delta_m = 2^{-q} * gap
  double max_window_g = 0.0;
};

/// g_m(w) evaluated directly from its product form.
cplx weight_g(std::span<const cplx> corner_points, double r, int m, cplx w);

/// First r = 1 - 2^{-p}, p = 3..40, admitting a window half-width
/// delta = 2^{-q} gap, q = 1..12, with |g_m| < 1/2 on every window.
RmDelta choose_rm_delta(std::span<const double> corner_thetas, int m);
RmDelta choose_rm_delta(const ExteriorMap& map, int m);

/// Series of g_m via exp((1/m) sum_k log(1 - r w_k / w)), truncated at the
/// smallest d_m whose tail bound is below 1/(2m) and whose grid error
/// |g_m - P_m| is below 1/m. Verifies the window and sup|P_m| bounds.
WeightPlan build_Pm(std::span<const double> corner_thetas, int m, double r_m, double delta_m);
WeightPlan build_Pm(const ExteriorMap& map, int m, double r_m, double delta_m);
/// choose_rm_delta followed by build_Pm.
WeightPlan make_weight_plan(const ExteriorMap& map, int m);

/// Q_{n,m} = F_n + sum_{j=1}^{d_m} a_j F_{n-j}; fabers holds F_0 .. F_n.
Polynomial weighted_faber(std::span<const Polynomial> fabers, const WeightPlan& plan, int n);

/// Value form of weighted_faber: faber_values[k] = F_k(z), k = 0..n.
cplx weighted_faber_value(std::span<const cplx> faber_values, const WeightPlan& plan, int n);

}  // namespace faberlab
