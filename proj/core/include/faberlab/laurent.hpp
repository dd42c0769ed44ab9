#pragma once

#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "faberlab/curve.hpp"

namespace faberlab {

enum class SeriesKind { MapSeries, UnitSeries };

/// Expansion at infinity  b w + b0 + sum_{k=1}^{N} b_k w^{-k}.
///
/// MapSeries holds the Laurent data of an exterior map (b > 0). UnitSeries
/// holds 1 + sum_j a_j w^{-j}, with b = 0 and b0 = 1 exactly.
class LaurentSeries {
 public:
  static constexpr std::size_t kMaxOrder = std::size_t{1} << 20;

  LaurentSeries() = default;
  static LaurentSeries map_series(double b, cplx b0, std::vector<cplx> neg_coeffs);
  static LaurentSeries unit(std::vector<cplx> a);

  SeriesKind kind() const { return kind_; }
  double b() const { return b_; }
  cplx b0() const { return b0_; }
  std::span<const cplx> neg_coeffs() const { return neg_; }
  std::size_t order() const { return neg_.size(); }

  /// b_k for k >= 1 (zero past the stored order).
  cplx coeff(std::size_t k) const { return k >= 1 && k <= neg_.size() ? neg_[k - 1] : cplx{}; }

  /// Estimated sum of |b_k| over the discarded indices k > N.
  double tail_estimate() const { return tail_estimate_; }
  void set_tail_estimate(double t) { tail_estimate_ = t; }

  cplx operator()(cplx w) const;
  /// Drops every coefficient past w^{-d}.
  LaurentSeries truncated(std::size_t d) const;

 private:
  SeriesKind kind_ = SeriesKind::UnitSeries;
  double b_ = 0.0;
  cplx b0_{1.0, 0.0};
  std::vector<cplx> neg_;
  double tail_estimate_ = 0.0;
};

/// Logarithm of a unit series, sum_{j>=1} l_j w^{-j} (no constant term).
struct LogSeries {
  std::vector<cplx> coeffs;  // coeffs[j-1] = l_j

  LogSeries& operator+=(const LogSeries& other);
  LogSeries& operator*=(cplx s);
};

/// Laurent coefficients of psi at infinity from a discrete Fourier sum over
/// M = 8N nodes on |w| = rho. The radius is capped at 1 + ln(1e6)/N so that
/// rho^k amplifies roundoff by at most 1e6. Coefficients below that floor
/// are flushed to zero. Throws ConvergenceError if the tail heuristic
/// max(|b_{N-1}|, |b_N|) rho/(rho - 1) exceeds tail_tol.
LaurentSeries laurent_coeffs(const ExteriorMap& map, int N, double rho = 1.5,
                             double tail_tol = std::numeric_limits<double>::infinity());

/// log(1 - c w^{-1}) = -sum_j c^j w^{-j} / j, truncated at w^{-N}.
LogSeries log_one_minus(cplx c, std::size_t N);

LogSeries unit_log(const LaurentSeries& s, std::size_t N);
LaurentSeries unit_exp(const LogSeries& l, std::size_t N);
LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b, std::size_t N);

/// Upper estimate of max_{|w|=1} |s(w) - s_d(w)| where s_d keeps terms up to
/// w^{-d}: the stored absolute tail sum plus a geometric extrapolation of the
/// trailing block ratio. Throws ConvergenceError if the coefficients do not
/// decay.
double sup_tail_bound(const LaurentSeries& s, std::size_t d);

}  // namespace faberlab
