#pragma once

#include <span>
#include <vector>

#include "faberlab/curve.hpp"
#include "faberlab/laurent.hpp"
#include "faberlab/polynomial.hpp"

namespace faberlab {

/// F_0 .. F_{n_max} in monomial form from the generating-series recurrence
///
///   b F_{n+1} = (z - b0) F_n - sum_{k=1}^{n} b_k F_{n-k} - n b_n .
///
/// Monomial coefficients grow geometrically with n on most curves; use
/// FaberEvaluator for boundary values at large degree.
std::vector<Polynomial> faber_sequence(const LaurentSeries& series, int n_max);

/// Evaluates F_0(z) .. F_n(z) at a point by running the same recurrence on
/// values instead of coefficients. On Gamma the values stay O(1) and errors
/// grow at most polynomially in n, unlike Horner on monomial coefficients.
class FaberEvaluator {
 public:
  explicit FaberEvaluator(const LaurentSeries& series);
  /// Laurent data from laurent_coeffs(map, max(n_max, 1)).
  static FaberEvaluator for_map(const ExteriorMap& map, int n_max);

  /// Largest n with all required coefficients available.
  int max_degree() const { return max_degree_; }
  double capacity() const { return b_; }

  /// out[n] = F_n(z) for n = 0 .. out.size() - 1.
  void evaluate(cplx z, std::span<cplx> out) const;
  std::vector<cplx> evaluate(cplx z, int n_max) const;

 private:
  double b_ = 1.0;
  cplx b0_;
  std::vector<cplx> dense_;                           // b_k, k >= 1
  std::vector<std::pair<int, cplx>> sparse_;          // nonzero (k, b_k)
  int max_degree_ = 0;
};

/// F_0..F_{n_max} at psi(e^{i theta_j}), row-major by point.
struct FaberTable {
  std::vector<double> thetas;
  int n_max = 0;
  std::vector<cplx> values;

  cplx at(std::size_t point, int n) const { return values[point * (n_max + 1) + n]; }
  std::span<const cplx> row(std::size_t point) const {
    return {values.data() + point * (n_max + 1), static_cast<std::size_t>(n_max + 1)};
  }
};

FaberTable faber_boundary_table(const ExteriorMap& map, const FaberEvaluator& faber,
                                std::span<const double> thetas, int n_max);

/// F_n(psi(e^{i theta_j})) by Horner on the monomial coefficients.
std::vector<cplx> faber_boundary_values(const ExteriorMap& map, const Polynomial& Fn,
                                        const BoundaryMesh& mesh);

/// e^{-i n theta_j} F_n(psi(e^{i theta_j})), where n = deg F_n.
std::vector<cplx> normalized_boundary_values(const ExteriorMap& map, const Polynomial& Fn,
                                             const BoundaryMesh& mesh);

/// Recurrence-based counterpart of normalized_boundary_values.
std::vector<cplx> normalized_boundary_values(const ExteriorMap& map, const FaberEvaluator& faber,
                                             int n, std::span<const double> thetas);

}  // namespace faberlab
