#pragma once

#include <optional>
#include <span>
#include <vector>

#include "faberlab/curve.hpp"
#include "faberlab/polynomial.hpp"
#include "faberlab/result_table.hpp"

namespace faberlab {

struct ChebyshevOptions {
  double tol = 1e-6;        // relative equioscillation spread or duality gap
  int max_iter = 500;       // Lawson iterations
  double gamma = 1.0;       // Lawson weight exponent
  int stall_window = 50;    // Lawson stops after this many non-improving rounds
  bool polish = true;       // barrier-Newton refinement of the Lawson iterate
  bool exchange_pass = false;
  int max_newton = 2000;
};

struct MinimaxResult {
  Polynomial T;                     // monic
  std::vector<cplx> faber_coeffs;   // T = cap^n (F_n + sum_k x_k F_k), x_0..x_{n-1}
  double norm = 0.0;                // max |T| over the working points
  double widom = 0.0;               // norm / cap^n
  double lower_bound = 0.0;         // weighted least-squares lower bound on widom
  int iterations = 0;               // Lawson rounds
  int newton_steps = 0;
  /// (max|e| - sum_i w_i |e_i|) / max|e| under the final normalized weights
  double residual_equioscillation = 0.0;
  /// (widom - lower_bound) / widom, a certified optimality gap
  double duality_gap = 0.0;
  bool converged = false;  // either measure below tol
  int refine_levels = 0;            // corner refinement of the mesh
  int exchange_levels = 0;
  std::size_t working_points = 0;
};

/// Monic minimax polynomial of degree n on the points psi(e^{i theta_j}).
///
/// The error is written in the Faber basis, e = F_n + sum_{k<n} x_k F_k,
/// which stays well conditioned on the curve. Lawson reweighting
/// w_i <- w_i |e_i|^gamma runs first; when it stalls above tol the iterate
/// is refined by a log-barrier Newton method for min t s.t. |e_i| <= t.
MinimaxResult chebyshev_monic(const ExteriorMap& map, int n, const BoundaryMesh& mesh,
                              const ChebyshevOptions& opts = {});

/// Same, on an explicit set of parameter values.
MinimaxResult chebyshev_monic(const ExteriorMap& map, int n, std::span<const double> thetas,
                              const ChebyshevOptions& opts = {});

/// norm / cap^n evaluated in log space.
double widom_factor(double norm, double cap, int n);

struct WidomTableOptions {
  int base_count = 1024;        // raised to 16(n + 1) when smaller
  int corner_refine_levels = 8;
  ChebyshevOptions solver;
  double norm_tol = 1e-10;
};

/// Per degree: ||F_n||, ||Q_{n,m}|| (when m is given, the curve has corners
/// and n > d_m), mesh norm of T_n, W_n, and the check
/// 1 - 1e-6 <= W_n <= min(||F_n||, ||Q_{n,m}||) + 1e-6.
ResultTable widom_table(const ExteriorMap& map, std::span<const int> n_list,
                        std::optional<int> m, const WidomTableOptions& opts = {});

}  // namespace faberlab
