#pragma once

#include <functional>
#include <span>

#include "faberlab/curve.hpp"
#include "faberlab/polynomial.hpp"

namespace faberlab {

struct NormEstimate {
  double value = 0.0;
  double argmax_theta = 0.0;
  int refine_levels_used = 0;  // corner refinement of the mesh
  double last_delta = 0.0;     // final golden-section bracket width
  bool converged = false;
};

struct NormOptions {
  double tol = 1e-10;  // bracket width at which local searches stop
  int local_searches = 5;
};

/// theta -> f(psi(e^{i theta})).
using BoundaryFunction = std::function<cplx(double)>;

/// Coarse maximum over the mesh and the corner preimages, followed by
/// golden-section searches on theta -> |f| around the largest local maxima.
/// The estimate never drops below the coarse maximum.
NormEstimate sup_norm_on_curve(const ExteriorMap& map, const BoundaryFunction& f,
                               const BoundaryMesh& mesh, double tol = 1e-10);
/// Same, for a polynomial in z evaluated by Horner.
NormEstimate sup_norm_on_curve(const ExteriorMap& map, const Polynomial& p,
                               const BoundaryMesh& mesh, double tol = 1e-10);

/// Refinement stage alone, for callers that already sampled |f| at sorted
/// thetas on [0, 2pi).
NormEstimate refine_sup_norm(const BoundaryFunction& f, std::span<const double> thetas,
                             std::span<const double> moduli, const NormOptions& opts = {});

/// Sorted union of mesh thetas and corner preimages.
std::vector<double> norm_sample_thetas(const ExteriorMap& map, const BoundaryMesh& mesh);

}  // namespace faberlab
