#pragma once

#include <optional>
#include <span>
#include <vector>

#include "faberlab/curve.hpp"
#include "faberlab/norms.hpp"
#include "faberlab/weighted.hpp"

namespace faberlab {

/// Boundary sup norms of F_n (and Q_{n,m} when a plan is given) for many
/// degrees, sharing one coarse table of F_0..F_{n_max} over the mesh.
struct NormSweep {
  std::vector<int> n;
  std::vector<NormEstimate> faber;
  std::vector<std::optional<NormEstimate>> weighted;  // empty when n <= d_m
};

NormSweep faber_norm_sweep(const ExteriorMap& map, std::span<const int> n_list,
                           const BoundaryMesh& mesh, const WeightPlan* plan = nullptr,
                           double tol = 1e-10);

}  // namespace faberlab
