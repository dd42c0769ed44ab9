#include "faberlab/sweep.hpp"

#include <algorithm>

#include "faberlab/error.hpp"
#include "faberlab/faber.hpp"
#include "faberlab/parallel.hpp"

namespace faberlab {

NormSweep faber_norm_sweep(const ExteriorMap& map, std::span<const int> n_list,
                           const BoundaryMesh& mesh, const WeightPlan* plan, double tol) {
  if (n_list.empty()) throw InvalidArgument("n_list must be nonempty");
  if (mesh.empty()) throw InvalidArgument("empty mesh");
  const int n_max = *std::max_element(n_list.begin(), n_list.end());
  if (*std::min_element(n_list.begin(), n_list.end()) < 0) throw InvalidArgument("negative degree");

  const auto faber = FaberEvaluator::for_map(map, n_max);
  const auto thetas = norm_sample_thetas(map, mesh);
  const auto table = faber_boundary_table(map, faber, thetas, n_max);
  NormOptions opts;
  opts.tol = tol;

  NormSweep sweep;
  sweep.n.assign(n_list.begin(), n_list.end());
  sweep.faber.resize(n_list.size());
  sweep.weighted.resize(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t idx) {
    const int n = n_list[idx];
    std::vector<cplx> buf(n + 1);
    std::vector<double> moduli(thetas.size());

    for (std::size_t i = 0; i < thetas.size(); ++i) moduli[i] = std::abs(table.at(i, n));
    const BoundaryFunction fn = [&](double t) {
      faber.evaluate(map.boundary_point(t), buf);
      return buf[n];
    };
    sweep.faber[idx] = refine_sup_norm(fn, thetas, moduli, opts);
    sweep.faber[idx].refine_levels_used = mesh.corner_refine_levels;

    if (plan && n > plan->d_m) {
      for (std::size_t i = 0; i < thetas.size(); ++i) {
        moduli[i] = std::abs(weighted_faber_value(table.row(i), *plan, n));
      }
      const BoundaryFunction qn = [&](double t) {
        faber.evaluate(map.boundary_point(t), buf);
        return weighted_faber_value(buf, *plan, n);
      };
      auto est = refine_sup_norm(qn, thetas, moduli, opts);
      est.refine_levels_used = mesh.corner_refine_levels;
      sweep.weighted[idx] = est;
    }
  });
  return sweep;
}

}  // namespace faberlab
