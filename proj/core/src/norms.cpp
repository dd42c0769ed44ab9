#include "faberlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "faberlab/error.hpp"

namespace faberlab {

namespace {

double checked_abs(cplx v) {
  const double a = std::abs(v);
  if (!std::isfinite(a)) throw DomainError("non-finite function value on the curve");
  return a;
}

struct SearchResult {
  double theta;
  double value;
  double width;
};

SearchResult golden_max(const BoundaryFunction& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = checked_abs(f(x1));
  double f2 = checked_abs(f(x2));
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = checked_abs(f(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = checked_abs(f(x2));
    }
  }
  return f1 >= f2 ? SearchResult{x1, f1, b - a} : SearchResult{x2, f2, b - a};
}

}  // namespace

std::vector<double> norm_sample_thetas(const ExteriorMap& map, const BoundaryMesh& mesh) {
  std::vector<double> t = mesh.thetas;
  for (const auto& c : map.corners()) t.push_back(c.theta);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

NormEstimate refine_sup_norm(const BoundaryFunction& f, std::span<const double> thetas,
                             std::span<const double> moduli, const NormOptions& opts) {
  if (thetas.empty() || thetas.size() != moduli.size()) {
    throw InvalidArgument("refine_sup_norm needs matching, nonempty samples");
  }
  if (!(opts.tol > 0.0)) throw InvalidArgument("norm tolerance must be positive");
  const std::size_t M = thetas.size();

  NormEstimate est;
  std::size_t imax = 0;
  for (std::size_t i = 0; i < M; ++i) {
    if (!std::isfinite(moduli[i])) throw DomainError("non-finite function value on the curve");
    if (moduli[i] > moduli[imax]) imax = i;
  }
  est.value = moduli[imax];
  est.argmax_theta = thetas[imax];
  if (M < 3) {
    est.converged = false;
    est.last_delta = kTwoPi;
    return est;
  }

  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < M; ++i) {
    const double prev = moduli[(i + M - 1) % M];
    const double next = moduli[(i + 1) % M];
    if (moduli[i] >= prev && moduli[i] >= next) peaks.push_back(i);
  }
  const std::size_t keep = std::min<std::size_t>(peaks.size(), opts.local_searches);
  std::partial_sort(peaks.begin(), peaks.begin() + keep, peaks.end(),
                    [&](std::size_t a, std::size_t b) {
                      return moduli[a] != moduli[b] ? moduli[a] > moduli[b] : a < b;
                    });

  double widest = 0.0;
  for (std::size_t k = 0; k < keep; ++k) {
    const std::size_t i = peaks[k];
    double lo = thetas[(i + M - 1) % M];
    double hi = thetas[(i + 1) % M];
    if (i == 0) lo -= kTwoPi;
    if (i == M - 1) hi += kTwoPi;
    const auto r = golden_max(f, lo, hi, opts.tol);
    widest = std::max(widest, r.width);
    if (r.value > est.value) {
      est.value = r.value;
      est.argmax_theta = wrap_angle(r.theta);
    }
  }
  est.last_delta = widest;
  est.converged = widest < opts.tol;
  return est;
}

NormEstimate sup_norm_on_curve(const ExteriorMap& map, const BoundaryFunction& f,
                               const BoundaryMesh& mesh, double tol) {
  if (mesh.empty()) throw InvalidArgument("empty mesh");
  const auto thetas = norm_sample_thetas(map, mesh);
  std::vector<double> moduli(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) moduli[i] = checked_abs(f(thetas[i]));
  NormOptions opts;
  opts.tol = tol;
  auto est = refine_sup_norm(f, thetas, moduli, opts);
  est.refine_levels_used = mesh.corner_refine_levels;
  return est;
}

NormEstimate sup_norm_on_curve(const ExteriorMap& map, const Polynomial& p,
                               const BoundaryMesh& mesh, double tol) {
  return sup_norm_on_curve(
      map, BoundaryFunction([&](double t) { return p(map.boundary_point(t)); }), mesh, tol);
}

}  // namespace faberlab
