#include "faberlab/faber.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "faberlab/error.hpp"

namespace faberlab {

std::vector<Polynomial> faber_sequence(const LaurentSeries& series, int n_max) {
  if (n_max < 0) throw InvalidArgument("faber_sequence needs n_max >= 0");
  if (series.kind() != SeriesKind::MapSeries) {
    throw InvalidArgument("faber_sequence needs the Laurent series of an exterior map");
  }
  const double b = series.b();
  const cplx b0 = series.b0();

  // coefficient vectors, F[n][j] = coefficient of z^j
  std::vector<std::vector<cplx>> F;
  F.reserve(n_max + 1);
  F.push_back({cplx{1.0, 0.0}});
  for (int n = 0; n < n_max; ++n) {
    std::vector<cplx> next(n + 2, cplx{});
    const auto& cur = F[n];
    for (int j = 0; j <= n; ++j) {
      next[j + 1] += cur[j];
      next[j] -= b0 * cur[j];
    }
    for (int k = 1; k <= n; ++k) {
      const cplx bk = series.coeff(k);
      if (bk == cplx{}) continue;
      const auto& prev = F[n - k];
      for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= bk * prev[j];
    }
    next[0] -= static_cast<double>(n) * series.coeff(n);
    for (auto& c : next) c /= b;
    F.push_back(std::move(next));
  }

  std::vector<Polynomial> out;
  out.reserve(F.size());
  for (auto& c : F) {
    if (!std::isfinite(std::abs(c.back())) || c.back() == cplx{}) {
      throw Error("Faber leading coefficient over/underflows; rescale the curve");
    }
    out.emplace_back(std::move(c));
  }
  return out;
}

FaberEvaluator::FaberEvaluator(const LaurentSeries& series) {
  if (series.kind() != SeriesKind::MapSeries) {
    throw InvalidArgument("FaberEvaluator needs the Laurent series of an exterior map");
  }
  b_ = series.b();
  b0_ = series.b0();
  dense_.assign(series.neg_coeffs().begin(), series.neg_coeffs().end());
  for (std::size_t k = 1; k <= dense_.size(); ++k) {
    if (dense_[k - 1] != cplx{}) sparse_.emplace_back(static_cast<int>(k), dense_[k - 1]);
  }
  max_degree_ = static_cast<int>(dense_.size()) + 1;
}

FaberEvaluator FaberEvaluator::for_map(const ExteriorMap& map, int n_max) {
  return FaberEvaluator(laurent_coeffs(map, std::max(n_max, 1)));
}

void FaberEvaluator::evaluate(cplx z, std::span<cplx> out) const {
  if (out.empty()) return;
  const int n_max = static_cast<int>(out.size()) - 1;
  if (n_max > max_degree_) {
    throw InvalidArgument(fmt::format("Faber degree {} needs Laurent coefficients up to b_{}; "
                                      "only {} available",
                                      n_max, n_max - 1, dense_.size()));
  }
  const double inv_b = 1.0 / b_;
  out[0] = 1.0;
  const cplx shift = z - b0_;
  for (int n = 0; n < n_max; ++n) {
    cplx s = shift * out[n];
    for (const auto& [k, bk] : sparse_) {
      if (k > n) break;
      s -= bk * out[n - k];
    }
    if (n >= 1) s -= static_cast<double>(n) * dense_[n - 1];
    out[n + 1] = s * inv_b;
  }
}

std::vector<cplx> FaberEvaluator::evaluate(cplx z, int n_max) const {
  std::vector<cplx> out(n_max + 1);
  evaluate(z, out);
  return out;
}

FaberTable faber_boundary_table(const ExteriorMap& map, const FaberEvaluator& faber,
                                std::span<const double> thetas, int n_max) {
  if (thetas.empty()) throw InvalidArgument("empty mesh");
  FaberTable table;
  table.thetas.assign(thetas.begin(), thetas.end());
  table.n_max = n_max;
  table.values.resize(thetas.size() * (n_max + 1));
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    faber.evaluate(map.boundary_point(thetas[i]),
                   std::span<cplx>(table.values.data() + i * (n_max + 1), n_max + 1));
  }
  return table;
}

std::vector<cplx> faber_boundary_values(const ExteriorMap& map, const Polynomial& Fn,
                                        const BoundaryMesh& mesh) {
  if (mesh.empty()) throw InvalidArgument("empty mesh");
  std::vector<cplx> out;
  out.reserve(mesh.size());
  for (double t : mesh.thetas) out.push_back(Fn(map.boundary_point(t)));
  return out;
}

std::vector<cplx> normalized_boundary_values(const ExteriorMap& map, const Polynomial& Fn,
                                             const BoundaryMesh& mesh) {
  auto values = faber_boundary_values(map, Fn, mesh);
  const int n = Fn.degree();
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] *= std::polar(1.0, -n * mesh.thetas[i]);
  }
  return values;
}

std::vector<cplx> normalized_boundary_values(const ExteriorMap& map, const FaberEvaluator& faber,
                                             int n, std::span<const double> thetas) {
  if (thetas.empty()) throw InvalidArgument("empty mesh");
  std::vector<cplx> buf(n + 1);
  std::vector<cplx> out;
  out.reserve(thetas.size());
  for (double t : thetas) {
    faber.evaluate(map.boundary_point(t), buf);
    out.push_back(buf[n] * std::polar(1.0, -n * t));
  }
  return out;
}

}  // namespace faberlab
