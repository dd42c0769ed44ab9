#include "faberlab/curve.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "faberlab/error.hpp"
#include "quadrature.hpp"

namespace faberlab {

namespace {

constexpr double kDomainSlack = 1e-12;

cplx lune_sqrt_factor(cplx w) { return std::sqrt(1.0 - 1.0 / (w * w)); }

// Roots of b w^{N+1} - sum_k k b_k w^{N-k}, i.e. zeros of psi' times w^{N+1}.
std::vector<cplx> psi_prime_zeros(double b, std::span<const cplx> coeffs) {
  // trailing zero coefficients do not contribute roots away from the origin
  std::size_t n = coeffs.size();
  while (n > 0 && coeffs[n - 1] == cplx{}) --n;
  if (n == 0) return {};
  const int deg = static_cast<int>(n) + 1;
  // monic polynomial w^deg + p_{deg-1} w^{deg-1} + ... + p_0
  std::vector<cplx> p(deg, cplx{});
  for (std::size_t k = 1; k <= n; ++k) {
    // term -k b_k w^{n-k}
    p[n - k] = -static_cast<double>(k) * coeffs[k - 1] / b;
  }
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -p[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cplx> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()[i];
  return roots;
}

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 &&
         d3 != 0 && d4 != 0;
}

}  // namespace

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::Circle: return "circle";
    case CurveKind::Ellipse: return "ellipse";
    case CurveKind::Deltoid: return "deltoid";
    case CurveKind::Lune: return "lune";
    case CurveKind::LaurentPoly: return "laurent";
  }
  return "unknown";
}

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

ExteriorMap ExteriorMap::circle(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument(fmt::format("circle radius must be positive, got {}", radius));
  }
  ExteriorMap map;
  map.kind_ = CurveKind::Circle;
  map.capacity_ = radius;
  map.param_ = radius;
  return map;
}

ExteriorMap ExteriorMap::ellipse(double c) {
  if (!(c > 0.0 && c < 1.0)) {
    throw InvalidArgument(fmt::format("ellipse parameter c must lie in (0, 1), got {}", c));
  }
  ExteriorMap map;
  map.kind_ = CurveKind::Ellipse;
  map.capacity_ = 1.0;
  map.param_ = c;
  return map;
}

ExteriorMap ExteriorMap::deltoid() {
  ExteriorMap map;
  map.kind_ = CurveKind::Deltoid;
  map.capacity_ = 1.0;
  map.set_corners({{0.0, 2.0}, {kTwoPi / 3.0, 2.0}, {2.0 * kTwoPi / 3.0, 2.0}});
  return map;
}

ExteriorMap ExteriorMap::lune() {
  ExteriorMap map;
  map.kind_ = CurveKind::Lune;
  map.capacity_ = 1.0;
  map.set_corners({{0.0, 0.5}, {kPi, 0.5}});
  return map;
}

ExteriorMap ExteriorMap::laurent(double b, cplx b0, std::vector<cplx> coeffs,
                                 std::vector<CornerSpec> corners) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw InvalidArgument(fmt::format("leading Laurent coefficient must be positive, got {}", b));
  }
  for (const auto& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidArgument("Laurent coefficients must be finite");
    }
  }
  for (const cplx& root : psi_prime_zeros(b, coeffs)) {
    if (std::abs(root) > 1.0 + 1e-9) {
      throw InvalidArgument(fmt::format(
          "psi' vanishes at |w| = {:.6g} > 1; the map is not univalent on |w| > 1",
          std::abs(root)));
    }
  }
  ExteriorMap map;
  map.kind_ = CurveKind::LaurentPoly;
  map.capacity_ = b;
  map.param_ = b;
  map.b0_ = b0;
  map.coeffs_ = std::move(coeffs);
  map.set_corners(std::move(corners));
  if (!is_simple_on_circle(map, 1.0 + 1e-3, 4096)) {
    throw InvalidArgument("Laurent map self-intersects near the unit circle");
  }
  return map;
}

void ExteriorMap::set_corners(std::vector<CornerSpec> specs) {
  for (auto& s : specs) {
    if (!std::isfinite(s.theta) || !(s.lambda >= 0.0 && s.lambda <= 2.0)) {
      throw InvalidArgument(
          fmt::format("corner (theta={}, lambda={}) needs lambda in [0, 2]", s.theta, s.lambda));
    }
    s.theta = wrap_angle(s.theta);
  }
  std::sort(specs.begin(), specs.end(),
            [](const CornerSpec& a, const CornerSpec& b) { return a.theta < b.theta; });
  for (std::size_t i = 1; i < specs.size(); ++i) {
    if (!(specs[i].theta > specs[i - 1].theta)) {
      throw InvalidArgument("corner preimage angles must be distinct");
    }
  }
  corners_.clear();
  for (const auto& s : specs) {
    CornerInfo info;
    info.theta = s.theta;
    info.lambda = s.lambda;
    info.Lambda = std::max(s.lambda, 2.0 - s.lambda);
    info.z = psi(std::polar(1.0, s.theta));
    corners_.push_back(info);
  }
}

cplx ExteriorMap::psi(cplx w) const {
  if (std::abs(w) < 1.0 - kDomainSlack) {
    throw DomainError(fmt::format("psi is defined for |w| >= 1, got |w| = {}", std::abs(w)));
  }
  switch (kind_) {
    case CurveKind::Circle: return param_ * w;
    case CurveKind::Ellipse: return w + param_ / w;
    case CurveKind::Deltoid: return w + 0.5 / (w * w);
    case CurveKind::Lune: return 0.5 * w * (1.0 + lune_sqrt_factor(w));
    case CurveKind::LaurentPoly: {
      const cplx u = 1.0 / w;
      cplx acc{};
      for (std::size_t k = coeffs_.size(); k > 0; --k) acc = (acc + coeffs_[k - 1]) * u;
      return capacity_ * w + b0_ + acc;
    }
  }
  return {};
}

cplx ExteriorMap::psi_prime(cplx w) const {
  if (std::abs(w) < 1.0 - kDomainSlack) {
    throw DomainError(fmt::format("psi' is defined for |w| >= 1, got |w| = {}", std::abs(w)));
  }
  if (std::abs(std::abs(w) - 1.0) < 1e-12 && corner_index(std::arg(w)) >= 0) {
    throw CornerPointError(
        fmt::format("psi' requested at corner point theta = {}", wrap_angle(std::arg(w))));
  }
  switch (kind_) {
    case CurveKind::Circle: return param_;
    case CurveKind::Ellipse: return 1.0 - param_ / (w * w);
    case CurveKind::Deltoid: return 1.0 - 1.0 / (w * w * w);
    case CurveKind::Lune: {
      const cplx s = lune_sqrt_factor(w);
      return 0.5 * (1.0 + s + 1.0 / (w * w * s));
    }
    case CurveKind::LaurentPoly: {
      const cplx u = 1.0 / w;
      cplx acc{};
      for (std::size_t k = coeffs_.size(); k > 0; --k) {
        acc = (acc - static_cast<double>(k) * coeffs_[k - 1] * u) * u;
      }
      // acc = -sum k b_k u^{k+1} after the final multiplication
      return capacity_ + acc;
    }
  }
  return {};
}

cplx ExteriorMap::boundary_point(double theta) const { return psi(std::polar(1.0, theta)); }

cplx ExteriorMap::boundary_tangent(double theta) const {
  const cplx w = std::polar(1.0, theta);
  return cplx(0.0, 1.0) * w * psi_prime(w);
}

int ExteriorMap::corner_index(double theta, double tol) const {
  const double t = wrap_angle(theta);
  for (std::size_t k = 0; k < corners_.size(); ++k) {
    double d = std::abs(t - corners_[k].theta);
    d = std::min(d, kTwoPi - d);
    if (d <= tol) return static_cast<int>(k);
  }
  return -1;
}

double ExteriorMap::lambda_at(double theta, double tol) const {
  const int k = corner_index(theta, tol);
  return k >= 0 ? corners_[k].lambda : 1.0;
}

double ExteriorMap::max_Lambda() const {
  double best = 1.0;
  for (const auto& c : corners_) best = std::max(best, c.Lambda);
  return best;
}

ExteriorMap make_builtin_curve(CurveKind kind, std::span<const double> params) {
  auto expect = [&](std::size_t count) {
    if (params.size() != count) {
      throw InvalidArgument(fmt::format("{} expects {} parameter(s), got {}", to_string(kind),
                                        count, params.size()));
    }
  };
  switch (kind) {
    case CurveKind::Circle: expect(1); return ExteriorMap::circle(params[0]);
    case CurveKind::Ellipse: expect(1); return ExteriorMap::ellipse(params[0]);
    case CurveKind::Deltoid: expect(0); return ExteriorMap::deltoid();
    case CurveKind::Lune: expect(0); return ExteriorMap::lune();
    case CurveKind::LaurentPoly:
      throw InvalidArgument("Laurent maps are built with ExteriorMap::laurent");
  }
  throw InvalidArgument("unknown curve kind");
}

double corner_half_gap(std::span<const double> corner_thetas) {
  if (corner_thetas.size() < 2) return kPi;
  std::vector<double> t(corner_thetas.begin(), corner_thetas.end());
  std::sort(t.begin(), t.end());
  double gap = kTwoPi - (t.back() - t.front());
  for (std::size_t i = 1; i < t.size(); ++i) gap = std::min(gap, t[i] - t[i - 1]);
  return 0.5 * gap;
}

BoundaryMesh boundary_mesh(const ExteriorMap& map, int base_count, int corner_refine_levels) {
  if (base_count < 64) {
    throw InvalidArgument(fmt::format("base_count must be at least 64, got {}", base_count));
  }
  if (corner_refine_levels < 0) throw InvalidArgument("corner_refine_levels must be >= 0");

  BoundaryMesh mesh;
  mesh.base_count = base_count;
  mesh.corner_refine_levels = corner_refine_levels;
  mesh.thetas.reserve(base_count + 2 * (corner_refine_levels + 1) * map.corners().size());
  for (int i = 0; i < base_count; ++i) {
    mesh.thetas.push_back(kTwoPi * (i + 0.5) / base_count);
  }
  if (map.has_corners()) {
    std::vector<double> thetas;
    for (const auto& c : map.corners()) thetas.push_back(c.theta);
    const double delta0 = corner_half_gap(thetas);
    for (double tk : thetas) {
      double offset = 0.5 * delta0;
      for (int j = 0; j <= corner_refine_levels; ++j, offset *= 0.5) {
        mesh.thetas.push_back(wrap_angle(tk + offset));
        mesh.thetas.push_back(wrap_angle(tk - offset));
      }
    }
  }
  std::sort(mesh.thetas.begin(), mesh.thetas.end());
  mesh.thetas.erase(std::unique(mesh.thetas.begin(), mesh.thetas.end(),
                                [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                    mesh.thetas.end());
  return mesh;
}

bool is_simple_on_circle(const ExteriorMap& map, double radius, int samples) {
  std::vector<cplx> pts(samples);
  for (int i = 0; i < samples; ++i) pts[i] = map.psi(std::polar(radius, kTwoPi * i / samples));
  for (int i = 0; i < samples; ++i) {
    const cplx p1 = pts[i];
    const cplx p2 = pts[(i + 1) % samples];
    const double xmin = std::min(p1.real(), p2.real());
    const double xmax = std::max(p1.real(), p2.real());
    const double ymin = std::min(p1.imag(), p2.imag());
    const double ymax = std::max(p1.imag(), p2.imag());
    for (int j = i + 2; j < samples; ++j) {
      if (i == 0 && j == samples - 1) continue;  // adjacent through the seam
      const cplx q1 = pts[j];
      const cplx q2 = pts[(j + 1) % samples];
      if (std::max(q1.real(), q2.real()) < xmin || std::min(q1.real(), q2.real()) > xmax ||
          std::max(q1.imag(), q2.imag()) < ymin || std::min(q1.imag(), q2.imag()) > ymax) {
        continue;
      }
      if (segments_intersect(p1, p2, q1, q2)) return false;
    }
  }
  return true;
}

double measured_lambda(const ExteriorMap& map, double theta, double eps) {
  const cplx z = map.boundary_point(theta);
  const cplx fwd = map.boundary_point(theta + eps) - z;
  const cplx bwd = map.boundary_point(theta - eps) - z;
  double interior = std::arg(bwd / fwd);
  if (interior < 0.0) interior += kTwoPi;
  return 2.0 - interior / kPi;
}

std::vector<double> cumulative_arc_length(const ExteriorMap& map, std::span<const double> thetas) {
  std::vector<double> out(thetas.size(), 0.0);
  // |psi'| vanishes or blows up at corners; the integrand is evaluated just
  // off the corner preimage
  auto speed = [&](double t) {
    if (map.corner_index(t, 1e-13) >= 0) return 0.0;
    return std::abs(map.boundary_tangent(t));
  };
  for (std::size_t j = 1; j < thetas.size(); ++j) {
    if (!(thetas[j] >= thetas[j - 1])) throw InvalidArgument("thetas must be increasing");
    double err = 0.0;
    out[j] = out[j - 1] + detail::gk_adaptive(speed, thetas[j - 1], thetas[j], 20, 1e-13, &err);
  }
  return out;
}

}  // namespace faberlab
