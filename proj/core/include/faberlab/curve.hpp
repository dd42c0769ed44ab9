#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace faberlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class CurveKind { Circle, Ellipse, Deltoid, Lune, LaurentPoly };

std::string_view to_string(CurveKind kind);

/// A corner z_k = psi(e^{i theta_k}) with exterior angle lambda_k * pi.
struct CornerInfo {
  double theta = 0.0;
  cplx z;
  double lambda = 1.0;
  double Lambda = 1.0;  // max(lambda, 2 - lambda)
};

/// Declared corner of a user Laurent map; z and Lambda are derived.
struct CornerSpec {
  double theta = 0.0;
  double lambda = 1.0;
};

/// Jordan curve given by its exterior conformal map psi : {|w| > 1} -> Omega,
///
///   psi(w) = b w + b0 + sum_k b_k w^{-k},   b = cap(Gamma) > 0.
///
/// Built-in kinds evaluate psi in closed form; LaurentPoly evaluates the
/// finite series. Corner metadata is declared, never detected.
class ExteriorMap {
 public:
  static ExteriorMap circle(double radius);
  static ExteriorMap ellipse(double c);
  static ExteriorMap deltoid();
  static ExteriorMap lune();
  static ExteriorMap laurent(double b, cplx b0, std::vector<cplx> coeffs,
                             std::vector<CornerSpec> corners = {});

  CurveKind kind() const { return kind_; }
  double capacity() const { return capacity_; }
  std::span<const CornerInfo> corners() const { return corners_; }
  bool has_corners() const { return !corners_.empty(); }

  /// Parameter of the built-in kind (radius for Circle, c for Ellipse).
  double parameter() const { return param_; }
  cplx laurent_b0() const { return b0_; }
  std::span<const cplx> laurent_coeffs() const { return coeffs_; }

  /// psi(w) for |w| >= 1; the boundary extension on |w| = 1.
  cplx psi(cplx w) const;
  /// psi'(w); throws CornerPointError at a corner preimage.
  cplx psi_prime(cplx w) const;

  cplx boundary_point(double theta) const;
  /// d/dt psi(e^{it}) = i e^{it} psi'(e^{it}).
  cplx boundary_tangent(double theta) const;

  /// Exterior angle factor lambda(theta): lambda_k at a corner, 1 elsewhere.
  double lambda_at(double theta, double tol = 1e-12) const;
  /// Index of the corner whose preimage is within tol of theta, or -1.
  int corner_index(double theta, double tol = 1e-10) const;
  double max_Lambda() const;

 private:
  ExteriorMap() = default;
  void set_corners(std::vector<CornerSpec> specs);

  CurveKind kind_ = CurveKind::Circle;
  double capacity_ = 1.0;
  double param_ = 0.0;
  cplx b0_;
  std::vector<cplx> coeffs_;
  std::vector<CornerInfo> corners_;
};

/// Constructs a built-in curve. params: Circle {r}, Ellipse {c}, none else.
ExteriorMap make_builtin_curve(CurveKind kind, std::span<const double> params = {});

inline double capacity(const ExteriorMap& map) { return map.capacity(); }

inline cplx psi_eval(const ExteriorMap& map, cplx w) { return map.psi(w); }
inline cplx psi_prime(const ExteriorMap& map, cplx w) { return map.psi_prime(w); }

/// Sorted parameter samples on [0, 2pi) with geometric clustering at corners.
struct BoundaryMesh {
  std::vector<double> thetas;
  int corner_refine_levels = 0;
  int base_count = 0;

  std::size_t size() const { return thetas.size(); }
  bool empty() const { return thetas.empty(); }
};

/// Uniform half-step-shifted base grid of base_count points plus, for every
/// corner theta_k, the samples theta_k +- delta0 * 2^{-(j+1)}, j = 0..levels,
/// with delta0 half of the smallest corner gap.
BoundaryMesh boundary_mesh(const ExteriorMap& map, int base_count, int corner_refine_levels);

/// Half of the smallest gap between cyclically adjacent corner angles
/// (pi for corner-free curves, and for a single corner).
double corner_half_gap(std::span<const double> corner_thetas);

/// Brute-force check that psi restricted to |w| = radius is a simple closed
/// polygon on `samples` equispaced points.
bool is_simple_on_circle(const ExteriorMap& map, double radius, int samples);

/// Exterior angle factor measured from the one-sided secant directions
/// psi(e^{i(theta +- eps)}) - psi(e^{i theta}): 2 minus the counterclockwise
/// angle from the forward to the backward direction, over pi.
double measured_lambda(const ExteriorMap& map, double theta, double eps = 1e-7);

/// Arc length of t -> psi(e^{it}) from thetas[0] to each thetas[j]
/// (thetas increasing), by adaptive Gauss-Kronrod on |psi'|.
std::vector<double> cumulative_arc_length(const ExteriorMap& map, std::span<const double> thetas);

/// Wraps an angle into [0, 2pi).
double wrap_angle(double theta);

}  // namespace faberlab
