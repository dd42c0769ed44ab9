#include "faberlab/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "faberlab/error.hpp"
#include "faberlab/faber.hpp"
#include "faberlab/norms.hpp"
#include "faberlab/parallel.hpp"
#include "faberlab/weighted.hpp"

namespace faberlab {

namespace {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Faber values at the working points: A(i, k) = F_k(z_i), c(i) = F_n(z_i).
struct FaberSystem {
  CMatrix A;
  CVector c;
};

FaberSystem build_system(const ExteriorMap& map, const FaberEvaluator& faber, int n,
                         std::span<const double> thetas) {
  const auto M = static_cast<Eigen::Index>(thetas.size());
  FaberSystem sys{CMatrix(M, n), CVector(M)};
  std::vector<cplx> buf(n + 1);
  for (Eigen::Index i = 0; i < M; ++i) {
    faber.evaluate(map.boundary_point(thetas[i]), buf);
    for (int k = 0; k < n; ++k) sys.A(i, k) = buf[k];
    sys.c(i) = buf[n];
  }
  return sys;
}

// argmin_x sum_i w_i |c_i + (A x)_i|^2
CVector weighted_ls(const FaberSystem& sys, const RVector& w) {
  const RVector sw = w.cwiseSqrt();
  const CMatrix B = sw.asDiagonal() * sys.A;
  const CVector rhs = -(sw.asDiagonal() * sys.c);
  Eigen::ColPivHouseholderQR<CMatrix> qr(B);
  if (qr.rank() < B.cols()) {
    throw Error(fmt::format("degenerate least-squares system: rank {} < {}", qr.rank(), B.cols()));
  }
  return qr.solve(rhs);
}

double ls_level(const FaberSystem& sys, const RVector& w) {
  const CVector x = weighted_ls(sys, w);
  const CVector e = sys.c + sys.A * x;
  return std::sqrt((w.array() * e.array().abs2()).sum() / w.sum());
}

struct SolveState {
  CVector x;
  double emax = std::numeric_limits<double>::infinity();
  double level = 0.0;  // weighted mean of |e| under the final weights
  double lower = 0.0;  // weighted least-squares value, a lower bound on the minimax value
  int iterations = 0;
  int newton_steps = 0;
};

void lawson(const FaberSystem& sys, const ChebyshevOptions& opts, SolveState& st) {
  const auto M = sys.c.size();
  RVector w = RVector::Constant(M, 1.0 / static_cast<double>(M));
  double best = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const CVector x = weighted_ls(sys, w);
    const RVector ae = (sys.c + sys.A * x).cwiseAbs();
    const double emax = ae.maxCoeff();
    const double level = w.dot(ae);
    st.iterations = it;
    st.lower = std::max(st.lower, std::sqrt(w.dot(ae.cwiseAbs2())));
    if (emax < st.emax) {
      st.x = x;
      st.emax = emax;
      st.level = level;
    }
    if (emax == 0.0 || (emax - level) / emax < opts.tol) return;
    if (emax < best * (1.0 - 1e-9)) {
      best = emax;
      since_best = 0;
    } else if (++since_best >= opts.stall_window) {
      return;
    }
    w = w.cwiseProduct(ae.array().pow(opts.gamma).matrix());
    const double s = w.sum();
    if (!(s > 0.0) || !std::isfinite(s)) return;
    w /= s;
  }
}

// Log-barrier path following for min t s.t. |e_i(x)| <= t in real variables
// y = (Re x, Im x, t):  f_tau(y) = tau t - sum_i log(t^2 - |e_i|^2).
void barrier_polish(const FaberSystem& sys, const ChebyshevOptions& opts, SolveState& st) {
  const Eigen::Index M = sys.c.size();
  const Eigen::Index n = sys.A.cols();
  const Eigen::Index dim = 2 * n + 1;
  RMatrix JR(M, 2 * n), JI(M, 2 * n);
  JR << sys.A.real(), -sys.A.imag();
  JI << sys.A.imag(), sys.A.real();
  const RVector cr = sys.c.real();
  const RVector ci = sys.c.imag();

  RVector u(2 * n);
  u << st.x.real(), st.x.imag();
  double t = 1.001 * st.emax + 1e-300;

  auto residual = [&](const RVector& uu, RVector& p, RVector& q) {
    p = cr + JR * uu;
    q = ci + JI * uu;
  };
  auto objective = [&](const RVector& uu, double tt, double tau) {
    RVector p, q;
    residual(uu, p, q);
    const RVector s = tt * tt - (p.array().square() + q.array().square());
    if ((s.array() <= 0.0).any() || tt <= 0.0) return std::numeric_limits<double>::infinity();
    return tau * tt - s.array().log().sum();
  };

  const double m2 = 2.0 * static_cast<double>(M);
  double tau = m2 / (1e-2 * t);
  const double final_gap = 1e-10;
  RVector p, q;
  while (st.newton_steps < opts.max_newton) {
    for (int inner = 0; inner < 60 && st.newton_steps < opts.max_newton; ++inner) {
      residual(u, p, q);
      const RVector s = t * t - (p.array().square() + q.array().square());
      const RVector inv_s = s.cwiseInverse();
      const RMatrix G = p.asDiagonal() * JR + q.asDiagonal() * JI;

      RVector grad(dim);
      grad.head(2 * n) = 2.0 * (G.transpose() * inv_s);
      grad(2 * n) = tau - 2.0 * t * inv_s.sum();

      RMatrix H(dim, dim);
      const RVector inv_s2 = inv_s.cwiseAbs2();
      H.topLeftCorner(2 * n, 2 * n) =
          4.0 * G.transpose() * inv_s2.asDiagonal() * G +
          2.0 * (JR.transpose() * inv_s.asDiagonal() * JR + JI.transpose() * inv_s.asDiagonal() * JI);
      const RVector hut = -4.0 * t * (G.transpose() * inv_s2);
      H.block(0, 2 * n, 2 * n, 1) = hut;
      H.block(2 * n, 0, 1, 2 * n) = hut.transpose();
      H(2 * n, 2 * n) = (4.0 * t * t * inv_s2 - 2.0 * inv_s).sum();

      const RVector step = -H.ldlt().solve(grad);
      const double decrement = -grad.dot(step);
      ++st.newton_steps;
      if (!std::isfinite(decrement) || decrement < 0.0) break;
      if (decrement / 2.0 < 1e-9) break;

      const double f0 = objective(u, t, tau);
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        const RVector un = u + alpha * step.head(2 * n);
        const double tn = t + alpha * step(2 * n);
        if (objective(un, tn, tau) <= f0 - 0.25 * alpha * decrement) {
          u = un;
          t = tn;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    if (m2 / tau < final_gap * t) break;
    tau *= 10.0;
  }

  residual(u, p, q);
  const RVector ae = (p.array().square() + q.array().square()).sqrt();
  const double emax = ae.maxCoeff();
  // central-path dual weights are proportional to 1/s_i
  RVector w = (t * t - ae.array().square()).cwiseMax(1e-300).inverse();
  w /= w.sum();
  if (emax < st.emax) {
    st.x = u.head(n).cast<cplx>() + cplx(0.0, 1.0) * u.tail(n).cast<cplx>();
    st.emax = emax;
    st.level = w.dot(ae);
  }
  st.lower = std::max(st.lower, std::min(ls_level(sys, w), st.emax));
}

void solve(const FaberSystem& sys, const ChebyshevOptions& opts, SolveState& st, bool lawson_first) {
  if (lawson_first) lawson(sys, opts, st);
  const bool spread_ok = st.emax == 0.0 || (st.emax - st.level) / st.emax < opts.tol;
  if (opts.polish && !spread_ok && sys.A.cols() > 0) barrier_polish(sys, opts, st);
}

std::vector<double> exchange_points(std::span<const double> thetas, const FaberSystem& sys,
                                    const CVector& x) {
  const RVector ae = (sys.c + sys.A * x).cwiseAbs();
  const std::size_t M = thetas.size();
  std::vector<double> out(thetas.begin(), thetas.end());
  for (std::size_t i = 0; i < M; ++i) {
    const auto prev = static_cast<Eigen::Index>((i + M - 1) % M);
    const auto next = static_cast<Eigen::Index>((i + 1) % M);
    const auto ii = static_cast<Eigen::Index>(i);
    if (ae(ii) < ae(prev) || ae(ii) < ae(next)) continue;
    double lo = thetas[prev];
    double hi = thetas[next];
    if (i == 0) lo -= kTwoPi;
    if (i == M - 1) hi += kTwoPi;
    for (int k = 1; k < 8; ++k) {
      const double t = lo + (hi - lo) * k / 8.0;
      if (std::abs(t - thetas[i]) > 1e-14) out.push_back(wrap_angle(t));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-14; }),
            out.end());
  return out;
}

}  // namespace

double widom_factor(double norm, double cap, int n) {
  if (norm < 0.0 || !(cap > 0.0)) throw InvalidArgument("widom_factor needs norm >= 0, cap > 0");
  if (norm == 0.0) return 0.0;
  return std::exp(std::log(norm) - n * std::log(cap));
}

MinimaxResult chebyshev_monic(const ExteriorMap& map, int n, std::span<const double> thetas,
                              const ChebyshevOptions& opts) {
  if (n < 1) throw InvalidArgument(fmt::format("chebyshev_monic needs n >= 1, got {}", n));
  if (thetas.size() < 8 * static_cast<std::size_t>(n + 1)) {
    throw InvalidArgument(fmt::format("mesh has {} points; degree {} needs at least {}",
                                      thetas.size(), n, 8 * (n + 1)));
  }
  const auto faber = FaberEvaluator::for_map(map, n);
  std::vector<double> points(thetas.begin(), thetas.end());
  FaberSystem sys = build_system(map, faber, n, points);

  SolveState st;
  solve(sys, opts, st, true);

  MinimaxResult res;
  if (opts.exchange_pass) {
    points = exchange_points(points, sys, st.x);
    sys = build_system(map, faber, n, points);
    const RVector ae = (sys.c + sys.A * st.x).cwiseAbs();
    st.emax = ae.maxCoeff();
    st.level = ae.mean();
    st.lower = 0.0;
    if (opts.polish) {
      barrier_polish(sys, opts, st);
    } else {
      solve(sys, opts, st, true);
    }
    res.exchange_levels = 1;
  }

  const double cap = map.capacity();
  res.faber_coeffs.assign(st.x.data(), st.x.data() + st.x.size());
  res.iterations = st.iterations;
  res.newton_steps = st.newton_steps;
  res.widom = st.emax;
  res.lower_bound = std::min(st.lower, st.emax);
  res.norm = st.emax * std::exp(n * std::log(cap));
  res.residual_equioscillation = st.emax > 0.0 ? (st.emax - st.level) / st.emax : 0.0;
  // few extremal points leave the barrier weights smeared over near-extremal
  // ones, so the spread can stall while the dual bound has already closed
  res.duality_gap = st.emax > 0.0 ? (st.emax - res.lower_bound) / st.emax : 0.0;
  res.converged = res.residual_equioscillation < opts.tol || res.duality_gap < opts.tol;
  res.working_points = points.size();

  // monomial form: cap^n (F_n + sum x_k F_k), leading coefficient exactly 1
  const auto fabers = faber_sequence(laurent_coeffs(map, std::max(n, 1)), n);
  const double scale = std::exp(n * std::log(cap));
  Polynomial T = fabers[n];
  for (int k = 0; k < n; ++k) T.axpy(res.faber_coeffs[k], fabers[k]);
  std::vector<cplx> c(T.coeffs().begin(), T.coeffs().end());
  for (auto& v : c) v *= scale;
  c.back() = 1.0;
  res.T = Polynomial(std::move(c));
  return res;
}

MinimaxResult chebyshev_monic(const ExteriorMap& map, int n, const BoundaryMesh& mesh,
                              const ChebyshevOptions& opts) {
  auto res = chebyshev_monic(map, n, std::span<const double>(mesh.thetas), opts);
  res.refine_levels = mesh.corner_refine_levels;
  return res;
}

ResultTable widom_table(const ExteriorMap& map, std::span<const int> n_list, std::optional<int> m,
                        const WidomTableOptions& opts) {
  if (n_list.empty()) throw InvalidArgument("n_list must be nonempty");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw InvalidArgument("n_list must be strictly ascending");
  }
  std::optional<WeightPlan> plan;
  if (m && map.has_corners()) plan = make_weight_plan(map, *m);

  const int n_max = n_list.back();
  const auto faber = FaberEvaluator::for_map(map, n_max);

  ResultTable table({"n", "faber_norm", "weighted_norm", "cheb_norm", "widom", "sandwich_ok",
                     "converged", "iterations", "status"});
  std::vector<std::vector<Cell>> rows(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t idx) {
    const int n = n_list[idx];
    std::vector<Cell> row{static_cast<std::int64_t>(n)};
    try {
      const auto mesh =
          boundary_mesh(map, std::max(opts.base_count, 16 * (n + 1)), opts.corner_refine_levels);
      std::vector<cplx> buf(n + 1);
      const auto fn = [&](double t) {
        faber.evaluate(map.boundary_point(t), buf);
        return buf[n];
      };
      const double fnorm = sup_norm_on_curve(map, BoundaryFunction(fn), mesh, opts.norm_tol).value;
      std::optional<double> qnorm;
      if (plan && n > plan->d_m) {
        const auto qn = [&](double t) {
          faber.evaluate(map.boundary_point(t), buf);
          return weighted_faber_value(buf, *plan, n);
        };
        qnorm = sup_norm_on_curve(map, BoundaryFunction(qn), mesh, opts.norm_tol).value;
      }
      const auto res = chebyshev_monic(map, n, mesh, opts.solver);
      double upper = fnorm;
      if (qnorm) upper = std::min(upper, *qnorm);
      const bool ok = res.widom >= 1.0 - 1e-6 && res.widom <= upper + 1e-6;
      row.push_back(fnorm);
      row.push_back(qnorm ? Cell{*qnorm} : Cell{});
      row.push_back(res.norm);
      row.push_back(res.widom);
      row.push_back(ok);
      row.push_back(res.converged);
      row.push_back(static_cast<std::int64_t>(res.iterations));
      row.push_back(std::string(plan && !qnorm ? "n<=d_m" : "ok"));
    } catch (const Error& e) {
      row.resize(9);
      row[8] = std::string("error: ") + e.what();
    }
    rows[idx] = std::move(row);
  });
  for (auto& r : rows) table.add_row(std::move(r));
  if (plan) {
    table.metadata["weight_plan"] = {{"m", plan->m},          {"r_m", plan->r_m},
                                     {"delta_m", plan->delta_m}, {"d_m", plan->d_m},
                                     {"sup_P_on_circle", plan->sup_P_on_circle}};
  }
  table.metadata["mesh"] = {{"base_count_min", opts.base_count},
                            {"corner_refine_levels", opts.corner_refine_levels}};
  return table;
}

}  // namespace faberlab
