#include "faberlab/laurent.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "faberlab/error.hpp"

namespace faberlab {

namespace {

void check_order(std::size_t n) {
  if (n > LaurentSeries::kMaxOrder) {
    throw InvalidArgument(fmt::format("series order {} exceeds the 2^20 limit", n));
  }
}

// Below this magnitude trailing blocks count as exact zeros.
constexpr double kZeroFloor = 1e-14;

}  // namespace

LaurentSeries LaurentSeries::map_series(double b, cplx b0, std::vector<cplx> neg_coeffs) {
  if (!(b > 0.0)) throw InvalidArgument("map series needs a positive leading coefficient");
  check_order(neg_coeffs.size());
  LaurentSeries s;
  s.kind_ = SeriesKind::MapSeries;
  s.b_ = b;
  s.b0_ = b0;
  s.neg_ = std::move(neg_coeffs);
  return s;
}

LaurentSeries LaurentSeries::unit(std::vector<cplx> a) {
  check_order(a.size());
  LaurentSeries s;
  s.kind_ = SeriesKind::UnitSeries;
  s.b_ = 0.0;
  s.b0_ = 1.0;
  s.neg_ = std::move(a);
  return s;
}

cplx LaurentSeries::operator()(cplx w) const {
  const cplx u = 1.0 / w;
  cplx acc{};
  for (std::size_t k = neg_.size(); k > 0; --k) acc = (acc + neg_[k - 1]) * u;
  return b_ * w + b0_ + acc;
}

LaurentSeries LaurentSeries::truncated(std::size_t d) const {
  LaurentSeries s = *this;
  if (s.neg_.size() > d) s.neg_.resize(d);
  return s;
}

LogSeries& LogSeries::operator+=(const LogSeries& other) {
  if (coeffs.size() < other.coeffs.size()) coeffs.resize(other.coeffs.size());
  for (std::size_t j = 0; j < other.coeffs.size(); ++j) coeffs[j] += other.coeffs[j];
  return *this;
}

LogSeries& LogSeries::operator*=(cplx s) {
  for (auto& c : coeffs) c *= s;
  return *this;
}

LaurentSeries laurent_coeffs(const ExteriorMap& map, int N, double rho, double tail_tol) {
  if (N < 1) throw InvalidArgument("laurent_coeffs needs N >= 1");
  if (!(rho > 1.0 && rho <= 2.0)) {
    throw InvalidArgument(fmt::format("laurent_coeffs needs 1 < rho <= 2, got {}", rho));
  }
  check_order(static_cast<std::size_t>(N));
  constexpr double kAmplification = 1e6;
  const double radius = std::min(rho, 1.0 + std::log(kAmplification) / N);
  const int M = 8 * N;

  std::vector<cplx> samples(M);
  double scale = 0.0;
  for (int j = 0; j < M; ++j) {
    samples[j] = map.psi(std::polar(radius, kTwoPi * j / M));
    scale = std::max(scale, std::abs(samples[j]));
  }

  // c_k = (1/M) sum_j psi_j e^{2 pi i j k / M}, the coefficient of e^{-ik theta}
  auto dft = [&](int k) {
    cplx acc{};
    const cplx step = std::polar(1.0, kTwoPi * k / M);
    cplx rot{1.0, 0.0};
    for (int j = 0; j < M; ++j) {
      if ((j & 63) == 0) rot = std::polar(1.0, kTwoPi * static_cast<double>(k) * j / M);
      acc += samples[j] * rot;
      rot *= step;
    }
    return acc / static_cast<double>(M);
  };

  const double eps = std::numeric_limits<double>::epsilon();
  const cplx lead = dft(-1) / radius;
  cplx b0 = dft(0);
  if (std::abs(b0) < 64 * eps * scale) b0 = 0.0;

  std::vector<cplx> neg(N);
  double rk = 1.0;
  for (int k = 1; k <= N; ++k) {
    rk *= radius;
    cplx c = dft(k) * rk;
    if (std::abs(c) < 64 * eps * scale * rk) c = 0.0;
    neg[k - 1] = c;
  }
  // the capacity is real by normalization; report the measured value
  const double b = lead.real();
  if (!(b > 0.0)) throw Error("laurent_coeffs produced a non-positive leading coefficient");

  LaurentSeries s = LaurentSeries::map_series(b, b0, std::move(neg));
  double trailing = std::abs(s.coeff(N));
  if (N >= 2) trailing = std::max(trailing, std::abs(s.coeff(N - 1)));
  const double tail = trailing * rho / (rho - 1.0);
  s.set_tail_estimate(tail);
  if (tail > tail_tol) {
    throw ConvergenceError(fmt::format(
        "insufficient N = {}: tail estimate {:.3e} exceeds tolerance {:.3e}", N, tail, tail_tol));
  }
  return s;
}

LogSeries log_one_minus(cplx c, std::size_t N) {
  check_order(N);
  LogSeries l;
  l.coeffs.resize(N);
  cplx power = c;
  for (std::size_t j = 1; j <= N; ++j) {
    l.coeffs[j - 1] = -power / static_cast<double>(j);
    power *= c;
  }
  return l;
}

LogSeries unit_log(const LaurentSeries& s, std::size_t N) {
  if (s.kind() != SeriesKind::UnitSeries) throw InvalidArgument("unit_log needs a unit series");
  check_order(N);
  // S = 1 + A,  L' = S'/S  =>  j l_j = j a_j - sum_{i=1}^{j-1} i l_i a_{j-i}
  LogSeries l;
  l.coeffs.assign(N, cplx{});
  for (std::size_t j = 1; j <= N; ++j) {
    cplx acc = static_cast<double>(j) * s.coeff(j);
    for (std::size_t i = 1; i < j; ++i) {
      const cplx a = s.coeff(j - i);
      if (a != cplx{}) acc -= static_cast<double>(i) * l.coeffs[i - 1] * a;
    }
    l.coeffs[j - 1] = acc / static_cast<double>(j);
  }
  return l;
}

LaurentSeries unit_exp(const LogSeries& l, std::size_t N) {
  check_order(N);
  // S = exp(L),  S' = L' S  =>  j s_j = sum_{i=1}^{j} i l_i s_{j-i}
  std::vector<std::pair<std::size_t, cplx>> nz;  // (i, i l_i) for nonzero l_i
  for (std::size_t i = 1; i <= std::min(N, l.coeffs.size()); ++i) {
    if (l.coeffs[i - 1] != cplx{}) nz.emplace_back(i, static_cast<double>(i) * l.coeffs[i - 1]);
  }
  std::vector<cplx> s(N + 1, cplx{});
  s[0] = 1.0;
  for (std::size_t j = 1; j <= N; ++j) {
    cplx acc{};
    for (const auto& [i, il] : nz) {
      if (i > j) break;
      acc += il * s[j - i];
    }
    s[j] = acc / static_cast<double>(j);
  }
  s.erase(s.begin());
  return LaurentSeries::unit(std::move(s));
}

LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b, std::size_t N) {
  if (a.kind() != SeriesKind::UnitSeries || b.kind() != SeriesKind::UnitSeries) {
    throw InvalidArgument("series_mul multiplies unit series");
  }
  check_order(N);
  std::vector<cplx> out(N, cplx{});
  for (std::size_t j = 1; j <= N; ++j) {
    cplx acc = a.coeff(j) + b.coeff(j);
    for (std::size_t i = 1; i < j; ++i) acc += a.coeff(i) * b.coeff(j - i);
    out[j - 1] = acc;
  }
  return LaurentSeries::unit(std::move(out));
}

double sup_tail_bound(const LaurentSeries& s, std::size_t d) {
  const std::size_t N = s.order();
  if (d >= N) return 0.0;
  double stored = 0.0;
  for (std::size_t k = d + 1; k <= N; ++k) stored += std::abs(s.coeff(k));

  // geometric extrapolation past N from the ratio of the last two blocks
  const std::size_t block = std::max<std::size_t>(8, N / 16);
  if (N < 2 * block) return stored;
  double last = 0.0;
  double prev = 0.0;
  for (std::size_t k = N - block + 1; k <= N; ++k) last += std::abs(s.coeff(k));
  for (std::size_t k = N - 2 * block + 1; k <= N - block; ++k) prev += std::abs(s.coeff(k));
  if (last <= kZeroFloor) return stored;
  const double ratio = last / prev;
  if (!(ratio < 1.0)) {
    throw ConvergenceError(
        fmt::format("series coefficients do not decay (trailing block ratio {:.4g})", ratio));
  }
  return stored + last * ratio / (1.0 - ratio);
}

}  // namespace faberlab
