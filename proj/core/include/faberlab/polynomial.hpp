#pragma once

#include <complex>
#include <span>
#include <vector>

namespace faberlab {

using cplx = std::complex<double>;

/// Polynomial c_0 + c_1 z + ... + c_n z^n with complex coefficients.
class Polynomial {
 public:
  Polynomial() : c_{cplx{1.0, 0.0}} {}
  explicit Polynomial(std::vector<cplx> coeffs);

  static Polynomial monomial(int degree, cplx coeff = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::span<const cplx> coeffs() const { return c_; }
  cplx coeff(int k) const { return k >= 0 && k <= degree() ? c_[k] : cplx{}; }
  cplx leading() const { return c_.back(); }

  /// Horner evaluation.
  cplx operator()(cplx z) const;

  Polynomial& operator+=(const Polynomial& other);
  /// this += s * other
  Polynomial& axpy(cplx s, const Polynomial& other);

 private:
  std::vector<cplx> c_;
};

}  // namespace faberlab
