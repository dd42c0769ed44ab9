#include "faberlab/polynomial.hpp"

#include "faberlab/error.hpp"

namespace faberlab {

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw InvalidArgument("a polynomial needs at least one coefficient");
  if (c_.size() > 1 && c_.back() == cplx{}) {
    throw InvalidArgument("leading coefficient must be nonzero");
  }
}

Polynomial Polynomial::monomial(int degree, cplx coeff) {
  if (degree < 0) throw InvalidArgument("negative degree");
  std::vector<cplx> c(degree + 1, cplx{});
  c[degree] = coeff;
  return Polynomial(std::move(c));
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc{};
  for (std::size_t k = c_.size(); k > 0; --k) acc = acc * z + c_[k - 1];
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) { return axpy(1.0, other); }

Polynomial& Polynomial::axpy(cplx s, const Polynomial& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), cplx{});
  for (std::size_t k = 0; k < other.c_.size(); ++k) c_[k] += s * other.c_[k];
  while (c_.size() > 1 && c_.back() == cplx{}) c_.pop_back();
  return *this;
}

}  // namespace faberlab
