#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hofbethe/weyl.hpp"

namespace hofbethe {

/// Univariate complex polynomial, coefficients in ascending degree. Trailing
/// exact zeros are trimmed; the zero polynomial has no coefficients and
/// degree -1.
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  explicit ComplexPolynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }
  ComplexPolynomial(std::initializer_list<cplx> coeffs) : c_(coeffs) { trim(); }

  static ComplexPolynomial constant(cplx v) { return ComplexPolynomial({v}); }
  static ComplexPolynomial monomial(int degree, cplx v = 1.0) {
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1, 0.0);
    c.back() = v;
    return ComplexPolynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<cplx>& coeffs() const { return c_; }

  /// Coefficient of x^k (zero outside the stored range).
  cplx operator[](int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : cplx{};
  }

  cplx operator()(cplx x) const {
    cplx acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// p(s x).
  ComplexPolynomial scaled_argument(cplx s) const {
    std::vector<cplx> c = c_;
    cplx pw = 1.0;
    for (auto& v : c) {
      v *= pw;
      pw *= s;
    }
    return ComplexPolynomial(std::move(c));
  }

  double max_coeff_abs() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  bool is_even(double tol = 0.0) const {
    for (std::size_t k = 1; k < c_.size(); k += 2)
      if (std::abs(c_[k]) > tol) return false;
    return true;
  }

  /// Roots from the eigenvalues of the companion matrix of the monic
  /// normalization.
  std::vector<cplx> roots() const {
    const int d = degree();
    if (d < 1) return {};
    Matrix companion = Matrix::Zero(d, d);
    const cplx lead = c_.back();
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -c_[static_cast<std::size_t>(i)] / lead;
    Eigen::ComplexEigenSolver<Matrix> es(companion, false);
    std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + d);
    return r;
  }

  friend ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return ComplexPolynomial(std::move(c));
  }
  friend ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    return a + (-1.0) * b;
  }
  friend ComplexPolynomial operator*(cplx s, const ComplexPolynomial& a) {
    std::vector<cplx> c = a.c_;
    for (auto& v : c) v *= s;
    return ComplexPolynomial(std::move(c));
  }
  friend ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return ComplexPolynomial(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
  }
  std::vector<cplx> c_;
};

/// prod_j (1 + s * c_j x).
inline ComplexPolynomial linear_product(std::span<const cplx> c, cplx s) {
  ComplexPolynomial p = ComplexPolynomial::constant(1.0);
  for (const cplx cj : c) p = p * ComplexPolynomial({1.0, s * cj});
  return p;
}

}  // namespace hofbethe
