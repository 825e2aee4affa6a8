#pragma once

// Roots-of-unity arithmetic, Weyl-pair matrices, tensor products, q-shifted
// factorials and the global shift operator D.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "hofbethe/errors.hpp"

namespace hofbethe {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Reduce k into [0, n).
inline long mod(long k, long n) {
  long r = k % n;
  return r < 0 ? r + n : r;
}

/// Odd N, primitive root omega = exp(2 pi i P / N), q = omega^(M+1) and the
/// in-lattice half power q_half = q^(M+1). Every power is evaluated by
/// reducing its exponent mod N first, so all scalars are exact lattice points
/// up to one rounding.
class Context {
 public:
  Context(int N, int P) : N_(N), P_(P), M_((N - 1) / 2) {
    if (N < 3 || N % 2 == 0)
      throw invalid_context("N must be odd and >= 3, got " + std::to_string(N));
    if (std::gcd(P, N) != 1)
      throw invalid_context("gcd(P, N) must be 1, got P=" + std::to_string(P) +
                            ", N=" + std::to_string(N));
  }

  int N() const noexcept { return N_; }
  int P() const noexcept { return P_; }
  int M() const noexcept { return M_; }

  /// omega^k.
  cplx omega_pow(long k) const {
    const long e = mod(static_cast<long>(P_) * mod(k, N_), N_);
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / N_);
  }
  /// q^k = omega^(k (M+1)).
  cplx q_pow(long k) const { return omega_pow(mod(k, N_) * (M_ + 1)); }
  /// q^(k/2) = q_half^k = q^(k (M+1)).
  cplx q_half_pow(long k) const { return q_pow(mod(k, N_) * (M_ + 1)); }

  cplx omega() const { return omega_pow(1); }
  cplx q() const { return q_pow(1); }
  cplx q_half() const { return q_half_pow(1); }

  /// Non-negative representative of k in Z_N.
  int reduce(long k) const { return static_cast<int>(mod(k, N_)); }

  bool operator==(const Context&) const = default;

 private:
  int N_;
  int P_;
  int M_;
};

inline Context make_context(int N, int P) { return Context(N, P); }

/// Dense operator on the N^L dimensional quantum space.
struct Operator {
  int N = 0;
  int L = 0;
  Matrix m;

  Operator() = default;
  Operator(int n, int l, Matrix mat) : N(n), L(l), m(std::move(mat)) {
    if (m.rows() != m.cols() || m.rows() != ipow(N, L))
      throw tag_mismatch("operator dimension does not match N^L");
  }

  Eigen::Index dim() const { return m.rows(); }

  static Eigen::Index ipow(int base, int exp) {
    Eigen::Index r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
  }

  static Operator identity(int n, int l) {
    const auto d = ipow(n, l);
    return {n, l, Matrix::Identity(d, d)};
  }
  static Operator zero(int n, int l) {
    const auto d = ipow(n, l);
    return {n, l, Matrix::Zero(d, d)};
  }
};

namespace detail {
inline void require_same(const Operator& a, const Operator& b) {
  if (a.N != b.N || a.L != b.L) throw tag_mismatch("operator tags differ");
}
}  // namespace detail

inline Operator operator+(const Operator& a, const Operator& b) {
  detail::require_same(a, b);
  return {a.N, a.L, a.m + b.m};
}
inline Operator operator-(const Operator& a, const Operator& b) {
  detail::require_same(a, b);
  return {a.N, a.L, a.m - b.m};
}
inline Operator operator*(const Operator& a, const Operator& b) {
  detail::require_same(a, b);
  return {a.N, a.L, a.m * b.m};
}
inline Operator operator*(cplx s, const Operator& a) { return {a.N, a.L, s * a.m}; }
inline Vector operator*(const Operator& a, const Vector& v) { return a.m * v; }

/// a^k for k >= 0.
inline Operator power(const Operator& a, int k) {
  if (k < 0) throw domain_error("power: negative exponent");
  Operator result = Operator::identity(a.N, a.L);
  Operator base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}
inline double max_abs(const Operator& a) { return max_abs(a.m); }

/// max|a - b| / max(max|a|, max|b|); 0 when both vanish.
inline double relative_diff(const Vector& a, const Vector& b) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  const double diff = (a - b).cwiseAbs().maxCoeff();
  return scale == 0.0 ? diff : diff / scale;
}

struct WeylMatrices {
  Operator X;
  Operator Z;
  Operator Y;
};

/// Z|k> = omega^k |k>, X|k> = |k+1>, Y = ZX.
inline WeylMatrices weyl_matrices(const Context& ctx) {
  const int N = ctx.N();
  Matrix X = Matrix::Zero(N, N);
  Matrix Z = Matrix::Zero(N, N);
  for (int k = 0; k < N; ++k) {
    X((k + 1) % N, k) = 1.0;
    Z(k, k) = ctx.omega_pow(k);
  }
  Matrix Y = Z * X;
  return {{N, 1, X}, {N, 1, Z}, {N, 1, Y}};
}

/// Tensor product in the given order.
inline Operator kron(std::span<const Operator> ops) {
  if (ops.empty()) throw arity_error("kron: empty operand list");
  Operator acc = ops.front();
  for (std::size_t i = 1; i < ops.size(); ++i) {
    if (ops[i].N != acc.N) throw tag_mismatch("kron: operands have different N");
    acc = Operator(acc.N, acc.L + ops[i].L,
                   Matrix(Eigen::kroneckerProduct(acc.m, ops[i].m)));
  }
  return acc;
}
inline Operator kron(std::initializer_list<Operator> ops) {
  return kron(std::span<const Operator>(ops.begin(), ops.size()));
}

inline Vector kron_vectors(std::span<const Vector> vs) {
  Vector acc = vs.front();
  for (std::size_t i = 1; i < vs.size(); ++i)
    acc = Vector(Eigen::kroneckerProduct(acc, vs[i]));
  return acc;
}

/// (a; rho)_n = (1 - a)(1 - a rho) ... (1 - a rho^(n-1)); (a; rho)_0 = 1.
inline cplx pochhammer(cplx a, cplx rho, int n) {
  if (n < 0) throw domain_error("pochhammer: negative order");
  cplx result = 1.0;
  cplx term = a;
  for (int i = 0; i < n; ++i) {
    result *= 1.0 - term;
    term *= rho;
  }
  return result;
}

/// D = q^(-L) (Y tensor ... tensor Y); unitary with D^N = I.
inline Operator global_shift_D(const Context& ctx, int L) {
  if (L < 1) throw domain_error("global_shift_D: L must be >= 1");
  const auto w = weyl_matrices(ctx);
  std::vector<Operator> ys(static_cast<std::size_t>(L), w.Y);
  return ctx.q_pow(-L) * kron(ys);
}

/// Orthonormal basis (as columns) of the q^l eigenspace of D, dimension
/// N^(L-1).
///
/// D is monomial: it maps |k_0..k_{L-1}> to a phase times |k_0+1..k_{L-1}+1>,
/// so its orbits on the standard basis have length N and are labelled by the
/// differences k_j - k_0. The projector (1/N) sum_t (q^-l D)^t applied to one
/// representative per orbit gives pairwise-disjoint supports.
inline Matrix sector_basis(const Context& ctx, int L, long l) {
  const int N = ctx.N();
  const Operator D = global_shift_D(ctx, L);
  const Eigen::Index dim = D.dim();
  const Eigen::Index count = dim / N;
  const cplx shift = ctx.q_pow(-l);
  Matrix basis(dim, count);
  // Representatives: k_0 = 0, i.e. the first N^(L-1) flat indices.
  for (Eigen::Index r = 0; r < count; ++r) {
    Vector v = Vector::Zero(dim);
    Vector e = Vector::Zero(dim);
    e(r) = 1.0;
    cplx phase = 1.0;
    for (int t = 0; t < N; ++t) {
      v += phase * e;
      e = D.m * e;
      phase *= shift;
    }
    basis.col(r) = v.normalized();
  }
  return basis;
}

}  // namespace hofbethe
