#pragma once

// Polynomial solutions of the rational Bethe equation
//   Lambda_m(x) Q(x) = q^-m prod_j (1 - x c_j q^-1) Q(x q^-1) + q^m prod_j (1 + x c_j) Q(x q)
// for L = 1, 2, 3, the root relation, and the brute-force T_2 oracle.

#include <algorithm>
#include <limits>
#include <vector>

#include <Eigen/SVD>

#include "hofbethe/baxter.hpp"
#include "hofbethe/polynomial.hpp"
#include "hofbethe/transfer.hpp"

namespace hofbethe {

struct BetheSolution {
  int m = 0;
  cplx lambda = 0.0;               ///< x^2 coefficient of Lambda_m (0 for L = 1)
  ComplexPolynomial Lambda_poly;
  ComplexPolynomial Q;             ///< Q(0) = 1
  std::vector<cplx> roots;         ///< z_l, reciprocals of the zeros of Q
  double rbeq_residual = 0.0;
  std::vector<double> ansatz_residuals;
  double null_gap = 0.0;           ///< second-smallest over largest singular value
};

/// Columns: coefficients of LHS - RHS for Q = x^k, k = 0..d.
inline Matrix rbeq_matrix(const ComplexPolynomial& Lambda, int m, const DegenerateChain& chain,
                          int d, const Context& ctx) {
  const int L = chain.L();
  const ComplexPolynomial P1 = linear_product(chain.c, -ctx.q_pow(-1));
  const ComplexPolynomial P2 = linear_product(chain.c, 1.0);
  const int rows = std::max(d + std::max(Lambda.degree(), 0), d + L) + 1;
  Matrix A = Matrix::Zero(rows, d + 1);
  for (int k = 0; k <= d; ++k) {
    const ComplexPolynomial col = Lambda * ComplexPolynomial::monomial(k) -
                                  (ctx.q_pow(-m - k) * P1) * ComplexPolynomial::monomial(k) -
                                  (ctx.q_pow(m + k) * P2) * ComplexPolynomial::monomial(k);
    for (int r = 0; r <= col.degree(); ++r) A(r, k) = col[r];
  }
  return A;
}

/// max over a circle grid of |LHS - RHS|, relative to the largest of the
/// three terms on the grid. Zero for Q = 0.
inline double rbeq_residual(const ComplexPolynomial& Q, const ComplexPolynomial& Lambda, int m,
                            const DegenerateChain& chain, const Context& ctx) {
  if (Q.is_zero()) return 0.0;
  const ComplexPolynomial P1 = linear_product(chain.c, -ctx.q_pow(-1));
  const ComplexPolynomial P2 = linear_product(chain.c, 1.0);
  const int K = Q.degree() + std::max(Lambda.degree(), chain.L()) + 2;
  double cmax = 0;
  for (cplx cj : chain.c) cmax = std::max(cmax, std::abs(cj));
  const double r = 1.0 / cmax;
  double diff = 0, scale = 0;
  for (int k = 0; k < K; ++k) {
    const cplx x = std::polar(r, 0.3 + 2.0 * std::numbers::pi * k / K);
    const cplx lhs = Lambda(x) * Q(x);
    const cplx t1 = ctx.q_pow(-m) * P1(x) * Q(x * ctx.q_pow(-1));
    const cplx t2 = ctx.q_pow(m) * P2(x) * Q(x * ctx.q());
    diff = std::max(diff, std::abs(lhs - t1 - t2));
    scale = std::max({scale, std::abs(lhs), std::abs(t1), std::abs(t2)});
  }
  return scale == 0 ? diff : diff / scale;
}

namespace detail {
inline constexpr double null_gap_min = 1e-6;
inline constexpr double eigen_gap_min = 1e-6;
}

/// Unique null vector of the coefficient-matching system, Q(0) = 1.
/// Throws genericity_failure unless the null space is certified 1-dimensional.
inline ComplexPolynomial solve_rbeq_for_Q(const ComplexPolynomial& Lambda, int m,
                                          const DegenerateChain& chain, int d,
                                          const Context& ctx, double* gap_out = nullptr) {
  const Matrix A = rbeq_matrix(Lambda, m, chain, d, ctx);
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index n = s.size();
  double gap = 1.0;
  if (n >= 2 && s(0) > 0) gap = s(n - 2) / s(0);
  if (gap_out) *gap_out = gap;
  if (gap < detail::null_gap_min)
    throw genericity_failure("rBeq null space is not 1-dimensional (gap " + std::to_string(gap) + ")");
  Vector v = svd.matrixV().col(d);
  if (std::abs(v(0)) < 1e-12 * v.cwiseAbs().maxCoeff())
    throw genericity_failure("rBeq null vector has Q(0) = 0");
  v /= v(0);
  return ComplexPolynomial(std::vector<cplx>(v.data(), v.data() + v.size()));
}

/// Residuals of q^(2m+L+d) prod_j (z_l + c_j)/(q z_l - c_j) = prod_(n != l) (q z_l - z_n)/(z_l - q z_n),
/// d = deg Q, relative to max(1, |RHS|). For L = 3 and d = 3M - m the prefactor
/// is q^(m+3/2).
inline std::vector<double> bethe_ansatz_residuals(std::span<const cplx> roots, int m,
                                                  std::span<const cplx> c, const Context& ctx) {
  const int L = static_cast<int>(c.size());
  const int d = static_cast<int>(roots.size());
  const cplx q = ctx.q();
  const cplx pref = ctx.q_pow(2L * m + L + d);
  std::vector<double> res;
  for (int l = 0; l < d; ++l) {
    const cplx z = roots[static_cast<std::size_t>(l)];
    cplx lhs = pref;
    for (int j = 0; j < L; ++j) {
      const cplx den = q * z - c[static_cast<std::size_t>(j)];
      if (std::abs(den) < detail::pole_tol) throw pole_error("ansatz pole q z = c_j", j);
      lhs *= (z + c[static_cast<std::size_t>(j)]) / den;
    }
    cplx rhs = 1.0;
    for (int n = 0; n < d; ++n) {
      if (n == l) continue;
      const cplx zn = roots[static_cast<std::size_t>(n)];
      const cplx den = z - q * zn;
      if (std::abs(den) < detail::pole_tol) throw pole_error("ansatz pole z_l = q z_n");
      rhs *= (q * z - zn) / den;
    }
    res.push_back(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return res;
}

inline std::vector<cplx> reciprocal_roots(const ComplexPolynomial& Q) {
  std::vector<cplx> z;
  for (cplx r : Q.roots()) z.push_back(1.0 / r);
  return z;
}

namespace detail {
inline BetheSolution finish_solution(int m, cplx lambda, ComplexPolynomial Lambda,
                                     ComplexPolynomial Q, const DegenerateChain& chain,
                                     const Context& ctx, double gap) {
  BetheSolution s;
  s.m = m;
  s.lambda = lambda;
  s.rbeq_residual = rbeq_residual(Q, Lambda, m, chain, ctx);
  s.roots = reciprocal_roots(Q);
  s.ansatz_residuals = bethe_ansatz_residuals(s.roots, m, chain.c, ctx);
  s.Lambda_poly = std::move(Lambda);
  s.Q = std::move(Q);
  s.null_gap = gap;
  return s;
}

inline void check_sector(int m, const Context& ctx) {
  if (m < 0 || m > ctx.M())
    throw domain_error("sector m must lie in [0, M], got " + std::to_string(m));
}
}  // namespace detail

/// L = 1: Lambda = q^m + q^-m and the closed-form B_m of degree M - m.
inline BetheSolution solve_L1(int m, cplx c0, const Context& ctx) {
  detail::check_sector(m, ctx);
  if (c0 == cplx{}) throw domain_error("c_0 must be nonzero");
  const int M = ctx.M();
  std::vector<cplx> coeffs{1.0};
  cplx prod = 1.0, pw = 1.0;
  for (int i = 1; i <= M - m; ++i) {
    const cplx den = ctx.q_pow(m) + ctx.q_pow(-m) - ctx.q_pow(-m - i) - ctx.q_pow(m + i);
    if (std::abs(den) < detail::pole_tol)
      throw degenerate_denominator("B_m denominator vanishes at i = " + std::to_string(i));
    prod *= (ctx.q_pow(m + i - 1) - ctx.q_pow(-m - i)) / den;
    pw *= c0;
    coeffs.push_back(prod * pw);
  }
  const DegenerateChain chain({c0});
  return detail::finish_solution(m, 0.0, ComplexPolynomial::constant(ctx.q_pow(m) + ctx.q_pow(-m)),
                                 ComplexPolynomial(std::move(coeffs)), chain, ctx, 1.0);
}

/// x^2 coefficient q^(1/2)(q^(m'-1) + q^(-m'-2)) c_0 c_1 of Lambda_{m,m'}.
inline cplx lambda_L2(int mp, cplx c0, cplx c1, const Context& ctx) {
  return ctx.q_half() * (ctx.q_pow(mp - 1) + ctx.q_pow(-mp - 2)) * c0 * c1;
}

/// L = 2: Q of degree M - m + m' by null-space solve at Lambda_{m,m'}.
inline BetheSolution solve_L2(int m, int mp, cplx c0, cplx c1, const Context& ctx) {
  detail::check_sector(m, ctx);
  detail::check_sector(mp, ctx);
  const DegenerateChain chain({c0, c1});
  const cplx lam = lambda_L2(mp, c0, c1, ctx);
  ComplexPolynomial Lambda({ctx.q_pow(m) + ctx.q_pow(-m), 0.0, lam});
  double gap = 0;
  ComplexPolynomial Q = solve_rbeq_for_Q(Lambda, m, chain, ctx.M() - m + mp, ctx, &gap);
  return detail::finish_solution(m, lam, std::move(Lambda), std::move(Q), chain, ctx, gap);
}

/// The banded N x N matrix whose eigenvalues are the admissible lambda_m for
/// L = 3. Row i (0-based) uses k = N-1-i: diagonal delta'_k, superdiagonal
/// u'_k, subdiagonal v'_k, second subdiagonal w'_k.
inline Matrix matrix_A(int m, std::span<const cplx> c, const Context& ctx) {
  detail::check_sector(m, ctx);
  if (c.size() != 3) throw arity_error("matrix_A needs three c_j");
  const cplx s1 = c[0] + c[1] + c[2];
  const cplx s2 = c[0] * c[1] + c[1] * c[2] + c[2] * c[0];
  const cplx s3 = c[0] * c[1] * c[2];
  auto h = [&](long k2) { return ctx.q_half_pow(k2); };
  const cplx qm = ctx.q_pow(m) + ctx.q_pow(-m);
  const int N = ctx.N();
  Matrix A = Matrix::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    const long k = N - 1 - i;
    A(i, i) = (h(2 * k - 1) + h(-2 * k - 3)) * s2;
    if (i + 1 < N) A(i, i + 1) = (h(2 * k - 3) - h(-2 * k - 3)) * s3;
    if (i >= 1) A(i, i - 1) = (h(2 * k + 1) - h(-2 * k - 3)) * s1;
    if (i >= 2) A(i, i - 2) = h(2 * k + 3) + h(-2 * k - 3) - qm;
  }
  return A;
}

inline std::vector<cplx> eigenvalues(const Matrix& A) {
  Eigen::ComplexEigenSolver<Matrix> es(A, false);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline double min_pairwise_gap(std::span<const cplx> v) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) g = std::min(g, std::abs(v[i] - v[j]));
  return g;
}

/// L = 3: one solution per eigenvalue of matrix_A, each with deg Q = 3M - m.
inline std::vector<BetheSolution> solve_L3(int m, std::span<const cplx> c, const Context& ctx) {
  const std::vector<cplx> lams = eigenvalues(matrix_A(m, c, ctx));
  double scale = 1.0;
  for (cplx l : lams) scale = std::max(scale, std::abs(l));
  if (min_pairwise_gap(lams) < detail::eigen_gap_min * scale)
    throw genericity_failure("matrix A has near-repeated eigenvalues");
  const DegenerateChain chain(std::vector<cplx>(c.begin(), c.end()));
  std::vector<BetheSolution> out;
  for (cplx lam : lams) {
    ComplexPolynomial Lambda({ctx.q_pow(m) + ctx.q_pow(-m), 0.0, lam});
    double gap = 0;
    ComplexPolynomial Q = solve_rbeq_for_Q(Lambda, m, chain, 3 * ctx.M() - m, ctx, &gap);
    out.push_back(detail::finish_solution(m, lam, std::move(Lambda), std::move(Q), chain, ctx, gap));
  }
  return out;
}

/// Reading of s_1 in the sector-M lambda formula.
enum class S1Reading {
  negated_sum,  ///< s_1 = -(c_0 + c_1 + c_2); the reading consistent with rBeq
  plain_sum,    ///< s_1 = c_0 + c_1 + c_2
};

/// lambda_M = (q^-1/2 + q^-3/2) s_2 + (q^1/2 - q^-3/2) s_1 sum z_n
///          + (q^3/2 + q^-3/2 - q^1/2 - q^-1/2) sum_(l<n) z_l z_n.
inline cplx lambda_M_from_roots(std::span<const cplx> z, std::span<const cplx> c,
                                const Context& ctx, S1Reading reading = S1Reading::negated_sum) {
  if (c.size() != 3) throw arity_error("lambda_M_from_roots needs three c_j");
  if (static_cast<int>(z.size()) != 2 * ctx.M())
    throw arity_error("lambda_M_from_roots needs 2M = " + std::to_string(2 * ctx.M()) + " roots");
  const cplx sum_c = c[0] + c[1] + c[2];
  const cplx s1 = reading == S1Reading::negated_sum ? -sum_c : sum_c;
  const cplx s2 = c[0] * c[1] + c[1] * c[2] + c[2] * c[0];
  cplx e1 = 0, e2 = 0;
  for (cplx zi : z) {
    e2 += e1 * zi;
    e1 += zi;
  }
  auto h = [&](long k2) { return ctx.q_half_pow(k2); };
  return (h(-1) + h(-3)) * s2 + (h(1) - h(-3)) * s1 * e1 + (h(3) + h(-3) - h(1) - h(-1)) * e2;
}

/// K = B^* T B for the orthonormal sector basis B of the q^l eigenspace of D.
inline Matrix sector_restriction(const Operator& T, long l, const Context& ctx) {
  const Matrix B = sector_basis(ctx, T.L, l);
  return B.adjoint() * T.m * B;
}

/// Eigenvalues of T_2 restricted to the q^l sector (L = 2 or 3).
inline std::vector<cplx> oracle_spectrum(const ChainParams& chain, long l, const Context& ctx) {
  if (chain.L() < 2 || chain.L() > 3) throw arity_error("oracle_spectrum needs L in {2, 3}");
  const TransferPencil pencil = transfer_pencil(chain, ctx);
  return eigenvalues(sector_restriction(pencil[1], l, ctx));
}

struct LeftEigenpair {
  cplx value;
  Eigen::RowVectorXcd phi;  ///< phi T = value phi, supported in the sector
};

/// Left eigenvectors of an operator inside the q^l sector: phi = w^T B^* with
/// w an eigenvector of K^T.
inline std::vector<LeftEigenpair> sector_left_eigenpairs(const Operator& T, long l,
                                                         const Context& ctx) {
  const Matrix B = sector_basis(ctx, T.L, l);
  const Matrix K = B.adjoint() * T.m * B;
  Eigen::ComplexEigenSolver<Matrix> es(K.transpose());
  std::vector<LeftEigenpair> out;
  for (Eigen::Index i = 0; i < K.rows(); ++i) {
    Eigen::RowVectorXcd phi = es.eigenvectors().col(i).transpose() * B.adjoint();
    out.push_back({es.eigenvalues()(i), phi / phi.norm()});
  }
  return out;
}

struct MatchResult {
  bool ok = false;
  double max_error = 0.0;
};

/// Greedy nearest-neighbour matching of two multisets of equal size.
inline MatchResult match_multisets(std::span<const cplx> a, std::span<const cplx> b, double tol) {
  if (a.size() != b.size()) return {false, std::numeric_limits<double>::infinity()};
  std::vector<bool> used(b.size(), false);
  double worst = 0;
  for (cplx x : a) {
    std::size_t best = b.size();
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!used[j] && std::abs(x - b[j]) < bd) {
        bd = std::abs(x - b[j]);
        best = j;
      }
    used[best] = true;
    worst = std::max(worst, bd);
  }
  return {worst <= tol, worst};
}

struct Cluster {
  cplx value;
  int multiplicity;
};

/// Groups values closer than tol to a running cluster mean.
inline std::vector<Cluster> cluster_values(std::span<const cplx> v, double tol) {
  std::vector<Cluster> out;
  std::vector<cplx> sums;
  for (cplx x : v) {
    bool placed = false;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (std::abs(out[i].value - x) < tol) {
        sums[i] += x;
        ++out[i].multiplicity;
        out[i].value = sums[i] / static_cast<double>(out[i].multiplicity);
        placed = true;
        break;
      }
    if (!placed) {
      out.push_back({x, 1});
      sums.push_back(x);
    }
  }
  return out;
}

}  // namespace hofbethe
