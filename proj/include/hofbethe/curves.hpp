#pragma once

// The L = 3 Hofstadter specialisation: the A/B/C/D polynomials, the curve B
// fibre quadratic, sampling of the curve W, averaged Baxter vectors and the
// evaluation map into functions on W.

#include <array>
#include <vector>

#include <Eigen/SVD>

#include "hofbethe/baxter.hpp"
#include "hofbethe/polynomial.hpp"
#include "hofbethe/transfer.hpp"

namespace hofbethe {

/// (-A, B; C, -D) = prod_j (-a_j^N, y b_j^N; y c_j^N, -d_j^N).
struct ABCDPolys {
  ComplexPolynomial A, B, C, D;
};

inline ABCDPolys abcd_polys(const ChainParams& chain, const Context& ctx) {
  const int N = ctx.N();
  using P = ComplexPolynomial;
  std::array<P, 4> acc{P::constant(1.0), P(), P(), P::constant(1.0)};
  for (const auto& h : chain.sites) {
    const std::array<P, 4> f{P::constant(-std::pow(h.a, N)), P::monomial(1, std::pow(h.b, N)),
                             P::monomial(1, std::pow(h.c, N)), P::constant(-std::pow(h.d, N))};
    acc = {acc[0] * f[0] + acc[1] * f[2], acc[0] * f[1] + acc[1] * f[3],
           acc[2] * f[0] + acc[3] * f[2], acc[2] * f[1] + acc[3] * f[3]};
  }
  return {cplx(-1.0) * acc[0], acc[1], acc[2], cplx(-1.0) * acc[3]};
}

/// Roots of C(y) eta^2 + (A(y) - D(y)) eta - B(y) = 0.
inline std::array<cplx, 2> eta_roots(cplx y, const ChainParams& chain, const Context& ctx) {
  const ABCDPolys p = abcd_polys(chain, ctx);
  const cplx a = p.C(y), b = p.A(y) - p.D(y), c = -p.B(y);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (std::abs(a) <= 1e-14 * scale) throw curve_error("eta quadratic degenerates: C(y) = 0");
  const cplx disc = std::sqrt(b * b - 4.0 * a * c);
  const cplx den = std::abs(b + disc) >= std::abs(b - disc) ? -(b + disc) : -(b - disc);
  if (den == cplx{}) return {cplx{}, cplx{}};
  const cplx r1 = den / (2.0 * a);
  return {r1, 2.0 * c / den};
}

/// h_0 = [0:1:1:0] and two generic sites.
struct HofstadterChain3 {
  SiteParams h1, h2;

  HofstadterChain3(SiteParams a, SiteParams b) : h1(a), h2(b) {}
  static SiteParams h0() { return {0.0, 1.0, 1.0, 0.0}; }
  ChainParams to_chain() const { return ChainParams({h0(), h1, h2}); }
};

struct WPoint {
  cplx x;
  cplx xi0;
  cplx xi2;
  std::array<double, 2> residuals{};
};

/// N-th root with argument in [0, 2 pi / N).
inline cplx principal_root(cplx z, int N) {
  double arg = std::arg(z);
  if (arg < 0) arg += 2.0 * std::numbers::pi;
  return std::polar(std::pow(std::abs(z), 1.0 / N), arg / N);
}

namespace detail {
inline cplx w_rhs(cplx xi, cplx y, const SiteParams& h, int N, int site) {
  const cplx den = y * std::pow(xi, N) * std::pow(h.c, N) - std::pow(h.d, N);
  if (std::abs(den) < pole_tol) throw pole_error("curve W denominator vanishes", site);
  return (-std::pow(xi, N) * std::pow(h.a, N) + y * std::pow(h.b, N)) / den;
}
}  // namespace detail

/// Relative residuals of the two defining equations of W.
inline std::array<double, 2> w_residuals(cplx x, cplx xi0, cplx xi2, const HofstadterChain3& ch,
                                         const Context& ctx) {
  const int N = ctx.N();
  const cplx y = std::pow(x, N);
  const cplx r1 = detail::w_rhs(xi2, y, ch.h1, N, 1);
  const cplx r2 = detail::w_rhs(xi0, y, ch.h2, N, 2);
  return {std::abs(std::pow(xi0, -N) - r1) / std::max(1.0, std::abs(r1)),
          std::abs(std::pow(xi2, N) - r2) / std::max(1.0, std::abs(r2))};
}

inline constexpr double w_tol = 1e-9;

inline WPoint make_wpoint(cplx x, cplx xi0, cplx xi2, const HofstadterChain3& ch,
                          const Context& ctx) {
  WPoint p{x, xi0, xi2, w_residuals(x, xi0, xi2, ch, ctx)};
  if (p.residuals[0] > w_tol || p.residuals[1] > w_tol)
    throw curve_error("point is not on W (residuals " + std::to_string(p.residuals[0]) + ", " +
                      std::to_string(p.residuals[1]) + ")");
  return p;
}

/// All 2N^2 points of W over x: eta = xi_0^N from the curve B fibre at y = x^N,
/// xi_2^N from the second defining equation, then every pair of N-th roots.
inline std::vector<WPoint> sample_W(cplx x, const HofstadterChain3& ch, const Context& ctx) {
  const int N = ctx.N();
  if (x == cplx{}) throw pole_error("sample_W needs x != 0");
  const cplx y = std::pow(x, N);
  std::vector<WPoint> pts;
  for (cplx eta : eta_roots(y, ch.to_chain(), ctx)) {
    if (eta == cplx{}) throw pole_error("xi_0^N = 0 on this fibre");
    const cplx t = detail::w_rhs(principal_root(eta, N), y, ch.h2, N, 2);
    const cplx r0 = principal_root(eta, N), r2 = principal_root(t, N);
    for (int s0 = 0; s0 < N; ++s0)
      for (int s2 = 0; s2 < N; ++s2)
        pts.push_back(make_wpoint(x, r0 * ctx.omega_pow(s0), r2 * ctx.omega_pow(s2), ch, ctx));
  }
  return pts;
}

/// tau_+-(x, xi_0, xi_2) = (q^(+-1) x, q^-1 xi_0, q^-1 xi_2), re-validated on W.
inline WPoint tau_W(const WPoint& p, int sign, const HofstadterChain3& ch, const Context& ctx) {
  return make_wpoint(p.x * ctx.q_pow(sign > 0 ? 1 : -1), p.xi0 * ctx.q_pow(-1),
                     p.xi2 * ctx.q_pow(-1), ch, ctx);
}

/// Weights and fibre labels of the N lifts xi_1 over a point of W.
enum class LiftWeighting {
  printed,     ///< q^(s^2), xi_1 = w^s * principal root of xi_0^-N
  descending,  ///< q^(-k(k+1)), xi_1 = w^k / xi_0
};

/// (1/N) sum over the xi_1 fibre of weighted chain Baxter vectors.
inline Vector averaged_baxter(cplx x, cplx xi0, cplx xi2, const HofstadterChain3& ch,
                              const Context& ctx, LiftWeighting mode = LiftWeighting::printed) {
  const int N = ctx.N();
  const ChainParams chain = ch.to_chain();
  const cplx ref = mode == LiftWeighting::printed ? principal_root(std::pow(xi0, -N), N) : 1.0 / xi0;
  Vector acc;
  for (int s = 0; s < N; ++s) {
    const std::array<cplx, 3> xi{xi0, ctx.omega_pow(s) * ref, xi2};
    const cplx wt = mode == LiftWeighting::printed ? ctx.q_pow(static_cast<long>(s) * s)
                                                   : ctx.q_pow(-static_cast<long>(s) * (s + 1));
    Vector v = chain_baxter_vector(chain, x, xi, ctx) * wt;
    if (s == 0)
      acc = std::move(v);
    else
      acc += v;
  }
  return acc / static_cast<double>(N);
}

inline Vector averaged_baxter(const WPoint& p, const HofstadterChain3& ch, const Context& ctx,
                              LiftWeighting mode = LiftWeighting::printed) {
  return averaged_baxter(p.x, p.xi0, p.xi2, ch, ctx, mode);
}

/// (x xi_2 c_1 - d_1)(x xi_0 c_2 - d_2) / (-x xi_0).
inline cplx delta_tilde_minus(cplx x, cplx xi0, cplx xi2, const HofstadterChain3& ch) {
  if (x * xi0 == cplx{}) throw pole_error("Delta~_- pole at x xi_0 = 0");
  return (x * xi2 * ch.h1.c - ch.h1.d) * (x * xi0 * ch.h2.c - ch.h2.d) / (-x * xi0);
}

/// xi_2 (a_1 d_1 - x^2 b_1 c_1)(a_2 d_2 - x^2 b_2 c_2) / (x (xi_2 a_1 - x b_1)(xi_0 a_2 - x b_2)).
inline cplx delta_tilde_plus(cplx x, cplx xi0, cplx xi2, const HofstadterChain3& ch) {
  const auto &h1 = ch.h1, &h2 = ch.h2;
  const cplx f1 = xi2 * h1.a - x * h1.b, f2 = xi0 * h2.a - x * h2.b;
  if (std::abs(x) < detail::pole_tol) throw pole_error("Delta~_+ pole at x = 0");
  if (std::abs(f1) < detail::pole_tol) throw pole_error("Delta~_+ pole", 1);
  if (std::abs(f2) < detail::pole_tol) throw pole_error("Delta~_+ pole", 2);
  return xi2 * (h1.a * h1.d - x * x * h1.b * h1.c) * (h2.a * h2.d - x * x * h2.b * h2.c) /
         (x * f1 * f2);
}

namespace detail {
/// Descended relation without on-curve validation of p or its shifts.
inline double descended_t_residual_raw(cplx x, cplx xi0, cplx xi2, const HofstadterChain3& ch,
                                       const Context& ctx, LiftWeighting mode) {
  const cplx qi = ctx.q_pow(-1);
  const Operator T = transfer_T(ch.to_chain(), x, ctx);
  const Vector lhs = (T * averaged_baxter(x, xi0, xi2, ch, ctx, mode)) / (x * x);
  const Vector rhs =
      averaged_baxter(x * qi, xi0 * qi, xi2 * qi, ch, ctx, mode) * delta_tilde_minus(x, xi0, xi2, ch) +
      averaged_baxter(x * ctx.q(), xi0 * qi, xi2 * qi, ch, ctx, mode) * delta_tilde_plus(x, xi0, xi2, ch);
  return relative_diff(lhs, rhs);
}
}  // namespace detail

/// x^-2 T(x)|p> against |tau_- p> Delta~_-(p) + |tau_+ p> Delta~_+(p).
inline double descended_t_residual(const WPoint& p, const HofstadterChain3& ch, const Context& ctx,
                                   LiftWeighting mode = LiftWeighting::printed) {
  (void)make_wpoint(p.x, p.xi0, p.xi2, ch, ctx);
  (void)tau_W(p, -1, ch, ctx);
  (void)tau_W(p, +1, ch, ctx);
  return detail::descended_t_residual_raw(p.x, p.xi0, p.xi2, ch, ctx, mode);
}

/// Singular values of the row-normalised |points| x N^2 matrix <v_i|p_k>.
inline Eigen::VectorXd epsilon_singular_values(long l, std::span<const WPoint> points,
                                               const HofstadterChain3& ch, const Context& ctx,
                                               LiftWeighting mode = LiftWeighting::printed) {
  const int N = ctx.N();
  if (static_cast<int>(points.size()) < N * N)
    throw arity_error("epsilon_rank needs at least N^2 = " + std::to_string(N * N) + " points");
  const Matrix B = sector_basis(ctx, 3, l);
  Matrix rows(static_cast<Eigen::Index>(points.size()), B.cols());
  for (std::size_t k = 0; k < points.size(); ++k) {
    Eigen::RowVectorXcd r = (B.adjoint() * averaged_baxter(points[k], ch, ctx, mode)).transpose();
    const double n = r.norm();
    rows.row(static_cast<Eigen::Index>(k)) = n > 0 ? Eigen::RowVectorXcd(r / n) : r;
  }
  return Eigen::JacobiSVD<Matrix>(rows).singularValues();
}

inline constexpr double rank_tol = 1e-8;

inline int epsilon_rank(long l, std::span<const WPoint> points, const HofstadterChain3& ch,
                        const Context& ctx, LiftWeighting mode = LiftWeighting::printed) {
  const Eigen::VectorXd s = epsilon_singular_values(l, points, ch, ctx, mode);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rank_tol * s(0)) ++r;
  return r;
}

/// xi_j^N on the spectral curve from y = x^N and xi_0^N, going around the
/// chain backwards: xi_j^N = (-xi_(j+1)^N a_j^N + y b_j^N) / (y xi_(j+1)^N c_j^N - d_j^N).
inline std::vector<cplx> fibre_powers(cplx y, cplx xi0_N, const ChainParams& chain,
                                      const Context& ctx) {
  const int N = ctx.N();
  const int L = chain.L();
  std::vector<cplx> out(static_cast<std::size_t>(L));
  out[0] = xi0_N;
  cplx next = xi0_N;
  for (int j = L - 1; j >= 1; --j) {
    const auto& h = chain.sites[static_cast<std::size_t>(j)];
    const cplx den = y * next * std::pow(h.c, N) - std::pow(h.d, N);
    if (std::abs(den) < detail::pole_tol) throw pole_error("fibre power pole", j);
    next = (-next * std::pow(h.a, N) + y * std::pow(h.b, N)) / den;
    out[static_cast<std::size_t>(j)] = next;
  }
  return out;
}

/// max_j |F_(h_j)(x, xi_j, xi_(j+1)) v_j| / |v_j| for the site null vectors.
inline double site_null_residual(const ChainParams& chain, cplx x, std::span<const cplx> xi,
                                 const Context& ctx) {
  const int L = chain.L();
  double worst = 0;
  for (int j = 0; j < L; ++j) {
    const auto& h = chain.sites[static_cast<std::size_t>(j)];
    const cplx a = xi[static_cast<std::size_t>(j)], b = xi[static_cast<std::size_t>((j + 1) % L)];
    const Vector v = site_baxter_vector(h, x, a, b, ctx, j);
    const Operator F = f_op(h, x, a, b, ctx);
    const double scale = std::max(1.0, max_abs(F)) * v.cwiseAbs().maxCoeff();
    worst = std::max(worst, (F * v).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

}  // namespace hofbethe
