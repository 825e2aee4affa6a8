#pragma once

// Baxter vectors of the rational-degenerate chain and of a general chain,
// the shift functions Delta_+-, and the sector vectors |x>^e, |x>^o, |x>^+.

#include <algorithm>
#include <vector>

#include "hofbethe/polynomial.hpp"
#include "hofbethe/transfer.hpp"
#include "hofbethe/weyl.hpp"

namespace hofbethe {

namespace detail {
inline constexpr double pole_tol = 1e-12;
}

/// Point (x, l) of the degenerate spectral curve, l reduced to [0, N).
struct RationalPoint {
  cplx x;
  int l;

  RationalPoint(cplx x_, long l_, const Context& ctx) : x(x_), l(ctx.reduce(l_)) {}
};

/// a_j = q^-1, b_j = q^-1 c_j, c_j, d_j = 1.
struct DegenerateChain {
  std::vector<cplx> c;

  explicit DegenerateChain(std::vector<cplx> cs) : c(std::move(cs)) {
    if (c.empty()) throw domain_error("degenerate chain needs at least one site");
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] == cplx{}) throw domain_error("c_" + std::to_string(j) + " must be nonzero");
  }

  int L() const { return static_cast<int>(c.size()); }

  ChainParams to_chain(const Context& ctx) const {
    const cplx qi = ctx.q_pow(-1);
    std::vector<SiteParams> sites;
    for (cplx cj : c) sites.emplace_back(qi, qi * cj, cj, 1.0);
    return ChainParams(std::move(sites));
  }
};

/// tau_+-(x, l) = (q^(+-1) x, l - 1).
inline RationalPoint tau(const RationalPoint& p, int sign, const Context& ctx) {
  return {p.x * ctx.q_pow(sign > 0 ? 1 : -1), p.l - 1, ctx};
}

/// Delta_-(x, l) = prod_j (1 - x c_j q^l).
inline cplx delta_minus(cplx x, long l, const DegenerateChain& chain, const Context& ctx) {
  cplx r = 1.0;
  for (cplx cj : chain.c) r *= 1.0 - x * cj * ctx.q_pow(l);
  return r;
}

/// Delta_+(x, l) = prod_j (1 - x^2 c_j^2) / (1 - x c_j q^-l).
inline cplx delta_plus(cplx x, long l, const DegenerateChain& chain, const Context& ctx) {
  cplx r = 1.0;
  for (int j = 0; j < chain.L(); ++j) {
    const cplx cj = chain.c[static_cast<std::size_t>(j)];
    const cplx den = 1.0 - x * cj * ctx.q_pow(-l);
    if (std::abs(den) < detail::pole_tol) throw pole_error("Delta_+ pole", j);
    r *= (1.0 - x * x * cj * cj) / den;
  }
  return r;
}

inline cplx delta_pm(const RationalPoint& p, int sign, const DegenerateChain& chain,
                     const Context& ctx) {
  return sign > 0 ? delta_plus(p.x, p.l, chain, ctx) : delta_minus(p.x, p.l, chain, ctx);
}

/// Site factor of |x, l>: q^(k^2) (x c q^(-l-2); omega^-1)_k / (x c q^(l+2); omega)_k.
inline Vector degenerate_site_vector(cplx x, int l, cplx c, int site, const Context& ctx) {
  const int N = ctx.N();
  const cplx up = x * c * ctx.q_pow(-l - 2);
  const cplx dn = x * c * ctx.q_pow(l + 2);
  Vector v(N);
  cplx num = 1.0, den = 1.0;
  for (int k = 0; k < N; ++k) {
    if (k > 0) {
      num *= 1.0 - up * ctx.omega_pow(-(k - 1));
      den *= 1.0 - dn * ctx.omega_pow(k - 1);
      if (std::abs(den) < detail::pole_tol) throw pole_error("Baxter vector pole", site);
    }
    v(k) = ctx.q_pow(static_cast<long>(k) * k) * num / den;
  }
  return v;
}

/// |x, l> with components indexed by k in (Z_N)^L, k_0 most significant.
inline Vector baxter_vector(const RationalPoint& p, const DegenerateChain& chain,
                            const Context& ctx) {
  std::vector<Vector> f;
  for (int j = 0; j < chain.L(); ++j)
    f.push_back(degenerate_site_vector(p.x, p.l, chain.c[static_cast<std::size_t>(j)], j, ctx));
  return kron_vectors(f);
}

/// Null vector of F_h(x, xi, xi') normalised by v_0 = 1, from
/// v_m / v_(m-1) = (xi' a w^m - x b) / (-xi (xi' x c w^m - d)).
inline Vector site_baxter_vector(const SiteParams& h, cplx x, cplx xi, cplx xip,
                                 const Context& ctx, int site = -1) {
  const int N = ctx.N();
  Vector v(N);
  v(0) = 1.0;
  for (int m = 1; m < N; ++m) {
    const cplx wm = ctx.omega_pow(m);
    const cplx den = -xi * (xip * x * h.c * wm - h.d);
    if (std::abs(den) < detail::pole_tol) throw pole_error("site Baxter vector pole", site);
    v(m) = v(m - 1) * (xip * h.a * wm - x * h.b) / den;
  }
  return v;
}

/// Tensor product of site null vectors at (x, xi_0, ..., xi_{L-1}), xi_L := xi_0.
inline Vector chain_baxter_vector(const ChainParams& chain, cplx x, std::span<const cplx> xi,
                                  const Context& ctx) {
  const int L = chain.L();
  if (static_cast<int>(xi.size()) != L)
    throw arity_error("chain_baxter_vector: need one xi per site");
  std::vector<Vector> f;
  for (int j = 0; j < L; ++j)
    f.push_back(site_baxter_vector(chain.sites[static_cast<std::size_t>(j)], x,
                                   xi[static_cast<std::size_t>(j)],
                                   xi[static_cast<std::size_t>((j + 1) % L)], ctx, j));
  return kron_vectors(f);
}

/// Relative residual of T(x)|x,l> = |q^-1 x, l-1> Delta_-(x,l) + |qx, l-1> Delta_+(x,l).
inline double t_action_residual(const DegenerateChain& chain, const RationalPoint& p,
                                const Context& ctx) {
  const Operator T = transfer_T(chain.to_chain(ctx), p.x, ctx);
  const Vector lhs = T * baxter_vector(p, chain, ctx);
  const Vector rhs = baxter_vector(tau(p, -1, ctx), chain, ctx) * delta_minus(p.x, p.l, chain, ctx) +
                     baxter_vector(tau(p, +1, ctx), chain, ctx) * delta_plus(p.x, p.l, chain, ctx);
  return relative_diff(lhs, rhs);
}

/// Max-norm of the (2,1) entry of the gauge-transformed chain at xi_j = q^l
/// applied to |x, l>, relative to |x, l>.
inline double gauge_null_residual(const DegenerateChain& chain, const RationalPoint& p,
                                  const Context& ctx) {
  const std::vector<cplx> xi(static_cast<std::size_t>(chain.L()), ctx.q_pow(p.l));
  const BlockOperator2x2 G = gauge_chain(chain.to_chain(ctx), p.x, xi, ctx);
  const Vector v = baxter_vector(p, chain, ctx);
  return (G(1, 0) * v).cwiseAbs().maxCoeff() / v.cwiseAbs().maxCoeff();
}

/// u(x) = prod_j (1 - x^N c_j^N) (x c_j q; q^2)_M.
inline cplx u_function(cplx x, const DegenerateChain& chain, const Context& ctx) {
  const int N = ctx.N();
  cplx r = 1.0;
  for (cplx cj : chain.c)
    r *= (1.0 - std::pow(x * cj, N)) * pochhammer(x * cj * ctx.q(), ctx.q_pow(2), ctx.M());
  return r;
}

/// f^e(x, 2n) = prod_j (x c_j; w^-1)_(n+1) / (x c_j; w)_(n+1).
inline cplx f_even(cplx x, int n, const DegenerateChain& chain, const Context& ctx) {
  cplx r = 1.0;
  for (int j = 0; j < chain.L(); ++j) {
    const cplx a = x * chain.c[static_cast<std::size_t>(j)];
    const cplx den = pochhammer(a, ctx.omega(), n + 1);
    if (std::abs(den) < detail::pole_tol) throw pole_error("f^e pole", j);
    r *= pochhammer(a, ctx.omega_pow(-1), n + 1) / den;
  }
  return r;
}

/// f^o(x, 2n+1) = prod_j (x c_j q^-1; w^-1)_(n+1) / (x c_j q; w)_(n+1).
inline cplx f_odd(cplx x, int n, const DegenerateChain& chain, const Context& ctx) {
  cplx r = 1.0;
  for (int j = 0; j < chain.L(); ++j) {
    const cplx a = x * chain.c[static_cast<std::size_t>(j)];
    const cplx den = pochhammer(a * ctx.q(), ctx.omega(), n + 1);
    if (std::abs(den) < detail::pole_tol) throw pole_error("f^o pole", j);
    r *= pochhammer(a * ctx.q_pow(-1), ctx.omega_pow(-1), n + 1) / den;
  }
  return r;
}

struct SectorVectors {
  Vector even;
  Vector odd;
  Vector plus;
};

inline SectorVectors sector_vectors(cplx x, long l, const DegenerateChain& chain,
                                    const Context& ctx) {
  const int N = ctx.N();
  const Eigen::Index dim = Operator::ipow(N, chain.L());
  SectorVectors s{Vector::Zero(dim), Vector::Zero(dim), Vector::Zero(dim)};
  for (int n = 0; n < N; ++n) {
    const cplx phase = ctx.omega_pow(l * n);
    s.even += baxter_vector({x, 2L * n, ctx}, chain, ctx) * (f_even(x, n, chain, ctx) * phase);
    s.odd += baxter_vector({x, 2L * n + 1, ctx}, chain, ctx) * (f_odd(x, n, chain, ctx) * phase);
  }
  s.plus = s.even * (ctx.q_pow(-l) * u_function(ctx.q() * x, chain, ctx)) +
           s.odd * u_function(x, chain, ctx);
  return s;
}

/// |x>^e_l u(qx) against |x>^o_l q^l u(x).
inline double theorem1_i_residual(const DegenerateChain& chain, cplx x, long l,
                                  const Context& ctx) {
  const SectorVectors s = sector_vectors(x, l, chain, ctx);
  return relative_diff(s.even * u_function(ctx.q() * x, chain, ctx),
                       s.odd * (ctx.q_pow(l) * u_function(x, chain, ctx)));
}

/// |x>^+_l against 2 q^-l |x>^e_l u(qx).
inline double theorem1_plus_residual(const DegenerateChain& chain, cplx x, long l,
                                     const Context& ctx) {
  const SectorVectors s = sector_vectors(x, l, chain, ctx);
  return relative_diff(s.plus, s.even * (2.0 * ctx.q_pow(-l) * u_function(ctx.q() * x, chain, ctx)));
}

/// q^-l T(x)|x>^+_l against |q^-1 x>^+_l Delta_-(x,-1) + |qx>^+_l Delta_+(x,0).
inline double theorem1_ii_residual(const DegenerateChain& chain, cplx x, long l,
                                   const Context& ctx) {
  const Operator T = transfer_T(chain.to_chain(ctx), x, ctx);
  const Vector lhs = ctx.q_pow(-l) * (T * sector_vectors(x, l, chain, ctx).plus);
  const Vector rhs =
      sector_vectors(x * ctx.q_pow(-1), l, chain, ctx).plus * delta_minus(x, -1, chain, ctx) +
      sector_vectors(x * ctx.q(), l, chain, ctx).plus * delta_plus(x, 0, chain, ctx);
  return relative_diff(lhs, rhs);
}

/// Checks on Q^+_l(x) = <phi|x>^+_l for a left eigenvector phi of T.
/// All entries are relative to the coefficient scale of Q^+_l.
struct DivisibilityReport {
  ComplexPolynomial poly;   ///< Q^+_l recovered up to degree (3M+1)L
  double high_coeffs = 0;   ///< coefficients above the degree bound (aliasing probe)
  double low_order = 0;     ///< coefficients of x^k for k < min(l, N-l)
  double root_values = 0;   ///< |Q^+_l| at x = w^k / c_j
  double offgrid = 0;       ///< interpolant against a direct evaluation off the grid

  double worst() const { return std::max({high_coeffs, low_order, root_values, offgrid}); }
};

/// One report per row of phis. Q^+_l is sampled on a circle of radius
/// 0.9 / max|c_j| (inside every Baxter-vector pole) at 2((3M+1)L + 1) points
/// and its coefficients are recovered by an inverse DFT.
inline std::vector<DivisibilityReport> divisibility_check(const DegenerateChain& chain,
                                                          const Matrix& phis, long l,
                                                          const Context& ctx) {
  const int N = ctx.N();
  const int deg = (3 * ctx.M() + 1) * chain.L();
  const int K = 2 * (deg + 1);
  double cmax = 0;
  for (cplx cj : chain.c) cmax = std::max(cmax, std::abs(cj));
  const double r = 0.9 / cmax;
  const double phase0 = 0.1;
  const Eigen::Index rows = phis.rows();

  Matrix samples(rows, K);
  for (int k = 0; k < K; ++k) {
    const cplx x = std::polar(r, phase0 + 2.0 * std::numbers::pi * k / K);
    samples.col(k) = phis * sector_vectors(x, l, chain, ctx).plus;
  }
  const cplx xo = std::polar(0.5 * r, 0.77);
  const Vector direct = phis * sector_vectors(xo, l, chain, ctx).plus;
  const int m = std::min(ctx.reduce(l), N - ctx.reduce(l));

  std::vector<DivisibilityReport> out;
  for (Eigen::Index i = 0; i < rows; ++i) {
    // c_n r^n e^{i n phase0} = (1/K) sum_k f(x_k) e^{-2 pi i k n / K}
    std::vector<cplx> coeffs(static_cast<std::size_t>(K));
    for (int n = 0; n < K; ++n) {
      cplx acc = 0;
      for (int k = 0; k < K; ++k)
        acc += samples(i, k) * std::polar(1.0, -2.0 * std::numbers::pi * k * n / K);
      coeffs[static_cast<std::size_t>(n)] =
          acc / (static_cast<double>(K) * std::polar(std::pow(r, n), n * phase0));
    }
    DivisibilityReport rep;
    double scale = 0;
    for (int n = 0; n <= deg; ++n)
      scale = std::max(scale, std::abs(coeffs[static_cast<std::size_t>(n)]) * std::pow(r, n));
    if (scale == 0) scale = 1;
    for (int n = deg + 1; n < K; ++n)
      rep.high_coeffs = std::max(
          rep.high_coeffs, std::abs(coeffs[static_cast<std::size_t>(n)]) * std::pow(r, n) / scale);
    for (int n = 0; n < m; ++n)
      rep.low_order = std::max(rep.low_order, std::abs(coeffs[static_cast<std::size_t>(n)]) / scale);

    rep.poly = ComplexPolynomial(std::vector<cplx>(coeffs.begin(), coeffs.begin() + deg + 1));
    auto magnitude = [&](cplx x) {
      double s = 0;
      for (int n = 0; n <= deg; ++n) s += std::abs(rep.poly[n]) * std::pow(std::abs(x), n);
      return s == 0 ? 1.0 : s;
    };
    for (cplx cj : chain.c)
      for (int k = 0; k < N; ++k) {
        const cplx x0 = ctx.omega_pow(k) / cj;
        rep.root_values = std::max(rep.root_values, std::abs(rep.poly(x0)) / magnitude(x0));
      }
    rep.offgrid = std::abs(rep.poly(xo) - direct(i)) / magnitude(xo);
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace hofbethe
