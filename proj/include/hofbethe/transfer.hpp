#pragma once

// L-operators, the six-vertex R-matrix, transfer matrices and the Heisenberg
// algebra structure of the L = 3 chain.

#include <array>
#include <vector>

#include "hofbethe/weyl.hpp"

namespace hofbethe {

/// Projective representative h = [a:b:c:d] of one site.
struct SiteParams {
  cplx a, b, c, d;

  SiteParams() = default;
  SiteParams(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {
    if (a == cplx{} && b == cplx{} && c == cplx{} && d == cplx{})
      throw domain_error("site parameters [0:0:0:0] are not a projective point");
  }
};

struct ChainParams {
  std::vector<SiteParams> sites;

  ChainParams() = default;
  explicit ChainParams(std::vector<SiteParams> s) : sites(std::move(s)) {
    if (sites.empty()) throw domain_error("chain must have at least one site");
  }
  int L() const { return static_cast<int>(sites.size()); }
};

/// 2x2 matrix over the auxiliary space with operator entries; (i, j) is
/// zero-based.
struct BlockOperator2x2 {
  std::array<Operator, 4> blocks;

  Operator& operator()(int i, int j) { return blocks[static_cast<std::size_t>(2 * i + j)]; }
  const Operator& operator()(int i, int j) const {
    return blocks[static_cast<std::size_t>(2 * i + j)];
  }
  Operator trace() const { return (*this)(0, 0) + (*this)(1, 1); }
};

/// Auxiliary-space matrix product, quantum spaces tensored left to right.
inline BlockOperator2x2 chain_product(std::span<const BlockOperator2x2> factors) {
  BlockOperator2x2 acc = factors.front();
  for (std::size_t j = 1; j < factors.size(); ++j) {
    BlockOperator2x2 next;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        next(r, c) = kron({acc(r, 0), factors[j](0, c)}) + kron({acc(r, 1), factors[j](1, c)});
    acc = std::move(next);
  }
  return acc;
}

/// L_h(x) = (aY, xbX; xcZ, d).
inline BlockOperator2x2 local_L(const SiteParams& h, cplx x, const Context& ctx) {
  const auto w = weyl_matrices(ctx);
  const Operator I = Operator::identity(ctx.N(), 1);
  return {{h.a * w.Y, (x * h.b) * w.X, (x * h.c) * w.Z, h.d * I}};
}

/// Six-vertex R-matrix on aux tensor aux, basis order (11, 12, 21, 22).
inline Eigen::Matrix4cd r_matrix(cplx x, const Context& ctx) {
  if (x == cplx{}) throw pole_error("R(x) has a pole at x = 0");
  const cplx w = ctx.omega();
  const cplx outer = x * w - 1.0 / x;
  Eigen::Matrix4cd R = Eigen::Matrix4cd::Zero();
  R(0, 0) = outer;
  R(1, 1) = w * (x - 1.0 / x);
  R(1, 2) = w - 1.0;
  R(2, 1) = w - 1.0;
  R(2, 2) = x - 1.0 / x;
  R(3, 3) = outer;
  return R;
}

namespace detail {
// Embed an L-operator on (aux1 or aux2) tensor quantum into
// aux1 tensor aux2 tensor quantum.
inline Matrix embed_aux(const BlockOperator2x2& B, int slot, int N) {
  Matrix out = Matrix::Zero(4 * N, 4 * N);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const int row = slot == 0 ? 2 * i + k : 2 * k + i;
        const int col = slot == 0 ? 2 * j + k : 2 * k + j;
        out.block(row * N, col * N, N, N) = B(i, j).m;
      }
  return out;
}
}  // namespace detail

/// Max-norm of R(x/x')(L(x) x 1)(1 x L(x')) - (1 x L(x'))(L(x) x 1)R(x/x').
inline double rll_residual(const SiteParams& h, cplx x, cplx xp, const Context& ctx) {
  if (x == cplx{} || xp == cplx{}) throw pole_error("rll_residual: x and x' must be nonzero");
  const int N = ctx.N();
  const Matrix R = Eigen::kroneckerProduct(Matrix(r_matrix(x / xp, ctx)), Matrix::Identity(N, N));
  const Matrix L1 = detail::embed_aux(local_L(h, x, ctx), 0, N);
  const Matrix L2 = detail::embed_aux(local_L(h, xp, ctx), 1, N);
  return max_abs(R * L1 * L2 - L2 * L1 * R);
}

/// F_h(x, xi, xi') = xi' a Y - x b X + xi' xi x c Z - xi d.
inline Operator f_op(const SiteParams& h, cplx x, cplx xi, cplx xip, const Context& ctx) {
  const auto w = weyl_matrices(ctx);
  const Operator I = Operator::identity(ctx.N(), 1);
  return (xip * h.a) * w.Y + (-x * h.b) * w.X + (xip * xi * x * h.c) * w.Z + (-xi * h.d) * I;
}

/// Gauge matrix A(xi) = (1, xi - 1; 1, xi), determinant 1.
inline Eigen::Matrix2cd gauge_matrix(cplx xi) {
  Eigen::Matrix2cd A;
  A << 1.0, xi - 1.0, 1.0, xi;
  return A;
}

/// A(xi) L_h(x) A(xi')^-1.
inline BlockOperator2x2 gauge_L(const SiteParams& h, cplx x, cplx xi, cplx xip,
                                const Context& ctx) {
  const Eigen::Matrix2cd A = gauge_matrix(xi);
  const Eigen::Matrix2cd B = gauge_matrix(xip).inverse();
  const BlockOperator2x2 Lh = local_L(h, x, ctx);
  BlockOperator2x2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      Operator acc = Operator::zero(ctx.N(), 1);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) acc = acc + (A(r, i) * B(j, c)) * Lh(i, j);
      out(r, c) = acc;
    }
  return out;
}

/// Ordered product of gauge-transformed L-operators with xi_L := xi_0.
inline BlockOperator2x2 gauge_chain(const ChainParams& chain, cplx x, std::span<const cplx> xi,
                                    const Context& ctx) {
  const int L = chain.L();
  if (static_cast<int>(xi.size()) != L) throw arity_error("gauge_chain: need one xi per site");
  std::vector<BlockOperator2x2> f;
  f.reserve(static_cast<std::size_t>(L));
  for (int j = 0; j < L; ++j)
    f.push_back(gauge_L(chain.sites[static_cast<std::size_t>(j)], x,
                        xi[static_cast<std::size_t>(j)],
                        xi[static_cast<std::size_t>((j + 1) % L)], ctx));
  return chain_product(f);
}

/// T(x) = tr_aux(L_{h_0}(x) ... L_{h_{L-1}}(x)).
inline Operator transfer_T(const ChainParams& chain, cplx x, const Context& ctx) {
  std::vector<BlockOperator2x2> f;
  f.reserve(chain.sites.size());
  for (const auto& h : chain.sites) f.push_back(local_L(h, x, ctx));
  return chain_product(f).trace();
}

/// Even coefficients T_0, T_2, ..., T_{2[L/2]} of T(x).
struct TransferPencil {
  std::vector<Operator> coeffs;

  Operator evaluate(cplx x) const {
    Operator acc = Operator::zero(coeffs.front().N, coeffs.front().L);
    cplx pw = 1.0;
    for (const auto& c : coeffs) {
      acc = acc + pw * c;
      pw *= x * x;
    }
    return acc;
  }
  const Operator& operator[](int k) const { return coeffs[static_cast<std::size_t>(k)]; }
};

/// Recovers the pencil by interpolating T at x^2 = 1, 2, ..., [L/2] + 1.
inline TransferPencil transfer_pencil(const ChainParams& chain, const Context& ctx) {
  const int K = chain.L() / 2 + 1;
  Eigen::MatrixXd V(K, K);
  std::vector<Operator> samples;
  for (int i = 0; i < K; ++i) {
    const double t = i + 1.0;
    for (int k = 0; k < K; ++k) V(i, k) = std::pow(t, k);
    samples.push_back(transfer_T(chain, std::sqrt(t), ctx));
  }
  const Eigen::MatrixXd Vinv = V.inverse();
  TransferPencil pencil;
  for (int k = 0; k < K; ++k) {
    Operator acc = Operator::zero(ctx.N(), chain.L());
    for (int i = 0; i < K; ++i) acc = acc + cplx(Vinv(k, i)) * samples[static_cast<std::size_t>(i)];
    pencil.coeffs.push_back(std::move(acc));
  }
  return pencil;
}

/// Closed form of the x^2 coefficient for L = 3.
inline Operator t2_formula_L3(const ChainParams& chain, const Context& ctx) {
  if (chain.L() != 3) throw arity_error("t2_formula_L3 needs L = 3");
  const auto& h = chain.sites;
  const auto w = weyl_matrices(ctx);
  const Operator I = Operator::identity(ctx.N(), 1);
  const auto &X = w.X, &Y = w.Y, &Z = w.Z;
  return (h[0].b * h[1].c * h[2].a) * kron({X, Z, Y}) +
         (h[0].a * h[1].b * h[2].c) * kron({Y, X, Z}) +
         (h[0].c * h[1].a * h[2].b) * kron({Z, Y, X}) +
         (h[0].c * h[1].b * h[2].d) * kron({Z, X, I}) +
         (h[0].d * h[1].c * h[2].b) * kron({I, Z, X}) +
         (h[0].b * h[1].d * h[2].c) * kron({X, I, Z});
}

inline double commutator_residual(const ChainParams& chain, cplx x, cplx xp, const Context& ctx) {
  const Operator A = transfer_T(chain, x, ctx);
  const Operator B = transfer_T(chain, xp, ctx);
  return max_abs(A * B - B * A);
}

/// D^(k/2) under D^(1/2) := D^(M+1); valid because D^N = I.
inline Operator d_half_power(const Operator& D, long k, const Context& ctx) {
  return power(D, static_cast<int>(mod(k * (ctx.M() + 1), ctx.N())));
}

/// Generators of the L = 3 Heisenberg algebra:
/// U = D^(-1/2) Z x X x I, V = D^(-1/2) X x I x Z.
struct HeisenbergUV {
  Operator U;
  Operator V;
  Operator D;
};

inline HeisenbergUV heisenberg_UV(const Context& ctx) {
  const auto w = weyl_matrices(ctx);
  const Operator I = Operator::identity(ctx.N(), 1);
  Operator D = global_shift_D(ctx, 3);
  const Operator Dmh = d_half_power(D, -1, ctx);
  return {Dmh * kron({w.Z, w.X, I}), Dmh * kron({w.X, I, w.Z}), std::move(D)};
}

/// W = q D^(-1/2) V^-1 U^-1, the third generator in which q D^(-1/2) T_2 of
/// the rational chain takes the Faddeev-Kashaev form with unit phases.
inline Operator heisenberg_W(const HeisenbergUV& g, const Context& ctx) {
  const Operator Vinv{g.V.N, g.V.L, g.V.m.adjoint()};
  const Operator Uinv{g.U.N, g.U.L, g.U.m.adjoint()};
  return ctx.q() * (d_half_power(g.D, -1, ctx) * Vinv * Uinv);
}

struct FKParams {
  cplx mu = 1.0, nu = 1.0, rho = 0.0;
  cplx alpha = 1.0, beta = 1.0, gamma = 1.0;
};

/// mu(aU + U^-1/a) + nu(bV + V^-1/b) + rho(gW + W^-1/g) for given generators.
inline Operator fk_hamiltonian(const Operator& U, const Operator& V, const Operator& W,
                               const FKParams& p) {
  if (p.alpha == cplx{} || p.beta == cplx{} || p.gamma == cplx{})
    throw domain_error("fk_hamiltonian: alpha, beta, gamma must be nonzero");
  auto sym = [](const Operator& A, cplx s) {
    return Operator{A.N, A.L, s * A.m + (1.0 / s) * A.m.inverse()};
  };
  return p.mu * sym(U, p.alpha) + p.nu * sym(V, p.beta) + p.rho * sym(W, p.gamma);
}

/// H_FK on C^N in the irreducible representation U = Z, V = X, W = (UV)^-1.
inline Operator hofstadter_hamiltonian(const Context& ctx, const FKParams& p) {
  const auto w = weyl_matrices(ctx);
  const Operator W{ctx.N(), 1, (w.Z.m * w.X.m).adjoint()};
  return fk_hamiltonian(w.Z, w.X, W, p);
}

}  // namespace hofbethe
