#include <gtest/gtest.h>

#include "hofbethe/bethe.hpp"
#include "hofbethe/random.hpp"

using namespace hofbethe;

namespace {

std::vector<cplx> c3() { return {cplx(0.8, 0.3), cplx(-0.5, 0.9), cplx(1.1, -0.2)}; }

std::vector<cplx> distinct(std::span<const cplx> v) {
  std::vector<cplx> out;
  for (const auto& c : cluster_values(v, 1e-6)) out.push_back(c.value);
  return out;
}

}  // namespace

TEST(Polynomial, Basics) {
  const ComplexPolynomial p({1.0, 0.0, 2.0, 0.0});
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p[5], cplx{});
  EXPECT_TRUE(p.is_even());
  EXPECT_EQ(p(cplx(0, 1)), cplx(-1.0));
  EXPECT_TRUE(ComplexPolynomial({0.0, 0.0}).is_zero());
  EXPECT_EQ(ComplexPolynomial().degree(), -1);
  const ComplexPolynomial prod = ComplexPolynomial({1.0, 1.0}) * ComplexPolynomial({-1.0, 1.0});
  EXPECT_EQ(prod.degree(), 2);
  EXPECT_EQ(prod[0], cplx(-1.0));
  EXPECT_EQ(prod[1], cplx(0.0));
  EXPECT_EQ(prod[2], cplx(1.0));
  const ComplexPolynomial s = p.scaled_argument(2.0);
  EXPECT_EQ(s[2], cplx(8.0));
}

TEST(Polynomial, Roots) {
  const cplx r[] = {cplx(0.5, 1.0), cplx(-2.0, 0.1), cplx(0.3, -0.7)};
  ComplexPolynomial p = ComplexPolynomial::constant(1.0);
  for (cplx z : r) p = p * ComplexPolynomial({-z, 1.0});
  const auto found = p.roots();
  ASSERT_EQ(found.size(), 3u);
  EXPECT_TRUE(match_multisets(found, r, 1e-12).ok);
}

TEST(Polynomial, LinearProduct) {
  const std::vector<cplx> c{2.0, 3.0};
  const ComplexPolynomial p = linear_product(c, -1.0);
  EXPECT_EQ(p[0], cplx(1.0));
  EXPECT_EQ(p[1], cplx(-5.0));
  EXPECT_EQ(p[2], cplx(6.0));
}

TEST(Rbeq, TrivialAndNegativeControl) {
  const Context ctx(5, 1);
  const DegenerateChain ch(c3());
  EXPECT_EQ(rbeq_residual(ComplexPolynomial(), ComplexPolynomial::constant(2.0), 0, ch, ctx), 0.0);
  Rng rng(61);
  std::vector<cplx> qc{1.0}, lc;
  for (int i = 0; i < 5; ++i) qc.push_back(rng.unit());
  lc = {rng.unit(), 0.0, rng.unit()};
  EXPECT_GT(rbeq_residual(ComplexPolynomial(qc), ComplexPolynomial(lc), 1, ch, ctx), 1e-3);
}

TEST(SolveL1, TopSectorIsConstant) {
  for (int N : {3, 5, 7}) {
    const Context ctx(N, 1);
    const BetheSolution s = solve_L1(ctx.M(), cplx(0.7, 0.4), ctx);
    EXPECT_EQ(s.Q.degree(), 0);
    EXPECT_EQ(s.Q[0], cplx(1.0));
    EXPECT_NEAR(std::abs(s.Lambda_poly[0] - (ctx.q_pow(ctx.M()) + ctx.q_pow(-ctx.M()))), 0, 1e-15);
    EXPECT_TRUE(s.roots.empty());
  }
}

TEST(SolveL1, N3BottomSector) {
  const Context ctx(3, 1);
  const cplx c0(0.7, 0.4);
  const BetheSolution s = solve_L1(0, c0, ctx);
  const cplx qi = ctx.q_pow(-1);
  ASSERT_EQ(s.Q.degree(), 1);
  EXPECT_NEAR(std::abs(s.Q[1] - (1.0 - qi) / (2.0 - qi - ctx.q()) * c0), 0, 1e-15);
  EXPECT_LT(s.rbeq_residual, 1e-10);
}

TEST(SolveL1, AllSectors) {
  for (int N : {3, 5, 7, 9}) {
    const Context ctx(N, 1);
    Rng rng(67 + N);
    const cplx c0 = rng.unit();
    for (int m = 0; m <= ctx.M(); ++m) {
      const BetheSolution s = solve_L1(m, c0, ctx);
      EXPECT_EQ(s.Q.degree(), ctx.M() - m);
      EXPECT_LT(s.rbeq_residual, 1e-10) << "N=" << N << " m=" << m;
      for (double a : s.ansatz_residuals) EXPECT_LT(a, 1e-6);
    }
  }
  EXPECT_THROW(solve_L1(2, 1.0, Context(3, 1)), domain_error);
  EXPECT_THROW(solve_L1(0, 0.0, Context(3, 1)), domain_error);
}

TEST(SolveL2, DegreesAndResiduals) {
  for (int N : {3, 5}) {
    const Context ctx(N, 1);
    Rng rng(71 + N);
    const DegenerateChain ch = rng.degenerate(2);
    for (int m = 0; m <= ctx.M(); ++m)
      for (int mp = 0; mp <= ctx.M(); ++mp) {
        const BetheSolution s = solve_L2(m, mp, ch.c[0], ch.c[1], ctx);
        EXPECT_EQ(s.Q.degree(), ctx.M() - m + mp);
        EXPECT_EQ(s.Q[0], cplx(1.0));
        EXPECT_LT(s.rbeq_residual, 1e-9) << "N=" << N << " m=" << m << " m'=" << mp;
        EXPECT_TRUE(s.Lambda_poly.is_even());
      }
  }
}

TEST(SolveL2, MatchesOracle) {
  for (int N : {3, 5}) {
    const Context ctx(N, 1);
    Rng rng(73 + N);
    const DegenerateChain ch = rng.degenerate(2);
    const TransferPencil pencil = transfer_pencil(ch.to_chain(ctx), ctx);
    for (int m = 0; m <= ctx.M(); ++m) {
      std::vector<cplx> lams;
      for (int mp = 0; mp <= ctx.M(); ++mp) lams.push_back(solve_L2(m, mp, ch.c[0], ch.c[1], ctx).lambda);
      for (int sign : {+1, -1}) {
        std::vector<cplx> oracle;
        for (cplx v : distinct(eigenvalues(sector_restriction(pencil[1], sign * 2L * m, ctx))))
          oracle.push_back(ctx.q_pow(-sign * m) * v);
        const MatchResult r = match_multisets(distinct(lams), oracle, 1e-8);
        EXPECT_TRUE(r.ok) << "N=" << N << " m=" << m << " sign=" << sign << " err=" << r.max_error;
      }
    }
  }
}

TEST(MatrixA, N3Structure) {
  const Context ctx(3, 1);
  const auto c = c3();
  const Matrix A = matrix_A(1, c, ctx);
  ASSERT_EQ(A.rows(), 3);
  EXPECT_EQ(A(0, 2), cplx{});
  const cplx s1 = c[0] + c[1] + c[2], s2 = c[0] * c[1] + c[1] * c[2] + c[2] * c[0], s3 = c[0] * c[1] * c[2];
  auto h = [&](long k2) { return ctx.q_half_pow(k2); };
  auto delta = [&](long k) { return (h(2 * k - 1) + h(-2 * k - 3)) * s2; };
  auto u = [&](long k) { return (h(2 * k - 3) - h(-2 * k - 3)) * s3; };
  auto v = [&](long k) { return (h(2 * k + 1) - h(-2 * k - 3)) * s1; };
  auto w = [&](long k) { return h(2 * k + 3) + h(-2 * k - 3) - ctx.q_pow(1) - ctx.q_pow(-1); };
  Matrix expect(3, 3);
  expect << delta(2), u(2), 0.0, v(1), delta(1), u(1), w(0), v(0), delta(0);
  EXPECT_LT(max_abs(A - expect), 1e-15);
  EXPECT_NEAR(std::abs(A.trace() - (delta(0) + delta(1) + delta(2))), 0, 1e-14);
}

TEST(MatrixA, BandAndCoincidenceZeros) {
  for (int N : {5, 7, 9}) {
    const Context ctx(N, 1);
    for (int m = 0; m <= ctx.M(); ++m) {
      const Matrix A = matrix_A(m, c3(), ctx);
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          if (j > i + 1 || j < i - 2) {
            EXPECT_EQ(A(i, j), cplx{});
          }
      for (int i = 2; i < N; ++i) {
        const int k = N - 1 - i;
        const bool coincide = mod(2 * k + 3 - 2 * m, N) == 0 || mod(2 * k + 3 + 2 * m, N) == 0;
        EXPECT_EQ(std::abs(A(i, i - 2)) < 1e-12, coincide) << "N=" << N << " m=" << m << " k=" << k;
      }
    }
  }
  EXPECT_THROW(matrix_A(0, std::vector<cplx>{1.0, 2.0}, Context(3, 1)), arity_error);
}

TEST(SolveL3, N3MiddleSector) {
  const Context ctx(3, 1);
  const auto sols = solve_L3(1, c3(), ctx);
  ASSERT_EQ(sols.size(), 3u);
  for (const auto& s : sols) {
    EXPECT_EQ(s.Q.degree(), 2);
    EXPECT_EQ(s.Q[0], cplx(1.0));
    EXPECT_LT(s.rbeq_residual, 1e-8);
    EXPECT_NEAR(std::abs(s.Lambda_poly(0.0) - (ctx.q() + ctx.q_pow(-1))), 0, 1e-15);
    ASSERT_EQ(s.ansatz_residuals.size(), 2u);
    for (double a : s.ansatz_residuals) EXPECT_LT(a, 1e-6);
  }
}

TEST(SolveL3, DegreesAndResiduals) {
  for (int N : {3, 5, 7}) {
    const Context ctx(N, 1);
    Rng rng(79 + N);
    const DegenerateChain ch = rng.degenerate(3);
    for (int m = 0; m <= ctx.M(); ++m) {
      const auto sols = solve_L3(m, ch.c, ctx);
      ASSERT_EQ(sols.size(), static_cast<std::size_t>(N));
      for (const auto& s : sols) {
        EXPECT_EQ(s.Q.degree(), 3 * ctx.M() - m);
        EXPECT_LT(s.rbeq_residual, 1e-8) << "N=" << N << " m=" << m;
        for (double a : s.ansatz_residuals) EXPECT_LT(a, 1e-6) << "N=" << N << " m=" << m;
      }
    }
  }
}

TEST(SolveL3, OracleWithMultiplicityN) {
  for (int N : {3, 5}) {
    const Context ctx(N, 1);
    Rng rng(83 + N);
    const DegenerateChain ch = rng.degenerate(3);
    const TransferPencil pencil = transfer_pencil(ch.to_chain(ctx), ctx);
    for (int m = 0; m <= ctx.M(); ++m) {
      std::vector<cplx> lams;
      for (const auto& s : solve_L3(m, ch.c, ctx)) lams.push_back(s.lambda);
      const auto spec = eigenvalues(sector_restriction(pencil[1], 2L * m, ctx));
      ASSERT_EQ(spec.size(), static_cast<std::size_t>(N * N));
      std::vector<cplx> oracle;
      for (const auto& c : cluster_values(spec, 1e-6)) {
        EXPECT_EQ(c.multiplicity, N);
        oracle.push_back(ctx.q_pow(-m) * c.value);
      }
      EXPECT_TRUE(match_multisets(lams, oracle, 1e-8).ok) << "N=" << N << " m=" << m;
    }
  }
}

TEST(Ansatz, TopSectorN3HasTwoRoots) {
  const Context ctx(3, 1);
  for (const auto& s : solve_L3(1, c3(), ctx)) EXPECT_EQ(s.ansatz_residuals.size(), 2u);
}

TEST(Ansatz, PerturbedRootFails) {
  const Context ctx(5, 1);
  const auto c = c3();
  const auto sols = solve_L3(1, c, ctx);
  std::vector<cplx> z = sols[0].roots;
  z[0] += 1e-2;
  double worst = 0;
  for (double a : bethe_ansatz_residuals(z, 1, c, ctx)) worst = std::max(worst, a);
  EXPECT_GT(worst, 1e-3);
}

TEST(Ansatz, ThreeSitePrefactor) {
  const Context ctx(7, 1);
  const int m = 2, d = 3 * ctx.M() - m;
  EXPECT_NEAR(std::abs(ctx.q_pow(2 * m + 3 + d) - ctx.q_half_pow(2 * m + 3)), 0, 1e-14);
}

TEST(LambdaM, MatchesEigenvalues) {
  for (int N : {3, 5, 7}) {
    const Context ctx(N, 1);
    Rng rng(89 + N);
    const DegenerateChain ch = rng.degenerate(3);
    for (const auto& s : solve_L3(ctx.M(), ch.c, ctx)) {
      ASSERT_EQ(s.roots.size(), static_cast<std::size_t>(2 * ctx.M()));
      const cplx lam = lambda_M_from_roots(s.roots, ch.c, ctx);
      EXPECT_LT(std::abs(lam - s.lambda), 1e-8 * std::max(1.0, std::abs(s.lambda))) << "N=" << N;
    }
  }
}

// Coefficient matching forces s_1 = -(c_0 + c_1 + c_2).
TEST(LambdaM, PlainSumReadingDisagrees) {
  const Context ctx(5, 1);
  const auto c = c3();
  double worst = 0;
  for (const auto& s : solve_L3(ctx.M(), c, ctx))
    worst = std::max(worst, std::abs(lambda_M_from_roots(s.roots, c, ctx, S1Reading::plain_sum) - s.lambda));
  EXPECT_GT(worst, 1e-3);
}

TEST(LambdaM, ZeroRootsAndArity) {
  const Context ctx(5, 1);
  const auto c = c3();
  const std::vector<cplx> z(4, 0.0);
  const cplx s2 = c[0] * c[1] + c[1] * c[2] + c[2] * c[0];
  EXPECT_NEAR(std::abs(lambda_M_from_roots(z, c, ctx) - (ctx.q_half_pow(-1) + ctx.q_half_pow(-3)) * s2), 0, 1e-14);
  EXPECT_THROW(lambda_M_from_roots(std::vector<cplx>(3, 0.0), c, ctx), arity_error);
  EXPECT_THROW(lambda_M_from_roots(z, std::vector<cplx>{1.0}, ctx), arity_error);
}

TEST(Oracle, SectorsPartitionSpectrum) {
  const Context ctx(3, 1);
  Rng rng(97);
  const ChainParams chain = rng.chain(3);
  std::vector<cplx> all;
  for (int l = 0; l < 3; ++l) {
    const auto s = oracle_spectrum(chain, l, ctx);
    EXPECT_EQ(s.size(), 9u);
    all.insert(all.end(), s.begin(), s.end());
  }
  const auto full = eigenvalues(transfer_pencil(chain, ctx)[1].m);
  EXPECT_TRUE(match_multisets(all, full, 1e-8).ok);
  EXPECT_THROW(oracle_spectrum(rng.chain(1), 0, ctx), arity_error);
}

TEST(Oracle, LeftEigenvectors) {
  const Context ctx(3, 1);
  Rng rng(101);
  const Operator T2 = transfer_pencil(rng.chain(3), ctx)[1];
  for (const auto& p : sector_left_eigenpairs(T2, 1, ctx)) {
    EXPECT_LT((p.phi * T2.m - p.value * p.phi).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((p.phi * global_shift_D(ctx, 3).m - ctx.q() * p.phi).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Matching, MultisetsAndClusters) {
  const std::vector<cplx> a{1.0, 2.0, 2.0}, b{2.0, 1.0, 2.0 + 1e-9}, c{1.0, 2.0};
  EXPECT_TRUE(match_multisets(a, b, 1e-8).ok);
  EXPECT_FALSE(match_multisets(a, c, 1e-8).ok);
  const auto cl = cluster_values(b, 1e-6);
  ASSERT_EQ(cl.size(), 2u);
  EXPECT_EQ(cl[0].multiplicity + cl[1].multiplicity, 3);
}
