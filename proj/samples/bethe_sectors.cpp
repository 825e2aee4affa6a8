// Two-site Bethe solutions for every (m, m') at N = 5.

#include <cstdio>

#include "hofbethe/hofbethe.hpp"

using namespace hofbethe;

int main() {
  const Context ctx(5, 1);
  const cplx c0(0.8, 0.3), c1(-0.5, 0.9);
  for (int m = 0; m <= ctx.M(); ++m)
    for (int mp = 0; mp <= ctx.M(); ++mp) {
      const BetheSolution s = solve_L2(m, mp, c0, c1, ctx);
      std::printf("m=%d m'=%d  lambda=% .10f%+.10fi  deg Q=%d  residual=%.2e\n", m, mp, s.lambda.real(),
                  s.lambda.imag(), s.Q.degree(), s.rbeq_residual);
    }
}
