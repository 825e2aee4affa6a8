// RLL residuals for random site parameters.

#include <cstdio>

#include "hofbethe/hofbethe.hpp"

using namespace hofbethe;

int main() {
  Rng rng(7);
  for (int N : {3, 5, 7}) {
    const Context ctx(N, 1);
    double worst = 0;
    for (int i = 0; i < 20; ++i) worst = std::max(worst, rll_residual(rng.site(), rng.unit(), rng.unit(), ctx));
    std::printf("N=%d  max residual %.2e\n", N, worst);
  }
}
