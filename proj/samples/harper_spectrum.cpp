// Harper spectrum at flux P/N, printed one energy per line.

#include <cstdio>
#include <cstdlib>

#include "hofbethe/hofbethe.hpp"

int main(int argc, char** argv) {
  const int N = argc > 1 ? std::atoi(argv[1]) : 7;
  const int P = argc > 2 ? std::atoi(argv[2]) : 1;
  try {
    for (const auto& r : hofbethe::butterfly_rows({N}, {}))
      if (r.P == P) std::printf("%2d  % .12f\n", r.index, r.energy.real());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
