#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hofbethe/baxter.hpp"
#include "hofbethe/curves.hpp"
#include "hofbethe/transfer.hpp"

namespace hofbethe {

/// Seeded generator for generic parameters. Uniform doubles come from the top
/// 53 bits of mt19937_64, so draws are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  cplx unit() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }
  cplx on_circle(double r) { return r * unit(); }

  SiteParams site() { return {unit(), unit(), unit(), unit()}; }
  ChainParams chain(int L) {
    std::vector<SiteParams> s;
    for (int j = 0; j < L; ++j) s.push_back(site());
    return ChainParams(std::move(s));
  }
  DegenerateChain degenerate(int L) {
    std::vector<cplx> c;
    for (int j = 0; j < L; ++j) c.push_back(unit());
    return DegenerateChain(std::move(c));
  }
  HofstadterChain3 hofstadter() { return {site(), site()}; }

  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

inline constexpr double pole_margin = 1e-4;
inline constexpr int max_redraws = 5;

/// Point on |x| = r at distance >= pole_margin from every q^k / c_j, the pole
/// locus of Delta_+, of the Baxter components and of f^e, f^o.
inline cplx sample_generic_x(Rng& rng, double r, const DegenerateChain& chain, const Context& ctx) {
  for (;;) {
    const cplx x = rng.on_circle(r);
    bool ok = true;
    for (cplx cj : chain.c)
      for (int k = 0; k < ctx.N() && ok; ++k) ok = std::abs(x - ctx.q_pow(k) / cj) >= pole_margin;
    if (ok) return x;
  }
}

/// Runs f(rng) and redraws on genericity_failure, at most max_redraws times.
template <class F>
auto with_redraws(Rng& rng, F&& f) {
  for (int attempt = 0;; ++attempt) {
    try {
      return f(rng);
    } catch (const genericity_failure&) {
      if (attempt >= max_redraws) throw;
    }
  }
}

}  // namespace hofbethe
