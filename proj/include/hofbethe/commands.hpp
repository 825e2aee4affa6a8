#pragma once

// Command implementations behind the hofbethe CLI: configuration, the
// verification suites, solution export, butterfly data and curve diagnostics.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hofbethe/baxter.hpp"
#include "hofbethe/bethe.hpp"
#include "hofbethe/curves.hpp"
#include "hofbethe/random.hpp"
#include "hofbethe/transfer.hpp"

namespace hofbethe {

using json = nlohmann::json;

inline constexpr const char* tool_name = "hofbethe";
inline constexpr const char* tool_version = "0.1.0";

/// Named tolerance set. "exact" for operator identities, "vector" for Baxter
/// vector relations, "eigen" for eigenvalue comparisons and
/// reconstructed polynomials, "ansatz" for root-level residuals.
struct Tolerances {
  double exact = 1e-10;
  double vector = 1e-9;
  double eigen = 1e-8;
  double ansatz = 1e-6;

  double& at(const std::string& name) {
    if (name == "exact") return exact;
    if (name == "vector") return vector;
    if (name == "eigen") return eigen;
    if (name == "ansatz") return ansatz;
    throw config_error("unknown tolerance '" + name + "' (expected exact, vector, eigen, ansatz)");
  }

  /// Applies "name=value".
  void apply(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw config_error("tolerance must be name=value, got '" + spec + "'");
    double v = 0;
    try {
      std::size_t used = 0;
      v = std::stod(spec.substr(eq + 1), &used);
      if (used != spec.size() - eq - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw config_error("tolerance value is not a number: '" + spec + "'");
    }
    if (!(v >= 0)) throw config_error("tolerance must be non-negative: '" + spec + "'");
    at(spec.substr(0, eq)) = v;
  }

  json to_json() const {
    return {{"exact", exact}, {"vector", vector}, {"eigen", eigen}, {"ansatz", ansatz}};
  }
};

enum class Format { json, csv };

struct RunConfig {
  std::vector<int> N_list{3};
  int P = 1;
  std::uint64_t seed = 20261014;
  Tolerances tol;
  std::string output_path;
  Format format = Format::json;
};

/// Rejects bad N values and, when require_units is set, P not coprime to N.
inline void validate_config(const RunConfig& cfg, bool require_units = true) {
  if (cfg.N_list.empty()) throw config_error("at least one N is required");
  for (int N : cfg.N_list) {
    if (N < 3 || N % 2 == 0) throw config_error("N must be odd and >= 3, got " + std::to_string(N));
    if (require_units && std::gcd(cfg.P, N) != 1)
      throw config_error("gcd(P, N) must be 1 for N=" + std::to_string(N) +
                         ", P=" + std::to_string(cfg.P));
  }
  for (double t : {cfg.tol.exact, cfg.tol.vector, cfg.tol.eigen, cfg.tol.ansatz})
    if (!(t >= 0)) throw config_error("tolerances must be non-negative");
}

/// Independent stream per (seed, N, purpose), splitmix64 finalised.
inline std::uint64_t derive_seed(std::uint64_t seed, int N, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(N) * 1000003ULL + tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json to_json(std::span<const cplx> v) {
  json a = json::array();
  for (cplx z : v) a.push_back(to_json(z));
  return a;
}

inline json to_json(const ComplexPolynomial& p) { return to_json(p.coeffs()); }

inline json to_json(const SiteParams& h) {
  return {{"a", to_json(h.a)}, {"b", to_json(h.b)}, {"c", to_json(h.c)}, {"d", to_json(h.d)}};
}

struct CommandResult {
  int exit_code = 0;
  json report;
  std::string csv;  ///< butterfly rows when the CSV format is requested
};

namespace detail {
inline json report_header(const std::string& command, const RunConfig& cfg) {
  return {{"tool", tool_name},       {"version", tool_version}, {"command", command},
          {"N_list", cfg.N_list},    {"P", cfg.P},              {"seed", cfg.seed},
          {"tolerances", cfg.tol.to_json()}};
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

struct Suite {
  std::string name;
  double tolerance;
  double worst = 0;
  int samples = 0;

  void add(double r) {
    worst = std::max(worst, r);
    ++samples;
  }
  bool pass() const { return worst <= tolerance; }
  json to_json() const {
    return {{"name", name}, {"max_residual", worst}, {"tolerance", tolerance},
            {"samples", samples}, {"pass", pass()}};
  }
};
}  // namespace detail

/// Required fields: tool, version, command, N_list, P, seed, tolerances,
/// wall_time_s, runs[].N. Returns the list of problems (empty when valid).
inline std::vector<std::string> validate_report(const json& r) {
  std::vector<std::string> bad;
  auto need = [&](const char* key, bool ok) {
    if (!ok) bad.push_back(std::string("missing or malformed '") + key + "'");
  };
  need("tool", r.contains("tool") && r["tool"].is_string());
  need("version", r.contains("version") && r["version"].is_string());
  need("command", r.contains("command") && r["command"].is_string());
  need("N_list", r.contains("N_list") && r["N_list"].is_array());
  need("P", r.contains("P") && r["P"].is_number_integer());
  need("seed", r.contains("seed") && r["seed"].is_number_unsigned());
  need("wall_time_s", r.contains("wall_time_s") && r["wall_time_s"].is_number());
  static constexpr const char* tol_keys[] = {"exact", "vector", "eigen", "ansatz"};
  const bool tol_ok = r.contains("tolerances") && r["tolerances"].is_object() &&
                      std::all_of(std::begin(tol_keys), std::end(tol_keys), [&](const char* k) {
                        return r["tolerances"].contains(k) && r["tolerances"][k].is_number();
                      });
  need("tolerances", tol_ok);
  const bool runs_ok = r.contains("runs") && r["runs"].is_array() &&
                       std::all_of(r["runs"].begin(), r["runs"].end(), [](const json& run) {
                         return run.is_object() && run.contains("N") && run["N"].is_number_integer();
                       });
  need("runs", runs_ok);
  return bad;
}

/// Copy of a report without timing fields, for determinism comparisons.
inline json strip_timing(json r) {
  if (r.is_object()) {
    r.erase("wall_time_s");
    for (auto& [k, v] : r.items()) v = strip_timing(v);
  } else if (r.is_array()) {
    for (auto& v : r) v = strip_timing(v);
  }
  return r;
}

// ---------------------------------------------------------------------------
// verify

inline json verify_one(int N, const RunConfig& cfg, std::vector<std::string>& failing) {
  const Context ctx(N, cfg.P);
  const Tolerances& tol = cfg.tol;
  Rng rng(derive_seed(cfg.seed, N, 1));
  std::vector<detail::Suite> suites;

  detail::Suite rll{"rll", tol.exact};
  for (int i = 0; i < 100; ++i) {
    const SiteParams h = rng.site();
    const cplx x = rng.unit(), xp = rng.unit();
    rll.add(rll_residual(h, x, xp, ctx));
  }
  suites.push_back(rll);

  detail::Suite comm{"commutator", tol.exact};
  for (int L = 1; L <= 3; ++L)
    for (int i = 0; i < 20; ++i) {
      const ChainParams chain = rng.chain(L);
      const cplx x = rng.unit(), xp = rng.unit();
      comm.add(commutator_residual(chain, x, xp, ctx));
    }
  suites.push_back(comm);

  const DegenerateChain dc = rng.degenerate(3);
  detail::Suite action{"baxter_action", tol.vector}, gauge{"gauge_null", tol.vector};
  detail::Suite thm_i{"theorem1_i", tol.vector}, thm_ii{"theorem1_ii", tol.vector};
  for (int i = 0; i < 10; ++i) {
    const cplx x = sample_generic_x(rng, 0.7, dc, ctx);
    for (int l = 0; l < N; ++l) {
      action.add(t_action_residual(dc, {x, l, ctx}, ctx));
      gauge.add(gauge_null_residual(dc, {x, l, ctx}, ctx));
      thm_i.add(theorem1_i_residual(dc, x, l, ctx));
      thm_ii.add(theorem1_ii_residual(dc, x, l, ctx));
    }
  }
  suites.insert(suites.end(), {action, gauge, thm_i, thm_ii});

  const TransferPencil pencil = transfer_pencil(dc.to_chain(ctx), ctx);
  detail::Suite div{"divisibility", tol.vector};
  for (int l = 0; l < N; ++l) {
    const auto pairs = sector_left_eigenpairs(pencil[1], 2L * l, ctx);
    Matrix phis(static_cast<Eigen::Index>(pairs.size()), pencil[1].dim());
    for (std::size_t i = 0; i < pairs.size(); ++i) phis.row(static_cast<Eigen::Index>(i)) = pairs[i].phi;
    for (const auto& rep : divisibility_check(dc, phis, l, ctx)) div.add(rep.worst());
  }
  suites.push_back(div);

  // Every sector eigenvalue of T_2 occurs with multiplicity exactly N.
  detail::Suite degen{"degeneracy", 0.0};
  for (int l = 0; l < N; ++l) {
    const auto spec = eigenvalues(sector_restriction(pencil[1], l, ctx));
    int off = 0;
    for (const auto& c : cluster_values(spec, 1e-6)) off += c.multiplicity != N;
    degen.add(off);
  }
  suites.push_back(degen);

  json run = {{"N", N}, {"c", to_json(dc.c)}, {"suites", json::array()}};
  for (const auto& s : suites) {
    run["suites"].push_back(s.to_json());
    if (!s.pass()) failing.push_back("N=" + std::to_string(N) + ":" + s.name);
  }
  return run;
}

inline CommandResult cmd_verify(const RunConfig& cfg) {
  validate_config(cfg);
  detail::Timer timer;
  CommandResult res;
  res.report = detail::report_header("verify", cfg);
  res.report["runs"] = json::array();
  std::vector<std::string> failing;
  for (int N : cfg.N_list) res.report["runs"].push_back(verify_one(N, cfg, failing));
  res.report["failing"] = failing;
  res.report["pass"] = failing.empty();
  res.report["wall_time_s"] = timer.seconds();
  res.exit_code = failing.empty() ? 0 : 1;
  return res;
}

// ---------------------------------------------------------------------------
// solve

inline json solution_json(const BetheSolution& s, std::optional<int> mp = std::nullopt) {
  json j = {{"m", s.m},
            {"lambda", to_json(s.lambda)},
            {"Lambda", to_json(s.Lambda_poly)},
            {"Q", to_json(s.Q)},
            {"degree", s.Q.degree()},
            {"roots", to_json(s.roots)},
            {"rbeq_residual", s.rbeq_residual},
            {"ansatz_residuals", s.ansatz_residuals},
            {"null_gap", s.null_gap}};
  if (mp) j["m_prime"] = *mp;
  return j;
}

/// Solutions for one N, with the oracle comparison for L = 2, 3.
inline json solve_one(int N, int L, std::optional<int> m_only, const RunConfig& cfg, bool& ok) {
  const Context ctx(N, cfg.P);
  if (m_only && (*m_only < 0 || *m_only > ctx.M()))
    throw config_error("m must lie in [0, " + std::to_string(ctx.M()) + "] for N=" + std::to_string(N));
  std::vector<int> ms;
  for (int m = 0; m <= ctx.M(); ++m)
    if (!m_only || *m_only == m) ms.push_back(m);

  Rng rng(derive_seed(cfg.seed, N, 2));
  json run = {{"N", N}, {"L", L}};
  double worst_rbeq = 0, worst_ansatz = 0, worst_oracle = 0;
  const double rbeq_tol = L == 1 ? cfg.tol.exact : L == 2 ? cfg.tol.vector : cfg.tol.eigen;
  try {
    run["solutions"] = with_redraws(rng, [&](Rng& r) {
      const DegenerateChain dc = r.degenerate(L);
      run["c"] = to_json(dc.c);
      json sols = json::array();
      worst_oracle = 0;
      const ChainParams chain = dc.to_chain(ctx);
      std::optional<TransferPencil> pencil;
      if (L >= 2) pencil = transfer_pencil(chain, ctx);
      for (int m : ms) {
        std::vector<cplx> lams;
        if (L == 1) {
          sols.push_back(solution_json(solve_L1(m, dc.c[0], ctx)));
        } else if (L == 2) {
          for (int mp = 0; mp <= ctx.M(); ++mp) {
            const BetheSolution s = solve_L2(m, mp, dc.c[0], dc.c[1], ctx);
            lams.push_back(s.lambda);
            sols.push_back(solution_json(s, mp));
          }
        } else {
          for (const auto& s : solve_L3(m, dc.c, ctx)) {
            lams.push_back(s.lambda);
            sols.push_back(solution_json(s));
          }
        }
        if (pencil) {
          // Lambda_m = q^-m Lambda on sector 2m and q^m Lambda on sector -2m.
          for (int sign : {+1, -1}) {
            std::vector<cplx> distinct;
            const auto spec = eigenvalues(sector_restriction((*pencil)[1], sign * 2L * m, ctx));
            for (const auto& c : cluster_values(spec, 1e-6)) distinct.push_back(ctx.q_pow(-sign * m) * c.value);
            std::vector<cplx> uniq;
            for (const auto& c : cluster_values(lams, 1e-6)) uniq.push_back(c.value);
            worst_oracle = std::max(worst_oracle, match_multisets(uniq, distinct, cfg.tol.eigen).max_error);
          }
        }
      }
      return sols;
    });
  } catch (const genericity_failure& e) {
    ok = false;
    run["error"] = std::string("genericity failure after ") + std::to_string(max_redraws) +
                   " redraws: " + e.what();
    return run;
  }
  for (const auto& s : run["solutions"]) {
    worst_rbeq = std::max(worst_rbeq, s["rbeq_residual"].get<double>());
    for (double a : s["ansatz_residuals"]) worst_ansatz = std::max(worst_ansatz, a);
  }
  json summary = {{"max_rbeq_residual", worst_rbeq}, {"max_ansatz_residual", worst_ansatz}};
  bool pass = worst_rbeq <= rbeq_tol && worst_ansatz <= cfg.tol.ansatz;
  if (L >= 2) {
    summary["max_oracle_error"] = worst_oracle;
    pass = pass && worst_oracle <= cfg.tol.eigen;
  }
  summary["pass"] = pass;
  run["summary"] = summary;
  ok = ok && pass;
  return run;
}

inline CommandResult cmd_solve(const RunConfig& cfg, int L, std::optional<int> m) {
  validate_config(cfg);
  if (L < 1 || L > 3) throw config_error("L must be 1, 2 or 3");
  detail::Timer timer;
  CommandResult res;
  res.report = detail::report_header("solve", cfg);
  res.report["L"] = L;
  res.report["m"] = m ? json(*m) : json("all");
  res.report["runs"] = json::array();
  bool ok = true;
  for (int N : cfg.N_list) res.report["runs"].push_back(solve_one(N, L, m, cfg, ok));
  res.report["pass"] = ok;
  res.report["wall_time_s"] = timer.seconds();
  res.exit_code = ok ? 0 : 1;
  return res;
}

// ---------------------------------------------------------------------------
// butterfly

struct ButterflyRow {
  int N, P, index;
  cplx energy;
};

/// Spectra of H_FK for every unit P of Z_N, each N in the list. Rows sorted by
/// (N, P, Re E). Non-units are skipped with a warning on stderr.
inline std::vector<ButterflyRow> butterfly_rows(const std::vector<int>& Ns, const FKParams& p) {
  std::vector<ButterflyRow> rows;
  for (int N : Ns)
    for (int P = 1; P < N; ++P) {
      if (std::gcd(P, N) != 1) {
        std::cerr << "warning: skipping flux " << P << "/" << N << " (not a unit)\n";
        continue;
      }
      const Context ctx(N, P);
      std::vector<cplx> ev = eigenvalues(hofstadter_hamiltonian(ctx, p).m);
      std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
      });
      for (std::size_t i = 0; i < ev.size(); ++i) rows.push_back({N, P, static_cast<int>(i), ev[i]});
    }
  return rows;
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// RFC 4180 text with CRLF line breaks.
inline std::string butterfly_csv(const std::vector<ButterflyRow>& rows) {
  std::string out = "N,P,index,energy_re,energy_im\r\n";
  for (const auto& r : rows)
    out += std::to_string(r.N) + "," + std::to_string(r.P) + "," + std::to_string(r.index) + "," +
           format_double(r.energy.real()) + "," + format_double(r.energy.imag()) + "\r\n";
  return out;
}

inline CommandResult cmd_butterfly(const RunConfig& cfg, const FKParams& p) {
  validate_config(cfg, false);
  detail::Timer timer;
  const auto rows = butterfly_rows(cfg.N_list, p);
  CommandResult res;
  res.report = detail::report_header("butterfly", cfg);
  res.report["params"] = {{"mu", to_json(p.mu)},       {"nu", to_json(p.nu)},
                          {"rho", to_json(p.rho)},     {"alpha", to_json(p.alpha)},
                          {"beta", to_json(p.beta)},   {"gamma", to_json(p.gamma)}};
  json runs = json::array();
  for (int N : cfg.N_list) {
    json run = {{"N", N}, {"rows", json::array()}};
    double max_imag = 0;
    for (const auto& r : rows)
      if (r.N == N) {
        max_imag = std::max(max_imag, std::abs(r.energy.imag()));
        if (cfg.format == Format::json)
          run["rows"].push_back({{"P", r.P}, {"index", r.index}, {"energy", to_json(r.energy)}});
      }
    if (cfg.format == Format::csv) run.erase("rows");
    run["max_abs_imag"] = max_imag;
    runs.push_back(run);
  }
  res.report["runs"] = runs;
  res.report["row_count"] = rows.size();
  if (cfg.format == Format::csv) res.csv = butterfly_csv(rows);
  res.report["wall_time_s"] = timer.seconds();
  return res;
}

// ---------------------------------------------------------------------------
// curves

/// `count` points of W, one per fresh x, alternating |x| = 0.5 and 2.0.
/// Draws that hit a pole of the curve or of the averaged vectors are redrawn.
inline std::vector<WPoint> sample_w_points(Rng& rng, const HofstadterChain3& ch, const Context& ctx,
                                           int count) {
  std::vector<WPoint> out;
  int t = 0;
  while (static_cast<int>(out.size()) < count) {
    const cplx x = rng.on_circle(t++ % 2 ? 0.5 : 2.0);
    try {
      const auto pts = sample_W(x, ch, ctx);
      const WPoint p = pts[static_cast<std::size_t>(rng.next() % pts.size())];
      for (WPoint s : {p, tau_W(p, -1, ch, ctx), tau_W(p, +1, ch, ctx)})
        for (auto mode : {LiftWeighting::printed, LiftWeighting::descending})
          (void)averaged_baxter(s, ch, ctx, mode);
      (void)delta_tilde_plus(p.x, p.xi0, p.xi2, ch);
      out.push_back(p);
    } catch (const pole_error&) {
    } catch (const curve_error&) {
    }
  }
  return out;
}

/// Max difference between the A/B/C/D polynomials and the numeric 2x2
/// product at y = 1, ..., L+1.
inline double abcd_consistency(const ChainParams& chain, const Context& ctx) {
  const int N = ctx.N();
  const ABCDPolys p = abcd_polys(chain, ctx);
  double worst = 0;
  for (int k = 1; k <= chain.L() + 1; ++k) {
    const cplx y = static_cast<double>(k);
    Eigen::Matrix2cd prod = Eigen::Matrix2cd::Identity();
    for (const auto& h : chain.sites) {
      Eigen::Matrix2cd f;
      f << -std::pow(h.a, N), y * std::pow(h.b, N), y * std::pow(h.c, N), -std::pow(h.d, N);
      prod = prod * f;
    }
    const double scale = std::max(1.0, prod.cwiseAbs().maxCoeff());
    worst = std::max({worst, std::abs(-p.A(y) - prod(0, 0)) / scale, std::abs(p.B(y) - prod(0, 1)) / scale,
                      std::abs(p.C(y) - prod(1, 0)) / scale, std::abs(-p.D(y) - prod(1, 1)) / scale});
  }
  return worst;
}

struct CurvesOptions {
  int points = 0;             ///< W points for the rank test; 0 means 2N^2
  int descended_points = 20;  ///< points for the descended relation
};

inline json curves_one(int N, const RunConfig& cfg, const CurvesOptions& opt, bool& ok) {
  const Context ctx(N, cfg.P);
  const int count = opt.points > 0 ? opt.points : 2 * N * N;
  if (count < N * N)
    throw arity_error("curves: need at least N^2 = " + std::to_string(N * N) + " points, got " +
                      std::to_string(count));
  Rng rng(derive_seed(cfg.seed, N, 3));
  const HofstadterChain3 ch = rng.hofstadter();
  const auto pts = sample_w_points(rng, ch, ctx, std::max(count, opt.descended_points));

  double w_res = 0;
  for (const auto& p : pts) w_res = std::max({w_res, p.residuals[0], p.residuals[1]});

  json ranks = json::array(), ranks_desc = json::array();
  bool rank_ok = true;
  const std::span<const WPoint> rank_pts(pts.data(), static_cast<std::size_t>(count));
  for (int l = 0; l < N; ++l) {
    const int r = epsilon_rank(l, rank_pts, ch, ctx);
    ranks.push_back(r);
    ranks_desc.push_back(epsilon_rank(l, rank_pts, ch, ctx, LiftWeighting::descending));
    rank_ok = rank_ok && r == N * N;
  }

  std::vector<double> printed, descending;
  for (int i = 0; i < opt.descended_points; ++i) {
    printed.push_back(descended_t_residual(pts[static_cast<std::size_t>(i)], ch, ctx));
    descending.push_back(descended_t_residual(pts[static_cast<std::size_t>(i)], ch, ctx,
                                              LiftWeighting::descending));
  }
  auto stats = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return json{{"max", v.empty() ? 0.0 : v.back()}, {"median", v.empty() ? 0.0 : v[v.size() / 2]},
                {"count", v.size()}};
  };
  const double desc_max = printed.empty() ? 0.0 : *std::max_element(printed.begin(), printed.end());
  const bool desc_ok = desc_max <= cfg.tol.eigen;
  const double abcd = abcd_consistency(ch.to_chain(), ctx);
  const bool abcd_ok = abcd <= cfg.tol.exact;
  const bool w_ok = w_res <= w_tol;
  ok = ok && rank_ok && desc_ok && abcd_ok && w_ok;

  return {{"N", N},
          {"h1", to_json(ch.h1)},
          {"h2", to_json(ch.h2)},
          {"points", count},
          {"abcd_consistency", abcd},
          {"w_residual_max", w_res},
          {"epsilon_rank", ranks},
          {"epsilon_rank_pass", rank_ok},
          {"descended_residual", stats(printed)},
          {"descended_pass", desc_ok},
          {"diagnostics",
           {{"weighting", "descending"},
            {"epsilon_rank", ranks_desc},
            {"descended_residual", stats(descending)}}}};
}

inline CommandResult cmd_curves(const RunConfig& cfg, const CurvesOptions& opt = {}) {
  validate_config(cfg);
  detail::Timer timer;
  CommandResult res;
  res.report = detail::report_header("curves", cfg);
  res.report["runs"] = json::array();
  bool ok = true;
  for (int N : cfg.N_list) res.report["runs"].push_back(curves_one(N, cfg, opt, ok));
  res.report["pass"] = ok;
  res.report["wall_time_s"] = timer.seconds();
  res.exit_code = ok ? 0 : 1;
  return res;
}

// ---------------------------------------------------------------------------
// output

/// Writes the report (JSON) or the CSV plus a `<path>.meta.json` sidecar.
inline void write_result(const CommandResult& res, const RunConfig& cfg) {
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw error("write failed: " + path);
  };
  if (cfg.format == Format::csv && !res.csv.empty()) {
    write(cfg.output_path, res.csv);
    write(cfg.output_path + ".meta.json", res.report.dump(2) + "\n");
  } else {
    write(cfg.output_path, res.report.dump(2) + "\n");
  }
}

}  // namespace hofbethe
