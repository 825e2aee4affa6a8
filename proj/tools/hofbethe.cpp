#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hofbethe/hofbethe.hpp"

namespace {

using hofbethe::cplx;

// "re" or "re,im".
cplx parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw hofbethe::config_error("not a complex number: '" + s + "'");
  }
}

struct Common {
  std::vector<int> N{3};
  int P = 1;
  std::uint64_t seed = hofbethe::RunConfig{}.seed;
  std::vector<std::string> tol;
  std::string out;
  std::string format = "json";

  void attach(CLI::App* app) {
    app->add_option("--N", N, "odd chain dimension, repeatable")->expected(1, -1)->take_all();
    app->add_option("--P", P, "root exponent, omega = exp(2 pi i P / N)");
    app->add_option("--seed", seed, "parameter seed");
    app->add_option("--tol", tol, "tolerance override name=value (exact, vector, eigen, ansatz)");
    app->add_option("--out", out, "output path");
    app->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  }

  hofbethe::RunConfig config(const std::string& command) const {
    hofbethe::RunConfig cfg;
    cfg.N_list = N;
    cfg.P = P;
    cfg.seed = seed;
    for (const auto& t : tol) cfg.tol.apply(t);
    cfg.format = format == "csv" ? hofbethe::Format::csv : hofbethe::Format::json;
    cfg.output_path = out.empty() ? command + (format == "csv" ? ".csv" : ".json") : out;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transfer matrices, Baxter vectors and Bethe equations of Hofstadter-type chains"};
  app.set_version_flag("--version", std::string(hofbethe::tool_version));
  app.require_subcommand(1);

  Common verify_opts, solve_opts, butterfly_opts, curves_opts;

  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify_opts.attach(verify);

  auto* solve = app.add_subcommand("solve", "solve the rational Bethe equation");
  solve_opts.attach(solve);
  int L = 3;
  std::string m_arg = "all";
  solve->add_option("--L", L, "chain length")->check(CLI::IsMember({1, 2, 3}));
  solve->add_option("--m", m_arg, "sector 0..M or 'all'");

  auto* butterfly = app.add_subcommand("butterfly", "H_FK spectra over rational fluxes");
  butterfly_opts.attach(butterfly);
  double mu = 1, nu = 1, rho = 0;
  std::string alpha = "1", beta = "1", gamma = "1";
  butterfly->add_option("--mu", mu, "U coefficient");
  butterfly->add_option("--nu", nu, "V coefficient");
  butterfly->add_option("--rho", rho, "W coefficient (0 gives Harper)");
  butterfly->add_option("--alpha", alpha, "re or re,im");
  butterfly->add_option("--beta", beta, "re or re,im");
  butterfly->add_option("--gamma", gamma, "re or re,im");

  auto* curves = app.add_subcommand("curves", "curve W sampling, descended relation, epsilon rank");
  curves_opts.attach(curves);
  hofbethe::CurvesOptions copt;
  curves->add_option("--points", copt.points, "W points for the rank test (default 2N^2)");
  curves->add_option("--descended-points", copt.descended_points, "points for the descended relation");

  CLI11_PARSE(app, argc, argv);

  try {
    hofbethe::RunConfig cfg;
    hofbethe::CommandResult res;
    if (*verify) {
      cfg = verify_opts.config("verify");
      res = hofbethe::cmd_verify(cfg);
    } else if (*solve) {
      cfg = solve_opts.config("solve");
      std::optional<int> m;
      if (m_arg != "all") {
        try {
          std::size_t used = 0;
          m = std::stoi(m_arg, &used);
          if (used != m_arg.size()) throw std::invalid_argument(m_arg);
        } catch (const std::exception&) {
          throw hofbethe::config_error("--m must be an integer or 'all'");
        }
      }
      res = hofbethe::cmd_solve(cfg, L, m);
    } else if (*butterfly) {
      cfg = butterfly_opts.config("butterfly");
      hofbethe::FKParams p{mu, nu, rho, parse_complex(alpha), parse_complex(beta), parse_complex(gamma)};
      res = hofbethe::cmd_butterfly(cfg, p);
    } else {
      cfg = curves_opts.config("curves");
      res = hofbethe::cmd_curves(cfg, copt);
    }
    hofbethe::write_result(res, cfg);
    std::cout << cfg.output_path << ": " << (res.exit_code == 0 ? "pass" : "FAIL") << "\n";
    if (res.report.contains("failing"))
      for (const auto& f : res.report["failing"]) std::cout << "  failing: " << f.get<std::string>() << "\n";
    return res.exit_code;
  } catch (const hofbethe::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const hofbethe::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
