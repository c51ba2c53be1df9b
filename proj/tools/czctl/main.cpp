#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "czk/grid.hpp"
#include "czk/kernel.hpp"

namespace {

const char* kSimulateHelp = R"(CSV schemas (lines starting with '#' echo the run configuration):
  tstar:    level,eps,sup_abs,norm_p      (last row: level = max, the T* field)
  ratio:    field,G,h,sup_ratio,max_tstar,max_mtf,points_used
  localize: delta,ratio,window_sup
  msl:      R,value                  (trailing comment: sup and its radius))";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"czctl: Calderon-Zygmund kernel toolkit"};
  app.require_subcommand(1);
  czctl::RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Write the report to this file instead of stdout");
    sub->add_option("--seed", cfg.seed, "Seed for randomized choices");
  };

  auto* check = app.add_subcommand("check", "Decide condition (c) for a kernel spec (exit 0 pass, 2 fail, 3 inconclusive)");
  check->add_option("--kernel", cfg.kernel_path, "Kernel spec (JSON)")->required();
  add_common(check);

  auto* bfun = app.add_subcommand("bfun", "Build the b function and the S polynomial");
  bfun->add_option("--n", cfg.n, "Dimension")->required();
  bfun->add_option("--N", cfg.N, "Order of the polyharmonic operator")->required();
  bfun->add_option("--kernel", cfg.kernel_path, "Even kernel of top degree 2N (for S and --verify)");
  bfun->add_flag("--verify", cfg.verify, "Check K chi_{B^c} = T(b) + S chi_B at the shipped sample points");
  add_common(bfun);

  auto* sim = app.add_subcommand("simulate", "Grid experiments; CSV output");
  sim->footer(kSimulateHelp);
  sim->add_option("variant", cfg.variant, "tstar | ratio | localize | msl")
      ->required()
      ->check(CLI::IsMember({"tstar", "ratio", "localize", "msl"}));
  sim->add_option("--kernel", cfg.kernel_path, "Kernel spec (JSON)");
  sim->add_option("--n", cfg.n, "Dimension (when no kernel is given)");
  sim->add_option("--grid", cfg.grid, "Points per axis G (even)");
  sim->add_option("--extent", cfg.extent, "Box half extent L");
  sim->add_option("--p", cfg.p, "Norm exponent");
  sim->add_option("--weight-exp", cfg.weight_exp, "Power weight |x|^a");
  sim->add_option("--delta-list", cfg.delta_list, "Decreasing delta values (localize, msl)")->delimiter(',');
  sim->add_option("--eps-levels", cfg.eps_levels, "Ascending truncation levels (tstar)")->delimiter(',');
  sim->add_option("--field", cfg.fields, "gaussian:SIGMA | bump:R | ball:R (repeatable)");
  sim->add_option("--xi0", cfg.xi0, "Localization frequency")->delimiter(',');
  sim->add_option("--s", cfg.s, "Integrability exponent (msl)");
  sim->add_option("--l", cfg.l, "Derivative order (msl)");
  sim->add_option("--radii", cfg.radii, "Annulus radii (msl)")->delimiter(',');
  sim->add_option("--window-delta", cfg.window_delta, "Localize the msl multiplier at xi0 with this window");
  sim->add_option("--budget", cfg.budget, "Maximum number of grid points");
  add_common(sim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : czctl::kInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  std::ostringstream report;
  int code = czctl::kInputError;
  try {
    czctl::validate(cfg);
    if (cfg.command == "check") code = czctl::cmd_check(cfg, report);
    else if (cfg.command == "bfun") code = czctl::cmd_bfun(cfg, report);
    else code = czctl::cmd_simulate(cfg, report);
  } catch (const czk::BudgetExceeded& e) {
    std::cerr << "czctl: " << e.what() << '\n';
    return czctl::kBudgetExceeded;
  } catch (const std::exception& e) {
    std::cerr << "czctl: " << e.what() << '\n';
    return czctl::kInputError;
  }

  if (cfg.out.empty()) {
    std::cout << report.str();
  } else {
    std::ofstream os(cfg.out, std::ios::binary);
    if (!(os << report.str())) {
      std::cerr << "czctl: cannot write " << cfg.out << '\n';
      return czctl::kInputError;
    }
  }
  return code;
}
