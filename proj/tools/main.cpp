// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyadmm/errors.hpp"
#include "polyadmm/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"polyadmm: ADMM solver and diagnostics for composite problems with "
               "polyhedral nonsmooth terms"};
  app.require_subcommand(1);

  polyadmm::ConfigOverrides ov;
  double beta_override = 0.0;
  int max_iter_override = 0;
  std::uint64_t seed_override = 0;
  std::string out_dir;

  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--beta", beta_override, "override the penalty parameter");
    cmd->add_option("--max-iter", max_iter_override, "override the iteration cap");
    cmd->add_option("--seed", seed_override, "override the random-init seed");
    cmd->add_option("--out-dir", out_dir,
                    "directory for output artifacts (also read from POLYADMM_OUT_DIR)");
  };

  std::string config_path;
  auto* solve = app.add_subcommand("solve", "run ADMM from a problem config");
  solve->add_option("config", config_path, "JSON config file")->required();
  add_overrides(solve);

  std::string svs_config;
  auto* svs = app.add_subcommand("check-svs", "verify the local strong-convexity certificate");
  svs->add_option("config", svs_config, "JSON config file (needs a reference pair)")->required();
  add_overrides(svs);

  std::string which = "all";
  std::string examples_out = "examples_out";
  auto* examples = app.add_subcommand("examples", "emit the built-in example artifacts");
  examples->add_option("which", which, "1, 2, 3 or all");
  examples->add_option("--out", examples_out, "output directory");

  std::string sweep_config;
  std::vector<double> betas;
  auto* sweep = app.add_subcommand("sweep", "run one config across several penalty values");
  sweep->add_option("config", sweep_config, "JSON config file")->required();
  sweep->add_option("--betas", betas, "penalty values")->required()->delimiter(',');
  add_overrides(sweep);

  CLI11_PARSE(app, argc, argv);

  auto fill = [&](CLI::App* cmd) {
    if (cmd->count("--beta")) ov.beta = beta_override;
    if (cmd->count("--max-iter")) ov.max_iter = max_iter_override;
    if (cmd->count("--seed")) ov.seed = seed_override;
    if (cmd->count("--out-dir")) ov.out_dir = out_dir;
  };

  try {
    if (solve->parsed()) {
      fill(solve);
      return polyadmm::cli::cmd_solve(config_path, ov);
    }
    if (svs->parsed()) {
      fill(svs);
      return polyadmm::cli::cmd_check_svs(svs_config, ov);
    }
    if (examples->parsed()) return polyadmm::cli::cmd_examples(which, examples_out);
    if (sweep->parsed()) {
      fill(sweep);
      return polyadmm::cli::cmd_sweep(sweep_config, betas, ov);
    }
  } catch (const polyadmm::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return polyadmm::cli::kExitUsage;
  } catch (const polyadmm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return polyadmm::cli::kExitSolverError;
  }
  return polyadmm::cli::kExitUsage;
}
