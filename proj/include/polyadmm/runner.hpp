// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include <string>
#include <vector>

#include "polyadmm/config.hpp"

namespace polyadmm::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitConverged = 0;
inline constexpr int kExitFail = 1;  // check-svs verdict: assumption fails
inline constexpr int kExitCycle = 2;
inline constexpr int kExitMaxIter = 3;
inline constexpr int kExitUsage = 4;
inline constexpr int kExitSolverError = 5;

int cmd_solve(const std::string& config_path, const ConfigOverrides& ov);
int cmd_check_svs(const std::string& config_path, const ConfigOverrides& ov);
int cmd_examples(const std::string& which, const std::string& out_dir);
int cmd_sweep(const std::string& config_path, const std::vector<double>& betas,
              const ConfigOverrides& ov);

}  // namespace polyadmm::cli
