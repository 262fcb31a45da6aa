// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "polyadmm/admm.hpp"
#include "polyadmm/problem.hpp"

namespace polyadmm {

struct InitExplicit {
  Vec y0;
  Vec lambda0;
};

// Seeded inits drawn uniformly from the weighted ball
// beta^2 ||y0 - A x_bar||^2 + ||lambda0 - lambda_bar||^2 <= radius_sq
// around the reference (origin when no reference is given).
struct InitRandomBall {
  double radius_sq = 0.5;
  int count = 1;
  std::uint64_t seed = 1;
};

struct RunConfig {
  ProblemSpec problem;
  AdmmConfig admm;
  std::variant<InitExplicit, InitRandomBall> init;
  std::optional<Reference> reference;
  std::optional<std::string> trace_path;
  std::optional<std::string> report_path;
};

// Command-line / environment overrides applied on top of the file.
struct ConfigOverrides {
  std::optional<double> beta;
  std::optional<int> max_iter;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;  // also set by POLYADMM_OUT_DIR
};

// Throws UsageError with the offending field in the message.
RunConfig parse_run_config(const nlohmann::json& j, const ConfigOverrides& ov = {});
RunConfig load_run_config(const std::string& path, const ConfigOverrides& ov = {});

// Schema pieces reused by tests and tools.
SmoothFunction parse_smooth(const nlohmann::json& j);
MaxAffineFunction parse_max_affine(const nlohmann::json& j);
ConvexSet parse_convex_set(const nlohmann::json& j);
ProblemSpec parse_problem(const nlohmann::json& j);
AdmmConfig parse_admm(const nlohmann::json& j);

}  // namespace polyadmm
