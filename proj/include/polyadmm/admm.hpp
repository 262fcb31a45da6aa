// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "polyadmm/problem.hpp"
#include "polyadmm/types.hpp"

namespace polyadmm {

// Iteration order. Scheme 3 minimizes in x first; scheme 4 swaps the x and
// y minimizations and is provided as plumbing only (no convergence
// diagnostics are attached to it).
enum class AdmmVariant { kScheme3, kScheme4 };

enum class ProxMethod { kFast, kQp };

// Registered analytic x-minimizers for the built-in gallery problems.
struct ClosedFormX {
  std::string key;  // "example1" | "example2" | "example3"
};
// Certified-to-grid-resolution global minimizer for n <= 2 over box or
// whole-space constraint sets: dense grid plus local polish.
struct Global1dX {
  int grid_points = 20001;     // total budget (per axis in 1-D, split in 2-D)
  double search_radius = 8.0;  // half-width used on unbounded coordinates
  int top_candidates = 6;
};
// Projected gradient descent; returns a stationary point with a flag that
// globality is not certified.
struct ProjGradX {
  double tol = 1e-12;
  int max_iter = 20000;
};
using XSolverConfig = std::variant<ClosedFormX, Global1dX, ProjGradX>;

struct AdmmConfig {
  double beta = 1.0;
  int max_iter = 500;
  double eps_pri = 1e-10;
  double eps_dua = 1e-10;
  AdmmVariant variant = AdmmVariant::kScheme3;
  XSolverConfig x_solver = Global1dX{};
  ProxMethod prox_method = ProxMethod::kFast;
  int cycle_window = 8;
  double cycle_tol = 1e-10;
  bool check_dual_feasibility = false;  // record dist(lambda, dg(y)) per iterate

  void validate() const;
};

struct AdmmState {
  int k = 0;
  Vec x;
  Vec y;
  Vec lambda;
};

struct Reference {
  Vec x_bar;
  Vec lambda_bar;
};

enum class Termination { kConverged, kMaxIter, kCycleDetected, kSolverError };
std::string to_string(Termination t);

struct IterDiagnostics {
  double r_pri = 0.0;
  double r_dua = 0.0;
  double s_k = std::numeric_limits<double>::quiet_NaN();
  double lyapunov = std::numeric_limits<double>::quiet_NaN();
  double descent_slack = std::numeric_limits<double>::quiet_NaN();
  double dual_feas_dist = std::numeric_limits<double>::quiet_NaN();
};

struct CycleInfo {
  int period = 0;
  bool fixed_point = false;  // period 1: constant tail, not a cycle
  std::vector<AdmmState> states;
};

struct IterateTrace {
  Vec y0;
  Vec lambda0;
  std::vector<AdmmState> states;       // k = 1..K, contiguous
  std::vector<IterDiagnostics> diag;   // parallel to states
  Termination termination = Termination::kMaxIter;
  std::optional<CycleInfo> cycle;
  bool init_dual_feasible = true;      // lambda0 in dg(y0) held at the start
  std::optional<double> init_ball_radius_sq;  // beta^2||y0-Ax_bar||^2+||l0-l_bar||^2
  double beta = 0.0;
  bool x_solver_global_certified = true;
  std::string error_message;

  const AdmmState& last() const { return states.back(); }
};

struct XUpdateResult {
  Vec x;
  bool global_certified = true;
};

struct YUpdateResult {
  Vec y;
  Vec lambda_hat;  // lambda + beta (Ax - y), the next multiplier
};

XUpdateResult x_update(const ProblemSpec& spec, const AdmmConfig& cfg, const Vec& y,
                       const Vec& lambda, const std::optional<Vec>& warm = std::nullopt);
YUpdateResult y_update(const ProblemSpec& spec, const AdmmConfig& cfg, const Vec& x,
                       const Vec& lambda);
Vec lambda_update(double beta, const Vec& lambda, const Vec& ax, const Vec& y);

IterateTrace run(const ProblemSpec& spec, const AdmmConfig& cfg, const Vec& y0,
                 const Vec& lambda0, const std::optional<Reference>& reference = std::nullopt);

// Period-p recurrence (p <= window) over one full period, sup norm within
// tol. Needs at least 2*window states; returns nullopt otherwise or when no
// recurrence is found. Period 1 is reported as a fixed point.
std::optional<CycleInfo> detect_cycle(const std::vector<AdmmState>& states, int window,
                                      double tol);

// CSV export: header k,x...,y...,lambda...,r_pri,r_dua,s_k,lyapunov,
// descent_slack, one row per iteration at 17 significant digits, then a
// trailing '#' metadata line with the termination reason.
void write_trace_csv(std::ostream& os, const IterateTrace& trace,
                     const std::vector<std::pair<std::string, std::string>>& extra_meta = {});

}  // namespace polyadmm
