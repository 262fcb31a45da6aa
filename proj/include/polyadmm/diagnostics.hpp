// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyadmm/admm.hpp"
#include "polyadmm/problem.hpp"
#include "polyadmm/types.hpp"

namespace polyadmm {

struct DiagnosticsConfig {
  double theta = 0.5;  // descent-inequality weight
  double beta0 = 1e-6;
  Mat projector_P;  // m x m complement projector of the critical subspace
  Reference reference;
  std::optional<Vec> lambda_star;  // defaults to the reference multiplier

  // Derives beta0 and the projector from the strong-variational-sufficiency
  // certificate at the reference pair. A zero/vacuous beta0 is floored at
  // 1e-6 so the reduced Lagrangian below stays well defined.
  static DiagnosticsConfig from_reference(const ProblemSpec& spec, Reference reference,
                                          double theta = 0.5, double margin = 1e-3);
  void validate(const ProblemSpec& spec) const;
};

// l_beta(x, lambda) = f(x) + M_g^{1/beta}(Ax + lambda/beta) + delta_C(x)
// - ||lambda||^2 / (2 beta).
double reduced_lagrangian(const ProblemSpec& spec, double beta, const Vec& x,
                          const Vec& lambda);

struct ResidualBreakdown {
  double block_x = 0.0;     // stationarity block (linearized f)
  double block_g = 0.0;     // dual feasibility block
  double block_feas = 0.0;  // primal feasibility block
  double total = 0.0;       // Euclidean combination
};

// Distance blocks of the residual map at u = (x, y, lambda), built around
// the linearization of f at the reference point.
ResidualBreakdown residual_T(const ProblemSpec& spec, const Vec& x_bar, const Vec& x,
                             const Vec& y, const Vec& lambda);

struct DescentSlack {
  double slack = 0.0;  // RHS - LHS of the one-step descent inequality
  bool held = false;   // slack >= -kOptTol
  std::string note;
};

// Evaluates the descent inequality between consecutive iterates. prev only
// needs (y, lambda); next is the full (x, y, lambda) triple it produced.
DescentSlack descent_slack(const ProblemSpec& spec, const DiagnosticsConfig& cfg, double beta,
                           const Vec& y_prev, const Vec& lambda_prev, const AdmmState& next,
                           const Vec& lambda_star);

struct RateReport {
  std::vector<double> q_ratios;  // dist ratios on (y, lambda) toward the limit
  double fitted_rho = std::numeric_limits<double>::quiet_NaN();
  bool below_floor = false;  // all tail distances under the numerical floor
  double r_linear_C = std::numeric_limits<double>::quiet_NaN();    // ||x^k - x_bar|| <= C rho^k
  double r_linear_rho = std::numeric_limits<double>::quiet_NaN();
  double kappa_estimate = std::numeric_limits<double>::quiet_NaN();  // max tail dist/residual
  double kappa_min = std::numeric_limits<double>::quiet_NaN();
  double kappa_max = std::numeric_limits<double>::quiet_NaN();
};

// Tail-of-trace rate fit. Distances below 1e-13 are ignored (double noise).
RateReport rate_estimate(const ProblemSpec& spec, const IterateTrace& trace,
                         const Reference& reference, double tail_fraction = 0.5);

// Fills s_k (if absent), the Lyapunov value against lambda_star, the descent
// slack and the dual-feasibility distance for every recorded iterate.
void annotate_trace(IterateTrace& trace, const ProblemSpec& spec,
                    const DiagnosticsConfig& cfg);

}  // namespace polyadmm
