// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>
#include <string>

#include "polyadmm/problem.hpp"
#include "polyadmm/types.hpp"

namespace polyadmm {

struct FirstOrderCheck {
  bool ok = false;
  double residual_x = 0.0;       // dist(-grad f(x) - A'lambda, N_C(x))
  double residual_lambda = 0.0;  // dist(lambda, dg(Ax))
};

struct Beta0Result {
  bool vacuous = false;        // V_C = {0}: any beta0 > 0 works vacuously
  bool zero_sentinel = false;  // infimum is 0: any beta0 > 0 works
  double raw = 0.0;            // bisection value before the safety margin
  double value = 0.0;          // raw * (1 + margin)
  double recommended_beta_above = 0.0;  // local convergence uses beta > 2*beta0
};

// Certificate for the local strong-convexity condition at a first-order
// pair: the restricted Hessian of f must be positive definite on
// V_C intersected with the preimage of the critical subspace under A.
struct SvsReport {
  FirstOrderCheck first_order;
  geom::Subspace S;             // critical subspace of g at (Ax_bar, lambda_bar)
  geom::Subspace S_A;           // {v : Av in S}
  geom::Subspace V_C;           // affine-hull directions of C
  geom::Subspace intersection;  // V_C cap S_A
  bool vacuous = false;         // intersection = {0}
  std::optional<double> sigma;  // min eigenvalue of the restricted Hessian
  bool assumption_holds = false;
  Mat projector_P;              // I - P_S on R^m
  std::optional<Beta0Result> beta0;  // present when the assumption holds

  std::string to_text() const;
};

FirstOrderCheck check_first_order(const ProblemSpec& spec, const Vec& x_bar,
                                  const Vec& lambda_bar);

// Preimage subspace {v : Av in S(Ax_bar | lambda_bar)}.
geom::Subspace critical_subspace_SA(const ProblemSpec& spec, const Vec& x_bar,
                                    const Vec& lambda_bar);

// Full certificate; requires the first-order condition to hold.
SvsReport check_assumption(const ProblemSpec& spec, const Vec& x_bar, const Vec& lambda_bar,
                           double margin = 1e-3);

// Smallest beta0 with Hess f(x_bar) + beta0 A'PA positive definite on V_C,
// by doubling plus bisection to 1e-6, then inflated by the margin.
Beta0Result compute_beta0(const ProblemSpec& spec, const Vec& x_bar, const Vec& lambda_bar,
                          double margin = 1e-3);

}  // namespace polyadmm
