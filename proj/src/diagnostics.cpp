// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include "polyadmm/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "polyadmm/errors.hpp"
#include "polyadmm/svs.hpp"

namespace polyadmm {

namespace {

constexpr double kDistFloor = 1e-13;

// Least-squares slope/intercept of log(d) against k.
std::pair<double, double> log_fit(const std::vector<std::pair<int, double>>& pts) {
  const double n = static_cast<double>(pts.size());
  double sk = 0.0, sv = 0.0, skk = 0.0, skv = 0.0;
  for (const auto& [k, d] : pts) {
    const double v = std::log(d);
    sk += k;
    sv += v;
    skk += static_cast<double>(k) * k;
    skv += k * v;
  }
  const double denom = n * skk - sk * sk;
  const double slope = denom != 0.0 ? (n * skv - sk * sv) / denom : 0.0;
  const double intercept = (sv - slope * sk) / n;
  return {slope, intercept};
}

}  // namespace

DiagnosticsConfig DiagnosticsConfig::from_reference(const ProblemSpec& spec, Reference reference,
                                                    double theta, double margin) {
  DiagnosticsConfig cfg;
  cfg.theta = theta;
  cfg.reference = std::move(reference);
  const SvsReport rep = check_assumption(spec, cfg.reference.x_bar, cfg.reference.lambda_bar,
                                         margin);
  cfg.projector_P = rep.projector_P;
  cfg.beta0 = 1e-6;
  if (rep.beta0 && !rep.beta0->zero_sentinel) cfg.beta0 = rep.beta0->value;
  cfg.validate(spec);
  return cfg;
}

void DiagnosticsConfig::validate(const ProblemSpec& spec) const {
  if (theta < 0.0 || theta > 1.0) throw UsageError("DiagnosticsConfig: theta must be in [0,1]");
  if (!(beta0 > 0.0)) throw UsageError("DiagnosticsConfig: beta0 must be positive");
  if (projector_P.rows() != spec.m() || projector_P.cols() != spec.m())
    throw UsageError("DiagnosticsConfig: projector dimension mismatch");
  if (reference.x_bar.size() != spec.n() || reference.lambda_bar.size() != spec.m())
    throw UsageError("DiagnosticsConfig: reference dimension mismatch");
}

double reduced_lagrangian(const ProblemSpec& spec, double beta, const Vec& x,
                          const Vec& lambda) {
  if (!(beta > 0.0)) throw UsageError("reduced_lagrangian: beta must be positive");
  if (!spec.C().contains(x, kGeomTol)) return kInf;
  const Vec w = spec.A() * x + lambda / beta;
  return spec.f().value(x) + spec.g().moreau_value(MoreauParams(1.0 / beta), w) -
         lambda.squaredNorm() / (2.0 * beta);
}

ResidualBreakdown residual_T(const ProblemSpec& spec, const Vec& x_bar, const Vec& x,
                             const Vec& y, const Vec& lambda) {
  if (!spec.C().contains(x, kGeomTol))
    throw PreconditionError("residual_T: x is not in C");
  ResidualBreakdown out;
  const Vec v = -(spec.f().gradient(x_bar) + spec.f().hessian(x_bar) * (x - x_bar) +
                  spec.A().transpose() * lambda);
  out.block_x = spec.C().normal_cone_dist(x, v);
  out.block_g = spec.g().dist_to_subdifferential(y, lambda);
  out.block_feas = (spec.A() * x - y).norm();
  out.total = std::sqrt(out.block_x * out.block_x + out.block_g * out.block_g +
                        out.block_feas * out.block_feas);
  return out;
}

DescentSlack descent_slack(const ProblemSpec& spec, const DiagnosticsConfig& cfg, double beta,
                           const Vec& y_prev, const Vec& lambda_prev, const AdmmState& next,
                           const Vec& lambda_star) {
  cfg.validate(spec);
  if (!(beta > 0.0)) throw UsageError("descent_slack: beta must be positive");
  const Vec y_bar = spec.A() * cfg.reference.x_bar;
  const double lhs =
      reduced_lagrangian(spec, cfg.beta0, next.x, lambda_star) -
      reduced_lagrangian(spec, cfg.beta0, cfg.reference.x_bar, lambda_star) +
      0.5 * (cfg.theta * beta - cfg.beta0) *
          (next.x - cfg.reference.x_bar)
              .dot(spec.A().transpose() * cfg.projector_P * spec.A() *
                   (next.x - cfg.reference.x_bar));
  const double rhs =
      0.5 * beta * ((y_prev - y_bar).squaredNorm() - (next.y - y_bar).squaredNorm()) +
      ((lambda_prev - lambda_star).squaredNorm() - (next.lambda - lambda_star).squaredNorm()) /
          (2.0 * beta) -
      0.5 * beta * (next.y - y_prev).squaredNorm() -
      ((1.0 - cfg.theta) * beta - cfg.beta0) / (2.0 * beta * beta) *
          (next.lambda - lambda_prev).squaredNorm();
  DescentSlack out;
  out.slack = rhs - lhs;
  out.held = out.slack >= -kOptTol;
  if (!out.held) out.note = "descent inequality violated: local hypotheses not met here";
  return out;
}

RateReport rate_estimate(const ProblemSpec& spec, const IterateTrace& trace,
                         const Reference& reference, double tail_fraction) {
  if (trace.termination != Termination::kConverged)
    throw UsageError("rate_estimate: trace did not converge");
  if (tail_fraction <= 0.0 || tail_fraction > 1.0)
    throw UsageError("rate_estimate: tail_fraction must be in (0,1]");
  const int total = static_cast<int>(trace.states.size());
  if (total < 2) throw UsageError("rate_estimate: tail too short");

  const AdmmState& lim = trace.states.back();
  auto vdist = [&](const AdmmState& s) {
    return std::sqrt((s.y - lim.y).squaredNorm() + (s.lambda - lim.lambda).squaredNorm());
  };
  auto udist = [&](const AdmmState& s) {
    return std::sqrt((s.x - lim.x).squaredNorm() + (s.y - lim.y).squaredNorm() +
                     (s.lambda - lim.lambda).squaredNorm());
  };

  // Valid iterates sit above the double-precision floor; the tail is the
  // last fraction of those.
  RateReport out;
  std::vector<int> valid;
  for (int i = 0; i < total; ++i)
    if (vdist(trace.states[i]) > kDistFloor) valid.push_back(i);
  if (valid.size() < 2) {
    out.below_floor = true;
    return out;
  }
  const int tail_len =
      std::max(2, static_cast<int>(std::ceil(tail_fraction * static_cast<double>(valid.size()))));
  valid.erase(valid.begin(),
              valid.begin() + std::max(0, static_cast<int>(valid.size()) - tail_len));
  const int start = valid.front();

  std::vector<std::pair<int, double>> vpts, xpts;
  for (int i : valid) {
    vpts.push_back({trace.states[i].k, vdist(trace.states[i])});
    const double dx = (trace.states[i].x - reference.x_bar).norm();
    if (dx > kDistFloor) xpts.push_back({trace.states[i].k, dx});
  }
  for (size_t i = 0; i + 1 < vpts.size(); ++i)
    if (vpts[i + 1].first == vpts[i].first + 1)
      out.q_ratios.push_back(vpts[i + 1].second / vpts[i].second);
  const auto [slope, intercept] = log_fit(vpts);
  (void)intercept;
  out.fitted_rho = std::exp(slope);
  if (xpts.size() >= 2) {
    const auto [sx, ix] = log_fit(xpts);
    out.r_linear_rho = std::exp(sx);
    out.r_linear_C = std::exp(ix);
  }

  double kmin = kInf, kmax = 0.0;
  for (int i = start; i < total; ++i) {
    if (vdist(trace.states[i]) <= kDistFloor) continue;
    const double d = udist(trace.states[i]);
    if (d <= kDistFloor) continue;
    const ResidualBreakdown rb = residual_T(spec, reference.x_bar, trace.states[i].x,
                                            trace.states[i].y, trace.states[i].lambda);
    if (rb.total <= kDistFloor) continue;
    const double kappa = d / rb.total;
    kmin = std::min(kmin, kappa);
    kmax = std::max(kmax, kappa);
  }
  if (kmax > 0.0) {
    out.kappa_estimate = kmax;
    out.kappa_min = kmin;
    out.kappa_max = kmax;
  }
  return out;
}

void annotate_trace(IterateTrace& trace, const ProblemSpec& spec,
                    const DiagnosticsConfig& cfg) {
  cfg.validate(spec);
  const Vec y_bar = spec.A() * cfg.reference.x_bar;
  const Vec lambda_star = cfg.lambda_star ? *cfg.lambda_star : cfg.reference.lambda_bar;
  const double beta = trace.beta;
  for (size_t i = 0; i < trace.states.size(); ++i) {
    const AdmmState& st = trace.states[i];
    IterDiagnostics& d = trace.diag[i];
    d.s_k = (st.x - cfg.reference.x_bar).norm() + (st.y - y_bar).norm() +
            (st.lambda - cfg.reference.lambda_bar).norm();
    d.lyapunov = 0.5 * beta * (st.y - y_bar).squaredNorm() +
                 (st.lambda - lambda_star).squaredNorm() / (2.0 * beta);
    const Vec& yp = i == 0 ? trace.y0 : trace.states[i - 1].y;
    const Vec& lp = i == 0 ? trace.lambda0 : trace.states[i - 1].lambda;
    d.descent_slack = descent_slack(spec, cfg, beta, yp, lp, st, lambda_star).slack;
    d.dual_feas_dist = spec.g().dist_to_subdifferential(st.y, st.lambda);
  }
}

}  // namespace polyadmm
