// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include "polyadmm/admm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "polyadmm/errors.hpp"

namespace polyadmm {

namespace {

// x-subproblem objective f(x) + <lambda, Ax> + beta/2 ||Ax - y||^2.
struct XObjective {
  const ProblemSpec& spec;
  double beta;
  const Vec& y;
  const Vec& lambda;

  double value(const Vec& x) const {
    const Vec ax = spec.A() * x;
    return spec.f().value(x) + lambda.dot(ax) + 0.5 * beta * (ax - y).squaredNorm();
  }
  Vec grad(const Vec& x) const {
    const Vec ax = spec.A() * x;
    return spec.f().gradient(x) + spec.A().transpose() * lambda +
           beta * spec.A().transpose() * (ax - y);
  }
  Mat hess(const Vec& x) const {
    return spec.f().hessian(x) + beta * spec.A().transpose() * spec.A();
  }
};

bool state_close(const AdmmState& a, const AdmmState& b, double tol) {
  const double dx = (a.x - b.x).lpNorm<Eigen::Infinity>();
  const double dy = (a.y - b.y).lpNorm<Eigen::Infinity>();
  const double dl = (a.lambda - b.lambda).lpNorm<Eigen::Infinity>();
  return std::max({dx, dy, dl}) <= tol;
}

double state_step(const AdmmState& a, const AdmmState& b) {
  return std::max({(a.x - b.x).lpNorm<Eigen::Infinity>(),
                   (a.y - b.y).lpNorm<Eigen::Infinity>(),
                   (a.lambda - b.lambda).lpNorm<Eigen::Infinity>()});
}

// Deterministic preference among near-equal global minimizers: value, then
// Euclidean norm, then lexicographic order.
bool better_candidate(double val_a, const Vec& a, double val_b, const Vec& b) {
  const double scale = 1.0 + std::min(std::abs(val_a), std::abs(val_b));
  if (val_a < val_b - 1e-12 * scale) return true;
  if (val_a > val_b + 1e-12 * scale) return false;
  if (a.norm() < b.norm() - 1e-12) return true;
  if (a.norm() > b.norm() + 1e-12) return false;
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i) - 1e-12) return true;
    if (a(i) > b(i) + 1e-12) return false;
  }
  return false;
}

void require_gallery_shape(const ProblemSpec& spec, const std::string& key,
                           const std::string& f_name, int n, int m) {
  if (spec.f().name() != f_name || spec.n() != n || spec.m() != m)
    throw CapabilityError("closed-form x-solver '" + key + "' does not match this problem");
  if (spec.g().fast_path() != MaxAffineFunction::FastPath::kAbs)
    throw CapabilityError("closed-form x-solver '" + key + "' expects g = |.|");
}

Vec closed_form_x(const ProblemSpec& spec, const std::string& key, double beta, const Vec& y,
                  const Vec& lambda) {
  if (key == "example1") {
    require_gallery_shape(spec, key, "neg_half_square", 1, 1);
    const double yv = y(0), lv = lambda(0);
    if (beta > 1.0) {
      const double inner = (beta * yv - lv) / (beta - 1.0);
      return Vec::Constant(1, std::min(0.25, std::max(-0.25, inner)));
    }
    // Concave subproblem: the minimum sits at an endpoint of C.
    XObjective obj{spec, beta, y, lambda};
    const Vec lo = Vec::Constant(1, -0.25), hi = Vec::Constant(1, 0.25);
    return better_candidate(obj.value(lo), lo, obj.value(hi), hi) ? lo : hi;
  }
  if (key == "example2") {
    require_gallery_shape(spec, key, "x1_cos_x2", 2, 1);
    // For fixed c = cos(x2) the x1-minimization is quadratic; the optimal c
    // is an endpoint of [-1, 1]. x2 is reported as acos(c) in [0, pi].
    const double yv = y(0), lv = lambda(0);
    Vec best;
    double best_val = kInf;
    for (const double c : {1.0, -1.0}) {
      const double t = c + lv;
      const double val = t * yv - t * t / (2.0 * beta);
      Vec cand(2);
      cand << yv - t / beta, std::acos(c);
      if (best.size() == 0 || better_candidate(val, cand, best_val, best)) {
        best = cand;
        best_val = val;
      }
    }
    return best;
  }
  if (key == "example3") {
    require_gallery_shape(spec, key, "neg_cube_abs", 1, 1);
    const double yv = y(0), lv = lambda(0);
    XObjective obj{spec, beta, y, lambda};
    std::vector<double> cand = {-1.0, 0.0, 1.0};
    // Stationary points of the two smooth branches of -|x|^3/3.
    const double disc_pos = beta * beta - 4.0 * (beta * yv - lv);
    if (disc_pos >= 0.0) {
      for (const double s : {1.0, -1.0}) {
        const double r = (beta + s * std::sqrt(disc_pos)) / 2.0;
        if (r >= 0.0 && r <= 1.0) cand.push_back(r);
      }
    }
    const double disc_neg = beta * beta - 4.0 * (lv - beta * yv);
    if (disc_neg >= 0.0) {
      for (const double s : {1.0, -1.0}) {
        const double r = (-beta + s * std::sqrt(disc_neg)) / 2.0;
        if (r >= -1.0 && r <= 0.0) cand.push_back(r);
      }
    }
    Vec best;
    double best_val = kInf;
    for (double c : cand) {
      Vec v = Vec::Constant(1, c);
      const double val = obj.value(v);
      if (best.size() == 0 || better_candidate(val, v, best_val, best)) {
        best = v;
        best_val = val;
      }
    }
    return best;
  }
  throw CapabilityError("unknown closed-form x-solver key '" + key + "'");
}

// 1-D polish: locate a stationary point of the objective inside [a, b] by
// derivative bisection with Newton acceleration; falls back to the better
// endpoint when the derivative does not change sign.
double polish_interval(const XObjective& obj, double a, double b) {
  auto dphi = [&](double x) { return obj.grad(Vec::Constant(1, x))(0); };
  double da = dphi(a), db = dphi(b);
  if (da >= 0.0 && db >= 0.0) return a;
  if (da <= 0.0 && db <= 0.0) return b;
  double lo = a, hi = b;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double d = dphi(x);
    if (d > 0.0)
      hi = x;
    else
      lo = x;
    double next = x - d / std::max(1e-300, obj.hess(Vec::Constant(1, x))(0, 0));
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-17 * (1.0 + std::abs(x))) return next;
    x = next;
  }
  return x;
}

std::pair<double, double> axis_bounds(const ConvexSet& c, int axis, double radius) {
  switch (c.kind()) {
    case ConvexSet::Kind::kBox:
      return {c.box_lower()(axis), c.box_upper()(axis)};
    case ConvexSet::Kind::kWholeSpace:
      return {-radius, radius};
    default:
      throw CapabilityError("global grid x-solver supports box or whole-space C only");
  }
}

XUpdateResult global_grid_x(const ProblemSpec& spec, const Global1dX& opt, double beta,
                            const Vec& y, const Vec& lambda) {
  const int n = spec.n();
  XObjective obj{spec, beta, y, lambda};
  if (n == 1) {
    auto [lo, hi] = axis_bounds(spec.C(), 0, opt.search_radius);
    const int np = std::max(opt.grid_points, 32);
    const double step = (hi - lo) / (np - 1);
    std::vector<double> vals(np);
    for (int i = 0; i < np; ++i) vals[i] = obj.value(Vec::Constant(1, lo + i * step));
    // Local grid minima, best ones polished inside their bracket.
    std::vector<std::pair<double, int>> minima;
    for (int i = 0; i < np; ++i) {
      const bool left_ok = (i == 0) || vals[i] <= vals[i - 1];
      const bool right_ok = (i == np - 1) || vals[i] <= vals[i + 1];
      if (left_ok && right_ok) minima.push_back({vals[i], i});
    }
    std::sort(minima.begin(), minima.end());
    Vec best;
    double best_val = kInf;
    const int limit = std::min<int>(opt.top_candidates, static_cast<int>(minima.size()));
    for (int k = 0; k < limit; ++k) {
      const int i = minima[k].second;
      const double a = std::max(lo, lo + (i - 1) * step);
      const double b = std::min(hi, lo + (i + 1) * step);
      const double xs = polish_interval(obj, a, b);
      for (double c : {xs, a, b}) {
        Vec v = Vec::Constant(1, std::min(hi, std::max(lo, c)));
        const double val = obj.value(v);
        if (best.size() == 0 || better_candidate(val, v, best_val, best)) {
          best = v;
          best_val = val;
        }
      }
    }
    return {best, true};
  }
  if (n == 2) {
    auto [lo0, hi0] = axis_bounds(spec.C(), 0, opt.search_radius);
    auto [lo1, hi1] = axis_bounds(spec.C(), 1, opt.search_radius);
    const int np = std::max(static_cast<int>(std::sqrt(static_cast<double>(opt.grid_points))), 32);
    const double s0 = (hi0 - lo0) / (np - 1), s1 = (hi1 - lo1) / (np - 1);
    std::vector<std::pair<double, std::pair<int, int>>> cells;
    cells.reserve(static_cast<size_t>(np) * np);
    Vec v(2);
    for (int i = 0; i < np; ++i) {
      for (int j = 0; j < np; ++j) {
        v << lo0 + i * s0, lo1 + j * s1;
        cells.push_back({obj.value(v), {i, j}});
      }
    }
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Vec best;
    double best_val = kInf;
    const int limit = std::min<int>(opt.top_candidates, static_cast<int>(cells.size()));
    for (int k = 0; k < limit; ++k) {
      Vec x(2);
      x << lo0 + cells[k].second.first * s0, lo1 + cells[k].second.second * s1;
      // Clamped Newton with gradient fallback.
      for (int it = 0; it < 80; ++it) {
        const Vec g = obj.grad(x);
        const Mat h = obj.hess(x);
        Vec step;
        const Eigen::LDLT<Mat> ldlt(h);
        if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
          step = -ldlt.solve(g);
        } else {
          step = -g / std::max(1.0, h.norm());
        }
        Vec xn = x + step;
        xn(0) = std::min(hi0, std::max(lo0, xn(0)));
        xn(1) = std::min(hi1, std::max(lo1, xn(1)));
        if (obj.value(xn) > obj.value(x)) {
          double t = 0.5;
          while (t > 1e-12 && obj.value(x + t * step) > obj.value(x)) t *= 0.5;
          xn = x + t * step;
          xn(0) = std::min(hi0, std::max(lo0, xn(0)));
          xn(1) = std::min(hi1, std::max(lo1, xn(1)));
        }
        if ((xn - x).norm() <= 1e-15 * (1.0 + x.norm())) {
          x = xn;
          break;
        }
        x = xn;
      }
      const double val = obj.value(x);
      if (best.size() == 0 || better_candidate(val, x, best_val, best)) {
        best = x;
        best_val = val;
      }
    }
    return {best, true};
  }
  throw CapabilityError("global grid x-solver requires n <= 2");
}

XUpdateResult projected_gradient_x(const ProblemSpec& spec, const ProjGradX& opt, double beta,
                                   const Vec& y, const Vec& lambda, const Vec& start) {
  XObjective obj{spec, beta, y, lambda};
  Vec x = spec.C().project(start);
  double t = 1.0;
  for (int it = 0; it < opt.max_iter; ++it) {
    const Vec g = obj.grad(x);
    const double fx = obj.value(x);
    Vec xn;
    double tt = t;
    for (int ls = 0; ls < 60; ++ls) {
      xn = spec.C().project(x - tt * g);
      if (obj.value(xn) <= fx - 1e-4 / tt * (xn - x).squaredNorm() + 1e-16) break;
      tt *= 0.5;
    }
    t = std::min(1.0, tt * 2.0);
    const double move = (xn - x).norm();
    x = xn;
    if (move <= opt.tol * (1.0 + x.norm())) break;
  }
  return {x, false};
}

}  // namespace

void AdmmConfig::validate() const {
  if (!(beta > 0.0)) throw UsageError("AdmmConfig: beta must be positive");
  if (max_iter < 1) throw UsageError("AdmmConfig: max_iter must be >= 1");
  if (!(eps_pri > 0.0) || !(eps_dua > 0.0))
    throw UsageError("AdmmConfig: residual tolerances must be positive");
  if (cycle_window < 1) throw UsageError("AdmmConfig: cycle_window must be >= 1");
  if (!(cycle_tol > 0.0)) throw UsageError("AdmmConfig: cycle_tol must be positive");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kConverged:
      return "converged";
    case Termination::kMaxIter:
      return "max_iter";
    case Termination::kCycleDetected:
      return "cycle_detected";
    case Termination::kSolverError:
      return "solver_error";
  }
  return "unknown";
}

XUpdateResult x_update(const ProblemSpec& spec, const AdmmConfig& cfg, const Vec& y,
                       const Vec& lambda, const std::optional<Vec>& warm) {
  if (y.size() != spec.m() || lambda.size() != spec.m())
    throw UsageError("x_update: state dimension mismatch");
  if (const auto* cf = std::get_if<ClosedFormX>(&cfg.x_solver))
    return {closed_form_x(spec, cf->key, cfg.beta, y, lambda), true};
  if (const auto* gg = std::get_if<Global1dX>(&cfg.x_solver))
    return global_grid_x(spec, *gg, cfg.beta, y, lambda);
  const auto& pg = std::get<ProjGradX>(cfg.x_solver);
  return projected_gradient_x(spec, pg, cfg.beta, y, lambda,
                              warm ? *warm : spec.feasibility_witness());
}

YUpdateResult y_update(const ProblemSpec& spec, const AdmmConfig& cfg, const Vec& x,
                       const Vec& lambda) {
  const Vec ax = spec.A() * x;
  ProxOptions popt;
  popt.force_qp = (cfg.prox_method == ProxMethod::kQp);
  const ProxResult pr =
      spec.g().prox(MoreauParams(1.0 / cfg.beta), ax + lambda / cfg.beta, popt);
  return {pr.point, lambda + cfg.beta * (ax - pr.point)};
}

Vec lambda_update(double beta, const Vec& lambda, const Vec& ax, const Vec& y) {
  return lambda + beta * (ax - y);
}

std::optional<CycleInfo> detect_cycle(const std::vector<AdmmState>& states, int window,
                                      double tol) {
  const int k = static_cast<int>(states.size());
  if (window < 1 || k < 2 * window) return std::nullopt;
  for (int p = 1; p <= window; ++p) {
    bool match = true;
    for (int i = k - p; i < k && match; ++i)
      match = state_close(states[i], states[i - p], tol);
    if (!match) continue;
    if (p == 1) {
      CycleInfo info;
      info.period = 1;
      info.fixed_point = true;
      info.states = {states.back()};
      return info;
    }
    // A genuine cycle has nontrivial amplitude; a converging tail does not.
    double amplitude = 0.0;
    for (int i = k - p; i < k - 1; ++i)
      amplitude = std::max(amplitude, state_step(states[i + 1], states[i]));
    amplitude = std::max(amplitude, state_step(states[k - p], states.back()));
    if (amplitude <= 1e3 * tol) continue;
    CycleInfo info;
    info.period = p;
    info.states.assign(states.end() - p, states.end());
    return info;
  }
  return std::nullopt;
}

IterateTrace run(const ProblemSpec& spec, const AdmmConfig& cfg, const Vec& y0,
                 const Vec& lambda0, const std::optional<Reference>& reference) {
  cfg.validate();
  if (y0.size() != spec.m() || lambda0.size() != spec.m())
    throw UsageError("run: initial state dimension mismatch");

  IterateTrace trace;
  trace.y0 = y0;
  trace.lambda0 = lambda0;
  trace.beta = cfg.beta;
  trace.init_dual_feasible =
      spec.g().dist_to_subdifferential(y0, lambda0) <= kOptTol * (1.0 + lambda0.norm());
  if (reference) {
    const Vec ybar = spec.A() * reference->x_bar;
    trace.init_ball_radius_sq = cfg.beta * cfg.beta * (y0 - ybar).squaredNorm() +
                                (lambda0 - reference->lambda_bar).squaredNorm();
  }

  Vec y = y0, lambda = lambda0;
  Vec x_prev = spec.feasibility_witness();  // scheme-4 seed and warm start
  try {
    for (int k = 1; k <= cfg.max_iter; ++k) {
      AdmmState st;
      st.k = k;
      if (cfg.variant == AdmmVariant::kScheme3) {
        const XUpdateResult xr = x_update(spec, cfg, y, lambda, x_prev);
        trace.x_solver_global_certified =
            trace.x_solver_global_certified && xr.global_certified;
        const YUpdateResult yr = y_update(spec, cfg, xr.x, lambda);
        st.x = xr.x;
        st.y = yr.y;
        st.lambda = lambda_update(cfg.beta, lambda, spec.A() * xr.x, yr.y);
      } else {
        // Scheme 4: y first against the previous x.
        const Vec ax_prev = spec.A() * x_prev;
        const ProxOptions popt{cfg.prox_method == ProxMethod::kQp, std::nullopt};
        const ProxResult pr =
            spec.g().prox(MoreauParams(1.0 / cfg.beta), ax_prev + lambda / cfg.beta, popt);
        const XUpdateResult xr = x_update(spec, cfg, pr.point, lambda, x_prev);
        trace.x_solver_global_certified =
            trace.x_solver_global_certified && xr.global_certified;
        st.x = xr.x;
        st.y = pr.point;
        st.lambda = lambda_update(cfg.beta, lambda, spec.A() * xr.x, pr.point);
      }

      IterDiagnostics d;
      const Vec ax = spec.A() * st.x;
      d.r_pri = (ax - st.y).norm();
      d.r_dua = cfg.beta * (spec.A().transpose() * (st.y - y)).norm();
      if (reference) {
        const Vec ybar = spec.A() * reference->x_bar;
        d.s_k = (st.x - reference->x_bar).norm() + (st.y - ybar).norm() +
                (st.lambda - reference->lambda_bar).norm();
        d.lyapunov = 0.5 * cfg.beta * (st.y - ybar).squaredNorm() +
                     (st.lambda - reference->lambda_bar).squaredNorm() / (2.0 * cfg.beta);
      }
      if (cfg.check_dual_feasibility)
        d.dual_feas_dist = spec.g().dist_to_subdifferential(st.y, st.lambda);

      trace.states.push_back(st);
      trace.diag.push_back(d);

      if (auto cyc = detect_cycle(trace.states, cfg.cycle_window, cfg.cycle_tol);
          cyc && !cyc->fixed_point) {
        trace.cycle = cyc;
        trace.termination = Termination::kCycleDetected;
        return trace;
      }
      if (d.r_pri <= cfg.eps_pri && d.r_dua <= cfg.eps_dua) {
        trace.termination = Termination::kConverged;
        return trace;
      }
      x_prev = st.x;
      y = st.y;
      lambda = st.lambda;
    }
  } catch (const Error& err) {
    trace.termination = Termination::kSolverError;
    trace.error_message = err.what();
    return trace;
  }
  trace.termination = Termination::kMaxIter;
  return trace;
}

void write_trace_csv(std::ostream& os, const IterateTrace& trace,
                     const std::vector<std::pair<std::string, std::string>>& extra_meta) {
  const int n = trace.states.empty() ? 0 : static_cast<int>(trace.states.front().x.size());
  const int m = static_cast<int>(trace.y0.size());
  os << "k";
  for (int i = 0; i < n; ++i) os << ",x" << i;
  for (int i = 0; i < m; ++i) os << ",y" << i;
  for (int i = 0; i < m; ++i) os << ",lambda" << i;
  os << ",r_pri,r_dua,s_k,lyapunov,descent_slack\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << ',' << buf;
  };
  for (size_t i = 0; i < trace.states.size(); ++i) {
    const AdmmState& st = trace.states[i];
    const IterDiagnostics& d = trace.diag[i];
    os << st.k;
    for (int j = 0; j < n; ++j) put(st.x(j));
    for (int j = 0; j < m; ++j) put(st.y(j));
    for (int j = 0; j < m; ++j) put(st.lambda(j));
    put(d.r_pri);
    put(d.r_dua);
    put(d.s_k);
    put(d.lyapunov);
    put(d.descent_slack);
    os << '\n';
  }
  os << "# termination=" << to_string(trace.termination)
     << " iterations=" << trace.states.size();
  for (const auto& [k, v] : extra_meta) os << ' ' << k << '=' << v;
  os << '\n';
}

}  // namespace polyadmm
