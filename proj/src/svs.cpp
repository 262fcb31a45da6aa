// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include "polyadmm/svs.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "polyadmm/errors.hpp"
#include "polyadmm/linalg.hpp"

namespace polyadmm {

namespace {

Mat restricted(const Mat& m, const Mat& basis) { return basis.transpose() * m * basis; }

// Positive definiteness of Hess f + beta A'PA restricted to V_C.
bool pd_at(const Mat& hess, const Mat& apa, const Mat& basis, double beta, double tol) {
  const Mat m = restricted(hess + beta * apa, basis);
  return linalg::min_eigenvalue(m) > tol;
}

}  // namespace

FirstOrderCheck check_first_order(const ProblemSpec& spec, const Vec& x_bar,
                                  const Vec& lambda_bar) {
  if (x_bar.size() != spec.n() || lambda_bar.size() != spec.m())
    throw UsageError("check_first_order: dimension mismatch");
  if (!spec.C().contains(x_bar, kGeomTol))
    throw PreconditionError("check_first_order: x_bar is not in C");
  const Vec ax = spec.A() * x_bar;
  if (!std::isfinite(spec.g().eval(ax)))
    throw PreconditionError("check_first_order: A x_bar is outside dom g");

  FirstOrderCheck out;
  const Vec v = -(spec.f().gradient(x_bar) + spec.A().transpose() * lambda_bar);
  out.residual_x = spec.C().normal_cone_dist(x_bar, v);
  out.residual_lambda = spec.g().dist_to_subdifferential(ax, lambda_bar);
  out.ok = out.residual_x <= kOptTol && out.residual_lambda <= kOptTol;
  return out;
}

geom::Subspace critical_subspace_SA(const ProblemSpec& spec, const Vec& x_bar,
                                    const Vec& lambda_bar) {
  const Vec ax = spec.A() * x_bar;
  const geom::Subspace s = spec.g().critical_subspace(ax, lambda_bar);
  const Mat q = Mat::Identity(spec.m(), spec.m()) - s.projector();
  return geom::Subspace(linalg::nullspace(q * spec.A()), spec.n());
}

Beta0Result compute_beta0(const ProblemSpec& spec, const Vec& x_bar, const Vec& lambda_bar,
                          double margin) {
  const geom::Subspace vc = spec.C().affine_hull_subspace();
  Beta0Result out;
  if (vc.dim() == 0) {
    out.vacuous = true;
    out.zero_sentinel = true;
    out.recommended_beta_above = 0.0;
    return out;
  }
  const Vec ax = spec.A() * x_bar;
  const geom::Subspace s = spec.g().critical_subspace(ax, lambda_bar);
  const Mat p = Mat::Identity(spec.m(), spec.m()) - s.projector();
  const Mat apa = spec.A().transpose() * p * spec.A();
  const Mat hess = spec.f().hessian(x_bar);
  const double tol = kLinTol * (1.0 + hess.norm());
  const Mat& basis = vc.basis();

  if (pd_at(hess, apa, basis, 0.0, tol)) {
    out.zero_sentinel = true;
    out.raw = 0.0;
    out.value = 0.0;
    out.recommended_beta_above = 0.0;
    return out;
  }
  double hi = 1.0;
  while (!pd_at(hess, apa, basis, hi, tol)) {
    hi *= 2.0;
    if (hi > std::ldexp(1.0, 60)) {
      // Find the offending direction: the minimizing eigenvector at huge
      // beta lies along the kernel of PA inside V_C.
      const Mat m = restricted(hess + hi * apa, basis);
      Eigen::SelfAdjointEigenSolver<Mat> eig(m);
      const Vec dir = basis * eig.eigenvectors().col(0);
      std::ostringstream oss;
      oss << "compute_beta0: assumption insufficient along kernel direction [";
      for (int i = 0; i < dir.size(); ++i) oss << (i ? ", " : "") << dir(i);
      oss << "]";
      throw SolverError(oss.str());
    }
  }
  double lo = 0.0;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (pd_at(hess, apa, basis, mid, tol) ? hi : lo) = mid;
  }
  out.raw = hi;
  if (out.raw <= 2e-6) {
    out.zero_sentinel = true;
    out.raw = 0.0;
    out.value = 0.0;
    out.recommended_beta_above = 0.0;
    return out;
  }
  out.value = out.raw * (1.0 + margin);
  out.recommended_beta_above = 2.0 * out.value;
  return out;
}

SvsReport check_assumption(const ProblemSpec& spec, const Vec& x_bar, const Vec& lambda_bar,
                           double margin) {
  SvsReport rep{check_first_order(spec, x_bar, lambda_bar),
                geom::Subspace::zero(spec.m()),
                geom::Subspace::zero(spec.n()),
                geom::Subspace::zero(spec.n()),
                geom::Subspace::zero(spec.n()),
                false,
                std::nullopt,
                false,
                Mat(),
                std::nullopt};
  if (!rep.first_order.ok)
    throw PreconditionError("check_assumption: first-order condition does not hold");

  const Vec ax = spec.A() * x_bar;
  rep.S = spec.g().critical_subspace(ax, lambda_bar);
  rep.S_A = critical_subspace_SA(spec, x_bar, lambda_bar);
  rep.V_C = spec.C().affine_hull_subspace();
  rep.intersection = geom::Subspace::intersect(rep.V_C, rep.S_A);
  rep.projector_P = Mat::Identity(spec.m(), spec.m()) - rep.S.projector();
  rep.vacuous = rep.intersection.dim() == 0;
  if (rep.vacuous) {
    rep.assumption_holds = true;
  } else {
    const Mat h = restricted(spec.f().hessian(x_bar), rep.intersection.basis());
    rep.sigma = linalg::min_eigenvalue(h);
    rep.assumption_holds = *rep.sigma > kLinTol;
  }
  if (rep.assumption_holds) rep.beta0 = compute_beta0(spec, x_bar, lambda_bar, margin);
  return rep;
}

std::string SvsReport::to_text() const {
  std::ostringstream os;
  os << "first-order condition: " << (first_order.ok ? "ok" : "VIOLATED")
     << " (residual_x=" << first_order.residual_x
     << ", residual_lambda=" << first_order.residual_lambda << ")\n";
  os << "dim S=" << S.dim() << "  dim S_A=" << S_A.dim() << "  dim V_C=" << V_C.dim()
     << "  dim (V_C cap S_A)=" << intersection.dim() << "\n";
  if (vacuous) {
    os << "assumption: PASS (vacuous: intersection is {0})\n";
  } else if (assumption_holds) {
    os << "assumption: PASS (sigma=" << *sigma << ")\n";
  } else {
    os << "assumption: FAIL (sigma=" << (sigma ? *sigma : 0.0) << ")\n";
  }
  if (beta0) {
    if (beta0->vacuous) {
      os << "beta0: zero-dimensional V_C, any beta0 > 0 vacuously\n";
    } else if (beta0->zero_sentinel) {
      os << "beta0: 0+ (positive definite for every beta0 > 0); any beta > 0 is admissible "
            "locally\n";
    } else {
      os << "beta0: " << beta0->value << " (raw " << beta0->raw
         << "); local convergence uses beta > " << beta0->recommended_beta_above << "\n";
    }
  }
  return os.str();
}

}  // namespace polyadmm
