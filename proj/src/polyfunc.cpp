// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include "polyadmm/polyfunc.hpp"

#include <algorithm>
#include <cmath>

#include "polyadmm/errors.hpp"
#include "polyadmm/linalg.hpp"
#include "polyadmm/qp.hpp"

namespace polyadmm {

namespace {

double soft_threshold(double w, double mu) {
  if (w > mu) return w - mu;
  if (w < -mu) return w + mu;
  return 0.0;
}

}  // namespace

MoreauParams::MoreauParams(double mu_in) : mu(mu_in) {
  if (!(mu > 0.0)) throw UsageError("MoreauParams: mu must be positive");
}

MaxAffineFunction::MaxAffineFunction(Mat a, Vec b, geom::Polyhedron domain, Vec witness,
                                     FastPath fp)
    : pieces_a_(std::move(a)),
      pieces_b_(std::move(b)),
      domain_(std::move(domain)),
      domain_witness_(std::move(witness)),
      fast_path_(fp) {}

MaxAffineFunction MaxAffineFunction::from_pieces(Mat a, Vec b,
                                                 std::optional<geom::Polyhedron> domain) {
  if (a.rows() == 0) throw InvariantError("MaxAffineFunction: needs at least one piece");
  if (b.size() != a.rows()) throw InvariantError("MaxAffineFunction: piece offset count mismatch");
  const int dim = static_cast<int>(a.cols());
  geom::Polyhedron d = domain ? std::move(*domain) : geom::Polyhedron::whole_space(dim);
  if (d.dim() != dim) throw InvariantError("MaxAffineFunction: domain dimension mismatch");
  Vec witness;
  try {
    witness = d.any_point();  // certifies dom g nonempty
  } catch (const InvariantError&) {
    throw InvariantError("MaxAffineFunction: empty domain");
  }
  FastPath fp = FastPath::kNone;
  if (a.rows() == 1 && d.hrep().G.rows() == 0) fp = FastPath::kSingleAffine;
  return MaxAffineFunction(std::move(a), std::move(b), std::move(d), std::move(witness), fp);
}

MaxAffineFunction MaxAffineFunction::abs1d() {
  Mat a(2, 1);
  a << 1.0, -1.0;
  auto f = from_pieces(a, Vec::Zero(2));
  f.fast_path_ = FastPath::kAbs;
  return f;
}

MaxAffineFunction MaxAffineFunction::l1(int dim) {
  if (dim < 1 || dim > 16) throw UsageError("MaxAffineFunction::l1: dim must be in [1, 16]");
  const int np = 1 << dim;
  Mat a(np, dim);
  for (int p = 0; p < np; ++p)
    for (int j = 0; j < dim; ++j) a(p, j) = (p >> j) & 1 ? 1.0 : -1.0;
  auto f = from_pieces(a, Vec::Zero(np));
  f.fast_path_ = FastPath::kL1;
  return f;
}

MaxAffineFunction MaxAffineFunction::box_indicator(const Vec& lower, const Vec& upper) {
  const int dim = static_cast<int>(lower.size());
  if (upper.size() != dim) throw UsageError("box_indicator: bound dimension mismatch");
  for (int i = 0; i < dim; ++i) {
    if (!std::isfinite(lower(i)) || !std::isfinite(upper(i)))
      throw UsageError("box_indicator: bounds must be finite");
    if (lower(i) > upper(i)) throw InvariantError("box_indicator: lower > upper");
  }
  Mat g(2 * dim, dim);
  Vec h(2 * dim);
  g.topRows(dim) = Mat::Identity(dim, dim);
  h.head(dim) = upper;
  g.bottomRows(dim) = -Mat::Identity(dim, dim);
  h.tail(dim) = -lower;
  auto f = from_pieces(Mat::Zero(1, dim), Vec::Zero(1),
                       geom::Polyhedron::from_inequalities(g, h));
  f.fast_path_ = FastPath::kBoxIndicator;
  f.box_lower_ = lower;
  f.box_upper_ = upper;
  return f;
}

double MaxAffineFunction::eval(const Vec& y) const {
  if (y.size() != dim()) throw UsageError("MaxAffineFunction::eval: dimension mismatch");
  if (!domain_.contains(y, kGeomTol)) return kInf;
  return (pieces_a_ * y + pieces_b_).maxCoeff();
}

std::vector<int> MaxAffineFunction::active_pieces(const Vec& y) const {
  const Vec vals = pieces_a_ * y + pieces_b_;
  const double gmax = vals.maxCoeff();
  std::vector<int> act;
  for (int i = 0; i < vals.size(); ++i)
    if (gmax - vals(i) <= kActiveTol * (1.0 + std::abs(gmax))) act.push_back(i);
  return act;
}

std::vector<int> MaxAffineFunction::active_domain_rows(const Vec& y) const {
  const geom::HRep& hr = domain_.hrep();
  std::vector<int> act;
  for (int i = 0; i < hr.G.rows(); ++i)
    if (hr.h(i) - hr.G.row(i).dot(y) <= kActiveTol * (1.0 + std::abs(hr.h(i)))) act.push_back(i);
  return act;
}

void MaxAffineFunction::require_member(const Vec& y) const {
  if (!std::isfinite(eval(y)))
    throw PreconditionError("MaxAffineFunction: point outside the domain");
}

void MaxAffineFunction::require_subgradient(const Vec& y, const Vec& lambda) const {
  require_member(y);
  const double d = dist_to_subdifferential(y, lambda);
  if (d > kOptTol * (1.0 + lambda.norm()))
    throw PreconditionError("MaxAffineFunction: multiplier is not a subgradient, distance " +
                            std::to_string(d));
}

double MaxAffineFunction::directional_derivative(const Vec& y, const Vec& w) const {
  require_member(y);
  if (w.size() != dim()) throw UsageError("directional_derivative: dimension mismatch");
  const geom::HRep& hr = domain_.hrep();
  for (int i : active_domain_rows(y))
    if (hr.G.row(i).dot(w) > kActiveTol * (1.0 + w.norm())) return kInf;
  const auto act = active_pieces(y);
  double dd = -kInf;
  for (int j : act) dd = std::max(dd, pieces_a_.row(j).dot(w));
  return dd;
}

geom::Polyhedron MaxAffineFunction::subdifferential(const Vec& y) const {
  require_member(y);
  const auto act = active_pieces(y);
  const auto drows = active_domain_rows(y);
  geom::VRep vr;
  vr.points = Mat(dim(), static_cast<int>(act.size()));
  for (int k = 0; k < static_cast<int>(act.size()); ++k)
    vr.points.col(k) = pieces_a_.row(act[k]).transpose();
  vr.rays = Mat(dim(), static_cast<int>(drows.size()));
  const geom::HRep& hr = domain_.hrep();
  for (int k = 0; k < static_cast<int>(drows.size()); ++k)
    vr.rays.col(k) = hr.G.row(drows[k]).transpose();
  vr.lineality = Mat(dim(), 0);
  return geom::Polyhedron::from_generators(std::move(vr), dim());
}

double MaxAffineFunction::dist_to_subdifferential(const Vec& y, const Vec& lambda) const {
  return subdifferential(y).distance(lambda);
}

ProxResult MaxAffineFunction::prox_qp(const MoreauParams& p, const Vec& w,
                                      const std::optional<Vec>& hint) const {
  const int m = dim();
  const int np = num_pieces();
  const geom::HRep& hr = domain_.hrep();
  const int nd = static_cast<int>(hr.G.rows());

  // Epigraph form in (z, t): min t + 1/(2 mu)||z - w||^2
  // s.t. a_i'z - t <= -b_i and H z <= h.
  qp::Problem qpp;
  qpp.Q = Mat::Zero(m + 1, m + 1);
  qpp.Q.topLeftCorner(m, m) = Mat::Identity(m, m) / p.mu;
  qpp.c = Vec::Zero(m + 1);
  qpp.c.head(m) = -w / p.mu;
  qpp.c(m) = 1.0;
  qpp.G = Mat::Zero(np + nd, m + 1);
  qpp.h = Vec::Zero(np + nd);
  qpp.G.topLeftCorner(np, m) = pieces_a_;
  qpp.G.topRightCorner(np, 1).setConstant(-1.0);
  qpp.h.head(np) = -pieces_b_;
  if (nd > 0) {
    qpp.G.bottomLeftCorner(nd, m) = hr.G;
    qpp.h.tail(nd) = hr.h;
  }
  qpp.E = Mat(0, m + 1);
  qpp.e = Vec(0);

  Vec z0 = domain_witness_;
  if (hint && hint->size() == m) {
    z0 = domain_.contains(*hint, kGeomTol) ? *hint : domain_.project(*hint);
  }
  Vec start(m + 1);
  start.head(m) = z0;
  start(m) = (pieces_a_ * z0 + pieces_b_).maxCoeff();

  const qp::Result r = qp::solve(qpp, start);
  if (r.status != qp::Status::kOptimal)
    throw SolverError("prox QP did not converge; residual " + std::to_string(r.kkt_residual));

  ProxResult out;
  out.point = r.x.head(m);
  out.multiplier = (w - out.point) / p.mu;
  const double gval = (pieces_a_ * out.point + pieces_b_).maxCoeff();
  out.value = gval + (out.point - w).squaredNorm() / (2.0 * p.mu);
  return out;
}

ProxResult MaxAffineFunction::prox(const MoreauParams& p, const Vec& w,
                                   const ProxOptions& opt) const {
  if (w.size() != dim()) throw UsageError("prox: dimension mismatch");
  if (!opt.force_qp) {
    switch (fast_path_) {
      case FastPath::kAbs:
      case FastPath::kL1: {
        ProxResult out;
        out.point = Vec(dim());
        for (int i = 0; i < dim(); ++i) out.point(i) = soft_threshold(w(i), p.mu);
        out.multiplier = (w - out.point) / p.mu;
        out.value = out.point.lpNorm<1>() + (out.point - w).squaredNorm() / (2.0 * p.mu);
        return out;
      }
      case FastPath::kBoxIndicator: {
        ProxResult out;
        out.point = w.cwiseMax(box_lower_).cwiseMin(box_upper_);
        out.multiplier = (w - out.point) / p.mu;
        out.value = (out.point - w).squaredNorm() / (2.0 * p.mu);
        return out;
      }
      case FastPath::kSingleAffine: {
        ProxResult out;
        const Vec a = pieces_a_.row(0).transpose();
        out.point = w - p.mu * a;
        out.multiplier = a;
        out.value = a.dot(out.point) + pieces_b_(0) + p.mu * a.squaredNorm() / 2.0;
        return out;
      }
      case FastPath::kNone:
        break;
    }
  }
  return prox_qp(p, w, opt.start_hint);
}

double MaxAffineFunction::moreau_value(const MoreauParams& p, const Vec& w) const {
  return prox(p, w).value;
}

Vec MaxAffineFunction::moreau_grad(const MoreauParams& p, const Vec& w) const {
  return prox(p, w).multiplier;
}

std::optional<Mat> MaxAffineFunction::moreau_hessian_if_exists(const MoreauParams& p,
                                                               const Vec& w) const {
  const ProxResult pr = prox(p, w);
  const geom::Polyhedron sub = subdifferential(pr.point);
  const Vec lam = sub.project(pr.multiplier);
  if (!sub.in_relative_interior(lam)) return std::nullopt;
  const geom::Subspace v = sub.affine_hull_directions();
  return (1.0 / p.mu) * v.projector();
}

geom::PolyhedralCone MaxAffineFunction::tangent_cone_of_subdiff(const Vec& y,
                                                                const Vec& lambda) const {
  require_subgradient(y, lambda);
  const geom::Polyhedron sub = subdifferential(y);
  return sub.tangent_cone_at(sub.project(lambda));
}

geom::PolyhedralCone MaxAffineFunction::tangent_set(const Vec& y, const Vec& lambda) const {
  require_subgradient(y, lambda);
  const auto act = active_pieces(y);
  const auto drows = active_domain_rows(y);
  const geom::HRep& hr = domain_.hrep();
  Mat rows(static_cast<int>(act.size() + drows.size()), dim());
  int r = 0;
  for (int j : act) rows.row(r++) = pieces_a_.row(j) - lambda.transpose();
  for (int i : drows) rows.row(r++) = hr.G.row(i);
  return geom::PolyhedralCone(std::move(rows), dim());
}

geom::Subspace MaxAffineFunction::critical_subspace(const Vec& y, const Vec& lambda) const {
  return tangent_set(y, lambda).span();
}

std::vector<int> MaxAffineFunction::prox_signature(const MoreauParams& p, const Vec& w) const {
  const ProxResult pr = prox(p, w);
  std::vector<int> sig = active_pieces(pr.point);
  for (int i : active_domain_rows(pr.point)) sig.push_back(num_pieces() + i);
  return sig;
}

GradientStepResult MaxAffineFunction::moreau_grad_extrapolated(const MoreauParams& p,
                                                               const Vec& y, const Vec& lambda,
                                                               const Vec& w, double t) const {
  if (t < 0.0) throw UsageError("moreau_grad_extrapolated: t must be nonnegative");
  const geom::PolyhedralCone cone = tangent_cone_of_subdiff(y, lambda);
  GradientStepResult out;
  out.gradient = lambda + (t / p.mu) * cone.project(w);

  // The validity range is estimated as the largest step keeping the prox
  // active set unchanged, located by doubling plus bisection.
  const Vec base = y + p.mu * lambda;
  const double probe = 1e-9;
  const auto ref = prox_signature(p, base + probe * w);
  auto same_at = [&](double s) { return prox_signature(p, base + s * w) == ref; };
  double hi = 1.0;
  int doublings = 0;
  while (same_at(hi) && doublings < 20) {
    hi *= 2.0;
    ++doublings;
  }
  if (doublings == 20) {
    out.t_valid = hi;
  } else {
    double lo = probe;
    if (!same_at(lo)) {
      out.t_valid = 0.0;
      out.within_validity = (t == 0.0);
      return out;
    }
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (same_at(mid) ? lo : hi) = mid;
    }
    out.t_valid = lo;
  }
  out.within_validity = (t <= out.t_valid);
  return out;
}

}  // namespace polyadmm
