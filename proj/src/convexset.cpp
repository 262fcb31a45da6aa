// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include "polyadmm/convexset.hpp"

#include <cmath>
#include <vector>

#include "polyadmm/errors.hpp"
#include "polyadmm/linalg.hpp"
#include "polyadmm/qp.hpp"

namespace polyadmm {

namespace {

geom::Polyhedron box_polyhedron(const Vec& lower, const Vec& upper) {
  const int n = static_cast<int>(lower.size());
  Mat g(2 * n, n);
  Vec h(2 * n);
  g.topRows(n) = Mat::Identity(n, n);
  h.head(n) = upper;
  g.bottomRows(n) = -Mat::Identity(n, n);
  h.tail(n) = -lower;
  return geom::Polyhedron::from_inequalities(std::move(g), std::move(h));
}

}  // namespace

ConvexSet ConvexSet::whole_space(int dim) {
  if (dim < 1) throw UsageError("ConvexSet::whole_space: dim must be positive");
  ConvexSet c;
  c.kind_ = Kind::kWholeSpace;
  c.dim_ = dim;
  c.poly_ = geom::Polyhedron::whole_space(dim);
  return c;
}

ConvexSet ConvexSet::box(const Vec& lower, const Vec& upper) {
  if (lower.size() != upper.size() || lower.size() == 0)
    throw UsageError("ConvexSet::box: bad bounds");
  for (int i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower(i)) || !std::isfinite(upper(i)))
      throw UsageError("ConvexSet::box: bounds must be finite");
    if (lower(i) > upper(i)) throw InvariantError("ConvexSet::box: empty (lower > upper)");
  }
  ConvexSet c;
  c.kind_ = Kind::kBox;
  c.dim_ = static_cast<int>(lower.size());
  c.lower_ = lower;
  c.upper_ = upper;
  c.poly_ = box_polyhedron(lower, upper);
  return c;
}

ConvexSet ConvexSet::polyhedron(Mat g, Vec h) {
  ConvexSet c;
  c.kind_ = Kind::kHPolyhedron;
  c.dim_ = static_cast<int>(g.cols());
  c.poly_ = geom::Polyhedron::from_inequalities(std::move(g), std::move(h));
  try {
    c.poly_->any_point();  // certifies feasibility
  } catch (const InvariantError&) {
    throw InvariantError("ConvexSet::polyhedron: empty set");
  }
  return c;
}

ConvexSet ConvexSet::ball(const Vec& center, double radius) {
  if (center.size() == 0) throw UsageError("ConvexSet::ball: empty center");
  if (!(radius >= 0.0)) throw InvariantError("ConvexSet::ball: radius must be >= 0");
  ConvexSet c;
  c.kind_ = Kind::kBall;
  c.dim_ = static_cast<int>(center.size());
  c.center_ = center;
  c.radius_ = radius;
  return c;
}

const geom::Polyhedron& ConvexSet::as_polyhedron() const {
  if (!poly_) throw CapabilityError("ConvexSet: no polyhedral representation for a ball");
  return *poly_;
}

bool ConvexSet::contains(const Vec& x, double tol) const {
  if (x.size() != dim_) throw UsageError("ConvexSet::contains: dimension mismatch");
  switch (kind_) {
    case Kind::kWholeSpace:
      return true;
    case Kind::kBox:
      for (int i = 0; i < dim_; ++i)
        if (x(i) > upper_(i) + tol * (1.0 + std::abs(upper_(i))) ||
            x(i) < lower_(i) - tol * (1.0 + std::abs(lower_(i))))
          return false;
      return true;
    case Kind::kHPolyhedron:
      return poly_->contains(x, tol);
    case Kind::kBall:
      return (x - center_).norm() <= radius_ + tol * (1.0 + radius_);
  }
  return false;
}

Vec ConvexSet::project(const Vec& x) const {
  if (x.size() != dim_) throw UsageError("ConvexSet::project: dimension mismatch");
  switch (kind_) {
    case Kind::kWholeSpace:
      return x;
    case Kind::kBox:
      return x.cwiseMax(lower_).cwiseMin(upper_);
    case Kind::kHPolyhedron:
      return poly_->project(x);
    case Kind::kBall: {
      const Vec d = x - center_;
      const double n = d.norm();
      if (n <= radius_) return x;
      if (n == 0.0) return center_;
      return center_ + (radius_ / n) * d;
    }
  }
  return x;
}

double ConvexSet::normal_cone_dist(const Vec& x, const Vec& v) const {
  if (!contains(x, kGeomTol))
    throw PreconditionError("ConvexSet::normal_cone_dist: point is not a member");
  switch (kind_) {
    case Kind::kWholeSpace:
      return v.norm();
    case Kind::kBox: {
      double d2 = 0.0;
      for (int i = 0; i < dim_; ++i) {
        const bool at_up = x(i) >= upper_(i) - kActiveTol * (1.0 + std::abs(upper_(i)));
        const bool at_lo = x(i) <= lower_(i) + kActiveTol * (1.0 + std::abs(lower_(i)));
        if (at_up && at_lo) continue;              // pinned: whole line allowed
        if (at_up) d2 += std::pow(std::min(v(i), 0.0), 2);   // allow v_i >= 0
        else if (at_lo) d2 += std::pow(std::max(v(i), 0.0), 2);  // allow v_i <= 0
        else d2 += v(i) * v(i);                    // interior: only 0 allowed
      }
      return std::sqrt(d2);
    }
    case Kind::kHPolyhedron: {
      // N_C(x) = cone of active row normals; project v onto it.
      const geom::HRep& hr = poly_->hrep();
      std::vector<int> act;
      for (int i = 0; i < hr.G.rows(); ++i)
        if (hr.h(i) - hr.G.row(i).dot(x) <= kActiveTol * (1.0 + std::abs(hr.h(i))))
          act.push_back(i);
      if (act.empty()) return v.norm();
      Mat m(dim_, static_cast<int>(act.size()));
      for (int k = 0; k < static_cast<int>(act.size()); ++k)
        m.col(k) = hr.G.row(act[k]).transpose();
      qp::Problem p = qp::Problem::inequality_form(
          m.transpose() * m, -m.transpose() * v,
          -Mat::Identity(m.cols(), m.cols()), Vec::Zero(m.cols()));
      const qp::Result r = qp::solve(p, Vec::Zero(m.cols()));
      if (r.status != qp::Status::kOptimal)
        throw SolverError("normal-cone projection QP did not converge");
      return (m * r.x - v).norm();
    }
    case Kind::kBall: {
      const Vec d = x - center_;
      if (radius_ == 0.0) return 0.0;  // normal cone at the single point is everything
      if (d.norm() < radius_ - kActiveTol * (1.0 + radius_)) return v.norm();
      const Vec u = d.normalized();
      const double s = std::max(0.0, u.dot(v));
      return (v - s * u).norm();
    }
  }
  return 0.0;
}

geom::PolyhedralCone ConvexSet::tangent_cone(const Vec& x) const {
  if (!contains(x, kGeomTol))
    throw PreconditionError("ConvexSet::tangent_cone: point is not a member");
  switch (kind_) {
    case Kind::kWholeSpace:
      return geom::PolyhedralCone::whole_space(dim_);
    case Kind::kBox:
    case Kind::kHPolyhedron:
      return poly_->tangent_cone_at(poly_->contains(x, 0.0) ? x : poly_->project(x));
    case Kind::kBall: {
      const Vec d = x - center_;
      if (radius_ == 0.0) {
        Mat rows(2 * dim_, dim_);
        rows.topRows(dim_) = Mat::Identity(dim_, dim_);
        rows.bottomRows(dim_) = -Mat::Identity(dim_, dim_);
        return geom::PolyhedralCone(std::move(rows), dim_);  // {0}
      }
      if (d.norm() < radius_ - kActiveTol * (1.0 + radius_))
        return geom::PolyhedralCone::whole_space(dim_);
      Mat rows(1, dim_);
      rows.row(0) = d.normalized().transpose();
      return geom::PolyhedralCone(std::move(rows), dim_);
    }
  }
  return geom::PolyhedralCone::whole_space(dim_);
}

geom::Subspace ConvexSet::affine_hull_subspace() const {
  switch (kind_) {
    case Kind::kWholeSpace:
      return geom::Subspace::full(dim_);
    case Kind::kBox: {
      std::vector<int> free;
      for (int i = 0; i < dim_; ++i)
        if (upper_(i) - lower_(i) > kGeomTol * (1.0 + std::abs(upper_(i)) + std::abs(lower_(i))))
          free.push_back(i);
      Mat basis = Mat::Zero(dim_, static_cast<int>(free.size()));
      for (int k = 0; k < static_cast<int>(free.size()); ++k) basis(free[k], k) = 1.0;
      return geom::Subspace(std::move(basis), dim_);
    }
    case Kind::kHPolyhedron:
      return poly_->affine_hull_directions();
    case Kind::kBall:
      return radius_ > 0.0 ? geom::Subspace::full(dim_) : geom::Subspace::zero(dim_);
  }
  return geom::Subspace::full(dim_);
}

Vec ConvexSet::relative_interior_point() const {
  switch (kind_) {
    case Kind::kWholeSpace:
      return Vec::Zero(dim_);
    case Kind::kBox:
      return 0.5 * (lower_ + upper_);
    case Kind::kHPolyhedron: {
      // Maximize the worst slack of the non-implicit rows.
      const geom::HRep& hr = poly_->hrep();
      const std::vector<int> eq = poly_->implicit_equalities();
      std::vector<char> is_eq(hr.G.rows(), 0);
      for (int i : eq) is_eq[i] = 1;
      const int n = dim_;
      const int m = static_cast<int>(hr.G.rows());
      qp::Problem p;
      p.Q = Mat::Zero(n + 1, n + 1);
      p.c = Vec::Zero(n + 1);
      p.c(n) = -1.0;
      std::vector<int> ineq_rows;
      for (int i = 0; i < m; ++i)
        if (!is_eq[i]) ineq_rows.push_back(i);
      const int mi = static_cast<int>(ineq_rows.size());
      p.G = Mat::Zero(mi + 2, n + 1);
      p.h = Vec::Zero(mi + 2);
      for (int k = 0; k < mi; ++k) {
        p.G.row(k).head(n) = hr.G.row(ineq_rows[k]);
        p.G(k, n) = 1.0;
        p.h(k) = hr.h(ineq_rows[k]);
      }
      p.G(mi, n) = 1.0;
      p.h(mi) = 1.0;
      p.G(mi + 1, n) = -1.0;
      p.h(mi + 1) = 0.0;
      p.E = Mat::Zero(static_cast<int>(eq.size()), n + 1);
      p.e = Vec::Zero(static_cast<int>(eq.size()));
      for (int k = 0; k < static_cast<int>(eq.size()); ++k) {
        p.E.row(k).head(n) = hr.G.row(eq[k]);
        p.e(k) = hr.h(eq[k]);
      }
      Vec start(n + 1);
      start.head(n) = poly_->any_point();
      start(n) = 0.0;
      const qp::Result r = qp::solve(p, start);
      if (r.status != qp::Status::kOptimal)
        throw SolverError("relative-interior LP did not converge");
      return r.x.head(n);
    }
    case Kind::kBall:
      return center_;
  }
  return Vec::Zero(dim_);
}

}  // namespace polyadmm
