// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include "polyadmm/problem.hpp"

#include <vector>

#include "polyadmm/errors.hpp"
#include "polyadmm/qp.hpp"

namespace polyadmm {

namespace {

// Certify existence of x with Ax in dom g and x in ri C; returns a witness.
Vec certify_feasibility(const MaxAffineFunction& g, const Mat& a, const ConvexSet& c) {
  const int n = static_cast<int>(a.cols());
  const geom::HRep& dom = g.domain().hrep();
  const Mat ga = dom.G * a;  // domain constraints pulled back through A
  const Vec& ha = dom.h;

  if (c.kind() == ConvexSet::Kind::kBall) {
    // Nearest point of {x : A x in dom g} to the center; ri of a ball is its
    // interior (or the center itself when the radius is zero).
    Vec x0 = c.ball_center();
    if (ga.rows() > 0) {
      auto feas = qp::find_feasible(ga, ha, x0);
      if (!feas) throw InvariantError("ProblemSpec: dom g does not meet the range of A");
      qp::Problem p = qp::Problem::inequality_form(Mat::Identity(n, n), -c.ball_center(), ga, ha);
      const qp::Result r = qp::solve(p, *feas);
      if (r.status != qp::Status::kOptimal)
        throw SolverError("ProblemSpec: feasibility QP did not converge");
      x0 = r.x;
    }
    const double dist = (x0 - c.ball_center()).norm();
    if (c.ball_radius() == 0.0) {
      if (dist > kGeomTol) throw InvariantError("ProblemSpec: ri(C) misses {x : Ax in dom g}");
      return c.ball_center();
    }
    if (dist >= c.ball_radius() - kGeomTol * (1.0 + c.ball_radius()))
      throw InvariantError("ProblemSpec: ri(C) misses {x : Ax in dom g}");
    return x0;
  }

  const geom::Polyhedron& cp = c.as_polyhedron();
  const geom::HRep& hc = cp.hrep();
  const int mc = static_cast<int>(hc.G.rows());
  const int md = static_cast<int>(ga.rows());

  Mat all(mc + md, n);
  Vec allh(mc + md);
  if (mc > 0) {
    all.topRows(mc) = hc.G;
    allh.head(mc) = hc.h;
  }
  if (md > 0) {
    all.bottomRows(md) = ga;
    allh.tail(md) = ha;
  }
  auto x0 = qp::find_feasible(all, allh, Vec::Zero(n));
  if (!x0) throw InvariantError("ProblemSpec: C and {x : Ax in dom g} do not intersect");
  if (mc == 0) return *x0;  // whole space: ri C = R^n

  // Maximize the worst slack of the non-implicit rows of C subject to the
  // pulled-back domain; a positive optimum certifies the ri condition.
  const std::vector<int> eq = cp.implicit_equalities();
  std::vector<char> is_eq(mc, 0);
  for (int i : eq) is_eq[i] = 1;

  std::vector<int> strict_rows;
  for (int i = 0; i < mc; ++i)
    if (!is_eq[i]) strict_rows.push_back(i);
  const int ms = static_cast<int>(strict_rows.size());

  qp::Problem p;
  p.Q = Mat::Zero(n + 1, n + 1);
  p.c = Vec::Zero(n + 1);
  p.c(n) = -1.0;
  p.G = Mat::Zero(ms + md + 2, n + 1);
  p.h = Vec::Zero(ms + md + 2);
  for (int k = 0; k < ms; ++k) {
    p.G.row(k).head(n) = hc.G.row(strict_rows[k]);
    p.G(k, n) = 1.0;
    p.h(k) = hc.h(strict_rows[k]);
  }
  if (md > 0) {
    p.G.block(ms, 0, md, n) = ga;
    p.h.segment(ms, md) = ha;
  }
  p.G(ms + md, n) = 1.0;
  p.h(ms + md) = 1.0;
  p.G(ms + md + 1, n) = -1.0;
  p.E = Mat::Zero(static_cast<int>(eq.size()), n + 1);
  p.e = Vec::Zero(static_cast<int>(eq.size()));
  for (int k = 0; k < static_cast<int>(eq.size()); ++k) {
    p.E.row(k).head(n) = hc.G.row(eq[k]);
    p.e(k) = hc.h(eq[k]);
  }
  Vec start(n + 1);
  start.head(n) = *x0;
  start(n) = 0.0;
  const qp::Result r = qp::solve(p, start);
  if (r.status != qp::Status::kOptimal)
    throw SolverError("ProblemSpec: relative-interior LP did not converge");
  if (ms > 0 && r.x(n) <= kGeomTol)
    throw InvariantError("ProblemSpec: ri(C) misses {x : Ax in dom g}");
  return r.x.head(n);
}

}  // namespace

ProblemSpec ProblemSpec::make(SmoothFunction f, MaxAffineFunction g, Mat a, ConvexSet c) {
  const int n = static_cast<int>(a.cols());
  const int m = static_cast<int>(a.rows());
  if (f.dim() != n) throw UsageError("ProblemSpec: f dimension != cols(A)");
  if (g.dim() != m) throw UsageError("ProblemSpec: g dimension != rows(A)");
  if (c.dim() != n) throw UsageError("ProblemSpec: C dimension != cols(A)");
  Vec witness = certify_feasibility(g, a, c);
  return ProblemSpec(std::move(f), std::move(g), std::move(a), std::move(c),
                     std::move(witness));
}

}  // namespace polyadmm
