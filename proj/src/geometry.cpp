// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include "polyadmm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "polyadmm/errors.hpp"
#include "polyadmm/linalg.hpp"
#include "polyadmm/qp.hpp"

namespace polyadmm::geom {

namespace {

constexpr double kSignTol = 1e-10;   // ray classification against a new row
constexpr double kTightTol = 1e-9;   // tight-set detection in the prune
constexpr double kVertexTol = 1e-7;  // homogenization coordinate split

Mat normalize_rows(const Mat& rows, const Vec* rhs, Vec* rhs_out, bool* infeasible) {
  std::vector<int> keep;
  for (int i = 0; i < rows.rows(); ++i) {
    const double nrm = rows.row(i).norm();
    if (nrm <= 1e-14) {
      if (rhs && (*rhs)(i) < -kGeomTol && infeasible) *infeasible = true;
      continue;  // 0'x <= h is vacuous (or impossible, flagged above)
    }
    keep.push_back(i);
  }
  Mat out(static_cast<int>(keep.size()), rows.cols());
  if (rhs_out) rhs_out->resize(static_cast<int>(keep.size()));
  for (int k = 0; k < static_cast<int>(keep.size()); ++k) {
    const double nrm = rows.row(keep[k]).norm();
    out.row(k) = rows.row(keep[k]) / nrm;
    if (rhs && rhs_out) (*rhs_out)(k) = (*rhs)(keep[k]) / nrm;
  }
  return out;
}

bool is_extreme(const Mat& gp, const std::vector<int>& processed, const Vec& r, int q) {
  if (q <= 1) return true;
  std::vector<int> tight;
  for (int j : processed)
    if (std::abs(gp.row(j).dot(r)) <= kTightTol) tight.push_back(j);
  if (static_cast<int>(tight.size()) < q - 1) return false;
  Mat t(static_cast<int>(tight.size()), q);
  for (int k = 0; k < static_cast<int>(tight.size()); ++k) t.row(k) = gp.row(tight[k]);
  Eigen::JacobiSVD<Mat> svd(t);
  const auto& sv = svd.singularValues();
  const double thresh = kLinTol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > thresh) ++rank;
  return rank == q - 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(Mat basis, int ambient_dim) : basis_(std::move(basis)), ambient_dim_(ambient_dim) {
  if (basis_.rows() != ambient_dim_)
    throw UsageError("Subspace: basis rows must match ambient dimension");
}

Subspace Subspace::zero(int ambient_dim) { return Subspace(Mat(ambient_dim, 0), ambient_dim); }

Subspace Subspace::full(int ambient_dim) {
  return Subspace(Mat::Identity(ambient_dim, ambient_dim), ambient_dim);
}

Subspace Subspace::span_of(const Mat& vectors, int ambient_dim, double tol) {
  if (vectors.cols() == 0) return zero(ambient_dim);
  return Subspace(linalg::orthonormal_range(vectors, tol), ambient_dim);
}

bool Subspace::contains(const Vec& v, double tol) const {
  return (v - project(v)).norm() <= tol * (1.0 + v.norm());
}

bool Subspace::contains(const Subspace& other, double tol) const {
  for (int j = 0; j < other.basis_.cols(); ++j)
    if (!contains(other.basis_.col(j), tol)) return false;
  return true;
}

Subspace Subspace::intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw UsageError("Subspace::intersect: dimension mismatch");
  return Subspace(linalg::subspace_intersection(a.basis(), b.basis()), a.ambient_dim());
}

// ---------------------------------------------------------------------------
// Double description

ConeGenerators cone_generators(const Mat& rows_in, int dim) {
  ConeGenerators out;
  bool infeasible = false;
  const Mat g = normalize_rows(rows_in, nullptr, nullptr, &infeasible);
  if (g.rows() == 0) {
    out.rays = Mat(dim, 0);
    out.lineality = Mat::Identity(dim, dim);
    return out;
  }
  out.lineality = linalg::nullspace(g);
  const Mat w = linalg::orthonormal_range(g.transpose());
  const int q = static_cast<int>(w.cols());
  if (q == 0) {
    out.rays = Mat(dim, 0);
    return out;
  }
  const Mat gp = g * w;  // constraints in pointed-part coordinates

  // Initial simplicial cone from the first q independent rows.
  std::vector<int> sel;
  Mat basis(0, q);
  for (int i = 0; i < gp.rows() && static_cast<int>(sel.size()) < q; ++i) {
    Mat cand(basis.rows() + 1, q);
    cand.topRows(basis.rows()) = basis;
    cand.row(basis.rows()) = gp.row(i);
    Eigen::JacobiSVD<Mat> svd(cand);
    const auto& sv = svd.singularValues();
    const double thresh = kLinTol * std::max(1.0, sv(0));
    int rank = 0;
    while (rank < sv.size() && sv(rank) > thresh) ++rank;
    if (rank == cand.rows()) {
      basis = cand;
      sel.push_back(i);
    }
  }
  Mat gsel(q, q);
  for (int k = 0; k < q; ++k) gsel.row(k) = gp.row(sel[k]);
  const Mat rays0 = -gsel.inverse();

  std::vector<Vec> rays;
  for (int j = 0; j < q; ++j) rays.push_back(rays0.col(j).normalized());

  std::vector<int> processed = sel;
  std::vector<char> in_sel(gp.rows(), 0);
  for (int i : sel) in_sel[i] = 1;

  for (int i = 0; i < gp.rows(); ++i) {
    if (in_sel[i]) continue;
    processed.push_back(i);
    std::vector<Vec> plus, minus, zero;
    std::vector<double> splus, sminus;
    for (const Vec& r : rays) {
      const double s = gp.row(i).dot(r);
      if (s > kSignTol) {
        plus.push_back(r);
        splus.push_back(s);
      } else if (s < -kSignTol) {
        minus.push_back(r);
        sminus.push_back(s);
      } else {
        zero.push_back(r);
      }
    }
    if (plus.empty()) continue;
    std::vector<Vec> next = zero;
    next.insert(next.end(), minus.begin(), minus.end());
    for (size_t a = 0; a < plus.size(); ++a) {
      for (size_t b = 0; b < minus.size(); ++b) {
        Vec cand = splus[a] * minus[b] - sminus[b] * plus[a];
        const double nrm = cand.norm();
        if (nrm <= 1e-12) continue;
        cand /= nrm;
        bool feasible = true;
        for (int j : processed) {
          if (gp.row(j).dot(cand) > kTightTol) {
            feasible = false;
            break;
          }
        }
        if (!feasible || !is_extreme(gp, processed, cand, q)) continue;
        bool dup = false;
        for (const Vec& r : next) {
          if (r.dot(cand) > 1.0 - 1e-10) {
            dup = true;
            break;
          }
        }
        if (!dup) next.push_back(cand);
      }
    }
    rays = std::move(next);
  }

  out.rays = Mat(dim, static_cast<int>(rays.size()));
  for (int j = 0; j < static_cast<int>(rays.size()); ++j)
    out.rays.col(j) = (w * rays[j]).normalized();
  return out;
}

std::optional<VRep> enumerate_generators(const Mat& g, const Vec& h) {
  const int d = static_cast<int>(g.cols());
  Vec hn;
  bool infeasible = false;
  const Mat gn = normalize_rows(g, &h, &hn, &infeasible);
  if (infeasible) return std::nullopt;
  if (gn.rows() == 0) {
    VRep vr;
    vr.points = Mat::Zero(d, 1);
    vr.rays = Mat(d, 0);
    vr.lineality = Mat::Identity(d, d);
    return vr;
  }
  Mat hom(gn.rows() + 1, d + 1);
  hom.topLeftCorner(gn.rows(), d) = gn;
  hom.topRightCorner(gn.rows(), 1) = -hn;
  hom.row(gn.rows()).setZero();
  hom(gn.rows(), d) = -1.0;

  const ConeGenerators cg = cone_generators(hom, d + 1);

  VRep vr;
  std::vector<Vec> points, rays, lin;
  for (int j = 0; j < cg.lineality.cols(); ++j) lin.push_back(cg.lineality.col(j).head(d));
  for (int j = 0; j < cg.rays.cols(); ++j) {
    const Vec r = cg.rays.col(j);
    const double t = r(d);
    if (t > kVertexTol) {
      points.push_back(r.head(d) / t);
    } else {
      const Vec dirv = r.head(d);
      if (dirv.norm() > 1e-12) rays.push_back(dirv.normalized());
    }
  }
  if (points.empty()) return std::nullopt;
  vr.points = Mat(d, static_cast<int>(points.size()));
  for (int j = 0; j < static_cast<int>(points.size()); ++j) vr.points.col(j) = points[j];
  vr.rays = Mat(d, static_cast<int>(rays.size()));
  for (int j = 0; j < static_cast<int>(rays.size()); ++j) vr.rays.col(j) = rays[j];
  vr.lineality = Mat(d, static_cast<int>(lin.size()));
  for (int j = 0; j < static_cast<int>(lin.size()); ++j) vr.lineality.col(j) = lin[j];
  return vr;
}

HRep facets_from_generators(const VRep& vr) {
  const int d = static_cast<int>(vr.points.rows());
  if (vr.points.cols() == 0) throw InvariantError("facets_from_generators: empty polyhedron");
  const int np = static_cast<int>(vr.points.cols());
  const int nr = static_cast<int>(vr.rays.cols());
  const int nl = static_cast<int>(vr.lineality.cols());
  Mat m(np + nr + 2 * nl, d + 1);
  for (int j = 0; j < np; ++j) {
    m.row(j).head(d) = vr.points.col(j).transpose();
    m(j, d) = 1.0;
  }
  for (int j = 0; j < nr; ++j) {
    m.row(np + j).head(d) = vr.rays.col(j).transpose();
    m(np + j, d) = 0.0;
  }
  for (int j = 0; j < nl; ++j) {
    m.row(np + nr + 2 * j).head(d) = vr.lineality.col(j).transpose();
    m(np + nr + 2 * j, d) = 0.0;
    m.row(np + nr + 2 * j + 1).head(d) = -vr.lineality.col(j).transpose();
    m(np + nr + 2 * j + 1, d) = 0.0;
  }
  const ConeGenerators cg = cone_generators(m, d + 1);

  std::vector<Vec> grows;
  std::vector<double> hvals;
  auto add_facet = [&](const Vec& w) {
    const Vec a = w.head(d);
    const double nrm = a.norm();
    if (nrm <= 1e-10) return;  // trivial 0'x <= const
    grows.push_back(a / nrm);
    hvals.push_back(-w(d) / nrm);
  };
  for (int j = 0; j < cg.rays.cols(); ++j) add_facet(cg.rays.col(j));
  for (int j = 0; j < cg.lineality.cols(); ++j) {
    add_facet(cg.lineality.col(j));
    add_facet(-cg.lineality.col(j));
  }
  HRep out;
  out.G = Mat(static_cast<int>(grows.size()), d);
  out.h = Vec(static_cast<int>(grows.size()));
  for (int j = 0; j < static_cast<int>(grows.size()); ++j) {
    out.G.row(j) = grows[j].transpose();
    out.h(j) = hvals[j];
  }
  return out;
}

// ---------------------------------------------------------------------------
// PolyhedralCone

PolyhedralCone::PolyhedralCone(Mat rows, int dim)
    : dim_(dim),
      gen_once_(std::make_shared<std::once_flag>()),
      gen_cache_(std::make_shared<ConeGenerators>()) {
  if (rows.rows() > 0 && rows.cols() != dim)
    throw UsageError("PolyhedralCone: row dimension mismatch");
  bool infeasible = false;
  rows_ = normalize_rows(rows, nullptr, nullptr, &infeasible);
  if (rows_.cols() != dim) rows_ = Mat(rows_.rows(), dim);  // 0-row case keeps dim
}

PolyhedralCone PolyhedralCone::whole_space(int dim) { return PolyhedralCone(Mat(0, dim), dim); }

PolyhedralCone PolyhedralCone::from_generators(const Mat& rays, const Mat& lineality, int dim) {
  // K = cone(rays) + span(lineality); its polar has the direct H-rep below,
  // and K is recovered as that cone's polar.
  Mat rows(rays.cols() + 2 * lineality.cols(), dim);
  for (int j = 0; j < rays.cols(); ++j) rows.row(j) = rays.col(j).transpose();
  for (int j = 0; j < lineality.cols(); ++j) {
    rows.row(rays.cols() + 2 * j) = lineality.col(j).transpose();
    rows.row(rays.cols() + 2 * j + 1) = -lineality.col(j).transpose();
  }
  return PolyhedralCone(rows, dim).polar();
}

bool PolyhedralCone::contains(const Vec& v, double tol) const {
  if (v.size() != dim_) throw UsageError("PolyhedralCone::contains: dimension mismatch");
  for (int i = 0; i < rows_.rows(); ++i)
    if (rows_.row(i).dot(v) > tol * (1.0 + v.norm())) return false;
  return true;
}

Vec PolyhedralCone::project(const Vec& w) const {
  if (w.size() != dim_) throw UsageError("PolyhedralCone::project: dimension mismatch");
  if (rows_.rows() == 0) return w;
  bool inside = true;
  for (int i = 0; i < rows_.rows() && inside; ++i)
    if (rows_.row(i).dot(w) > 0.0) inside = false;
  if (inside) return w;
  qp::Problem p = qp::Problem::inequality_form(Mat::Identity(dim_, dim_), -w, rows_,
                                               Vec::Zero(rows_.rows()));
  const qp::Result r = qp::solve(p, Vec::Zero(dim_));
  if (r.status != qp::Status::kOptimal)
    throw SolverError("cone projection QP did not converge; residual " +
                      std::to_string(r.kkt_residual));
  return r.x;
}

const ConeGenerators& PolyhedralCone::generators() const {
  std::call_once(*gen_once_, [this] { *gen_cache_ = cone_generators(rows_, dim_); });
  return *gen_cache_;
}

Subspace PolyhedralCone::span() const {
  const ConeGenerators& g = generators();
  Mat all(dim_, g.rays.cols() + g.lineality.cols());
  all.leftCols(g.rays.cols()) = g.rays;
  all.rightCols(g.lineality.cols()) = g.lineality;
  return Subspace::span_of(all, dim_);
}

PolyhedralCone PolyhedralCone::polar() const {
  const ConeGenerators& g = generators();
  Mat rows(g.rays.cols() + 2 * g.lineality.cols(), dim_);
  for (int j = 0; j < g.rays.cols(); ++j) rows.row(j) = g.rays.col(j).transpose();
  for (int j = 0; j < g.lineality.cols(); ++j) {
    rows.row(g.rays.cols() + 2 * j) = g.lineality.col(j).transpose();
    rows.row(g.rays.cols() + 2 * j + 1) = -g.lineality.col(j).transpose();
  }
  return PolyhedralCone(rows, dim_);
}

bool PolyhedralCone::same_cone_as(const PolyhedralCone& other, double tol) const {
  auto gens_inside = [tol](const PolyhedralCone& a, const PolyhedralCone& b) {
    const ConeGenerators& g = a.generators();
    for (int j = 0; j < g.rays.cols(); ++j)
      if (!b.contains(g.rays.col(j), tol)) return false;
    for (int j = 0; j < g.lineality.cols(); ++j) {
      if (!b.contains(g.lineality.col(j), tol)) return false;
      if (!b.contains(Vec(-g.lineality.col(j)), tol)) return false;
    }
    return true;
  };
  return gens_inside(*this, other) && gens_inside(other, *this);
}

// ---------------------------------------------------------------------------
// Polyhedron

Polyhedron Polyhedron::from_inequalities(Mat g, Vec h) {
  Polyhedron p;
  p.dim_ = static_cast<int>(g.cols());
  bool infeasible = false;
  Vec hn;
  Mat gn = normalize_rows(g, &h, &hn, &infeasible);
  p.hrep_ = HRep{std::move(gn), std::move(hn)};
  p.known_empty_ = infeasible;
  return p;
}

Polyhedron Polyhedron::from_generators(VRep vr, int dim) {
  Polyhedron p;
  p.dim_ = dim;
  if (vr.points.cols() == 0) throw InvariantError("Polyhedron::from_generators: no points");
  p.vrep_ = std::move(vr);
  return p;
}

Polyhedron Polyhedron::whole_space(int dim) {
  return from_inequalities(Mat(0, dim), Vec(0));
}

bool Polyhedron::trivial() const {
  ensure_hrep();
  return hrep_->G.rows() == 0;
}

const HRep& Polyhedron::hrep() const {
  ensure_hrep();
  return *hrep_;
}

const VRep& Polyhedron::vrep() const {
  ensure_vrep();
  if (known_empty_) throw InvariantError("Polyhedron: empty set has no generators");
  return *vrep_;
}

void Polyhedron::ensure_hrep() const {
  std::lock_guard<std::mutex> lock(*cache_mutex_);
  if (hrep_) return;
  hrep_ = facets_from_generators(*vrep_);
}

void Polyhedron::ensure_vrep() const {
  std::lock_guard<std::mutex> lock(*cache_mutex_);
  if (vrep_ || known_empty_) return;
  auto vr = enumerate_generators(hrep_->G, hrep_->h);
  if (!vr) {
    known_empty_ = true;
    return;
  }
  vrep_ = std::move(*vr);
}

bool Polyhedron::empty() const {
  if (known_empty_) return true;
  if (vrep_) return false;
  ensure_vrep();
  return known_empty_;
}

bool Polyhedron::contains(const Vec& v, double tol) const {
  if (v.size() != dim_) throw UsageError("Polyhedron::contains: dimension mismatch");
  if (known_empty_) return false;
  if (hrep_) {
    for (int i = 0; i < hrep_->G.rows(); ++i)
      if (hrep_->G.row(i).dot(v) - hrep_->h(i) > tol * (1.0 + std::abs(hrep_->h(i)))) return false;
    return true;
  }
  return distance(v) <= tol * (1.0 + v.norm());
}

double Polyhedron::distance(const Vec& v) const { return (v - project(v)).norm(); }

Vec Polyhedron::project(const Vec& v) const {
  if (known_empty_) throw InvariantError("Polyhedron::project: empty set");
  if (vrep_) {
    // Coefficient QP over conv(points) + cone(rays) + span(lineality).
    const VRep& vr = *vrep_;
    const int np = static_cast<int>(vr.points.cols());
    const int nr = static_cast<int>(vr.rays.cols());
    const int nl = static_cast<int>(vr.lineality.cols());
    Mat m(dim_, np + nr + nl);
    m.leftCols(np) = vr.points;
    m.middleCols(np, nr) = vr.rays;
    m.rightCols(nl) = vr.lineality;

    qp::Problem p;
    p.Q = m.transpose() * m;
    p.c = -m.transpose() * v;
    p.G = Mat::Zero(np + nr, np + nr + nl);
    p.G.topLeftCorner(np, np) = -Mat::Identity(np, np);
    p.G.block(np, np, nr, nr) = -Mat::Identity(nr, nr);
    p.h = Vec::Zero(np + nr);
    p.E = Mat::Zero(1, np + nr + nl);
    p.E.row(0).head(np).setOnes();
    p.e = Vec::Ones(1);

    Vec start = Vec::Zero(np + nr + nl);
    start(0) = 1.0;
    const qp::Result r = qp::solve(p, start);
    if (r.status != qp::Status::kOptimal)
      throw SolverError("polyhedron projection QP (generator form) did not converge");
    return m * r.x;
  }
  if (contains(v, 0.0)) return v;
  qp::Problem p = qp::Problem::inequality_form(Mat::Identity(dim_, dim_), -v, hrep_->G, hrep_->h);
  const qp::Result r = qp::solve(p, any_point());
  if (r.status != qp::Status::kOptimal)
    throw SolverError("polyhedron projection QP did not converge; residual " +
                      std::to_string(r.kkt_residual));
  return r.x;
}

Vec Polyhedron::any_point() const {
  if (vrep_) return vrep_->points.col(0);
  if (known_empty_) throw InvariantError("Polyhedron::any_point: empty set");
  auto x = qp::find_feasible(hrep_->G, hrep_->h, Vec::Zero(dim_));
  if (!x) {
    known_empty_ = true;
    throw InvariantError("Polyhedron::any_point: empty set");
  }
  return *x;
}

PolyhedralCone Polyhedron::tangent_cone_at(const Vec& v) const {
  if (!contains(v))
    throw PreconditionError("Polyhedron::tangent_cone_at: point is not a member");
  ensure_hrep();
  std::vector<int> act;
  for (int i = 0; i < hrep_->G.rows(); ++i)
    if (hrep_->h(i) - hrep_->G.row(i).dot(v) <= kActiveTol * (1.0 + std::abs(hrep_->h(i))))
      act.push_back(i);
  Mat rows(static_cast<int>(act.size()), dim_);
  for (int k = 0; k < static_cast<int>(act.size()); ++k) rows.row(k) = hrep_->G.row(act[k]);
  return PolyhedralCone(std::move(rows), dim_);
}

Subspace Polyhedron::affine_hull_directions() const {
  if (empty()) throw InvariantError("Polyhedron::affine_hull_directions: empty set");
  if (vrep_) {
    const VRep& vr = *vrep_;
    const int np = static_cast<int>(vr.points.cols());
    Mat dirs(dim_, std::max(0, np - 1) + static_cast<int>(vr.rays.cols() + vr.lineality.cols()));
    int c = 0;
    for (int j = 1; j < np; ++j) dirs.col(c++) = vr.points.col(j) - vr.points.col(0);
    for (int j = 0; j < vr.rays.cols(); ++j) dirs.col(c++) = vr.rays.col(j);
    for (int j = 0; j < vr.lineality.cols(); ++j) dirs.col(c++) = vr.lineality.col(j);
    return Subspace::span_of(dirs, dim_, 1e-9);
  }
  const std::vector<int> eq = implicit_equalities();
  Mat rows(static_cast<int>(eq.size()), dim_);
  for (int k = 0; k < static_cast<int>(eq.size()); ++k) rows.row(k) = hrep_->G.row(eq[k]);
  return Subspace(linalg::nullspace(rows), dim_);
}

std::vector<int> Polyhedron::implicit_equalities() const {
  ensure_hrep();
  std::vector<int> eq;
  if (vrep_) {
    const VRep& vr = *vrep_;
    for (int i = 0; i < hrep_->G.rows(); ++i) {
      bool tight = true;
      for (int j = 0; j < vr.points.cols() && tight; ++j)
        if (std::abs(hrep_->G.row(i).dot(vr.points.col(j)) - hrep_->h(i)) > kTightTol) tight = false;
      for (int j = 0; j < vr.rays.cols() && tight; ++j)
        if (std::abs(hrep_->G.row(i).dot(vr.rays.col(j))) > kTightTol) tight = false;
      for (int j = 0; j < vr.lineality.cols() && tight; ++j)
        if (std::abs(hrep_->G.row(i).dot(vr.lineality.col(j))) > kTightTol) tight = false;
      if (tight) eq.push_back(i);
    }
    return eq;
  }
  // Per-row slack maximization: row i is an implicit equality iff
  // max{s : Gx <= h, G_i x + s <= h_i, s <= 1} is (numerically) zero.
  const Vec w = any_point();
  const int n = dim_;
  const int m = static_cast<int>(hrep_->G.rows());
  for (int i = 0; i < m; ++i) {
    qp::Problem p;
    p.Q = Mat::Zero(n + 1, n + 1);
    p.c = Vec::Zero(n + 1);
    p.c(n) = -1.0;
    p.G = Mat::Zero(m + 2, n + 1);
    p.h = Vec::Zero(m + 2);
    p.G.topLeftCorner(m, n) = hrep_->G;
    p.h.head(m) = hrep_->h;
    p.G(i, n) = 1.0;
    p.G(m, n) = 1.0;
    p.h(m) = 1.0;
    p.G(m + 1, n) = -1.0;  // s >= 0 keeps the start feasible
    p.h(m + 1) = 0.0;
    Vec start(n + 1);
    start.head(n) = w;
    start(n) = 0.0;
    const qp::Result r = qp::solve(p, start);
    if (r.status != qp::Status::kOptimal)
      throw SolverError("implicit-equality slack LP did not converge");
    if (r.x(n) <= kGeomTol) eq.push_back(i);
  }
  return eq;
}

bool Polyhedron::in_relative_interior(const Vec& v, double ri_tol) const {
  if (!contains(v)) return false;
  ensure_hrep();
  const std::vector<int> eq = implicit_equalities();
  std::vector<char> is_eq(hrep_->G.rows(), 0);
  for (int i : eq) is_eq[i] = 1;
  for (int i = 0; i < hrep_->G.rows(); ++i) {
    if (is_eq[i]) continue;
    const double slack = hrep_->h(i) - hrep_->G.row(i).dot(v);
    if (slack <= ri_tol * (1.0 + hrep_->G.row(i).norm())) return false;
  }
  return true;
}

}  // namespace polyadmm::geom
