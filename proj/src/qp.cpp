// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include "polyadmm/qp.hpp"

#include <algorithm>
#include <vector>

#include <Eigen/Eigenvalues>

#include "polyadmm/errors.hpp"
#include "polyadmm/linalg.hpp"

namespace polyadmm::qp {

namespace {

struct Workspace {
  const Problem& p;
  std::vector<char> active;  // over rows of G

  Mat active_rows() const {
    const int nq = static_cast<int>(p.E.rows());
    int na = 0;
    for (char a : active) na += a;
    Mat m(nq + na, p.Q.cols());
    m.topRows(nq) = p.E;
    int r = nq;
    for (int i = 0; i < static_cast<int>(active.size()); ++i)
      if (active[i]) m.row(r++) = p.G.row(i);
    return m;
  }

  std::vector<int> active_indices() const {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(active.size()); ++i)
      if (active[i]) idx.push_back(i);
    return idx;
  }
};

// Largest feasible step from x along d over the inactive rows. Returns the
// step and the lowest-index blocking row (-1 if unblocked).
std::pair<double, int> max_step(const Problem& p, const std::vector<char>& active,
                                const Vec& x, const Vec& d, double cap) {
  double alpha = cap;
  int blocking = -1;
  for (int i = 0; i < p.G.rows(); ++i) {
    if (active[i]) continue;
    const double gd = p.G.row(i).dot(d);
    if (gd <= 1e-13) continue;
    double ai = (p.h(i) - p.G.row(i).dot(x)) / gd;
    if (ai < 0.0) ai = 0.0;  // start sits marginally outside; block immediately
    const double margin = std::isfinite(alpha) ? 1e-12 * (1.0 + alpha) : 0.0;
    if (ai < alpha - margin) {
      alpha = ai;
      blocking = i;
    }
  }
  return {alpha, blocking};
}

}  // namespace

Problem Problem::inequality_form(Mat q, Vec c, Mat g, Vec h) {
  Problem p;
  p.Q = std::move(q);
  p.c = std::move(c);
  p.G = std::move(g);
  p.h = std::move(h);
  p.E = Mat(0, p.Q.cols());
  p.e = Vec(0);
  return p;
}

Result solve(const Problem& p, const Vec& x0, const Options& opt) {
  const int n = static_cast<int>(p.Q.cols());
  const int ni = static_cast<int>(p.G.rows());
  const int ne = static_cast<int>(p.E.rows());
  if (p.Q.rows() != n || p.c.size() != n || (ni > 0 && p.G.cols() != n) ||
      p.h.size() != ni || (ne > 0 && p.E.cols() != n) || p.e.size() != ne ||
      x0.size() != n) {
    throw UsageError("qp::solve: inconsistent dimensions");
  }

  Result res;
  res.x = x0;
  Vec& x = res.x;

  double start_viol = 0.0;
  for (int i = 0; i < ni; ++i)
    start_viol = std::max(start_viol, p.G.row(i).dot(x) - p.h(i));
  for (int i = 0; i < ne; ++i)
    start_viol = std::max(start_viol, std::abs(p.E.row(i).dot(x) - p.e(i)));
  if (start_viol > 1e-7) {
    res.status = Status::kInfeasibleStart;
    res.kkt_residual = start_viol;
    return res;
  }

  Workspace ws{p, std::vector<char>(ni, 0)};
  for (int i = 0; i < ni; ++i)
    ws.active[i] = (p.h(i) - p.G.row(i).dot(x) <= opt.active_tol * (1.0 + std::abs(p.h(i))));

  const int max_iter = opt.max_iter > 0 ? opt.max_iter : 200 + 30 * (n + ni + ne);
  for (int iter = 0; iter < max_iter; ++iter) {
    res.iterations = iter + 1;
    const Mat m = ws.active_rows();
    const Mat z = linalg::nullspace(m);
    const Vec grad = p.Q * x + p.c;

    Vec d = Vec::Zero(n);
    bool ray = false;
    if (z.cols() > 0) {
      const Mat hr = z.transpose() * p.Q * z;
      const Vec gr = z.transpose() * grad;
      Eigen::SelfAdjointEigenSolver<Mat> eig(hr);
      const Vec& ev = eig.eigenvalues();
      const Mat& q = eig.eigenvectors();
      const double sig_max = std::max(0.0, ev.size() > 0 ? ev(ev.size() - 1) : 0.0);
      const double eps_h = std::max(opt.tol, 1e-12 * std::max(1.0, sig_max));

      Vec u = Vec::Zero(z.cols());
      Vec ray_u = Vec::Zero(z.cols());
      for (int i = 0; i < ev.size(); ++i) {
        const double gi = q.col(i).dot(gr);
        if (ev(i) > eps_h) {
          u -= (gi / ev(i)) * q.col(i);
        } else if (std::abs(gi) > opt.tol * (1.0 + gr.norm())) {
          ray_u -= gi * q.col(i);
        }
      }
      if (ray_u.norm() > 0.0) {
        d = z * ray_u.normalized();
        ray = true;
      } else {
        d = z * u;
      }
    }

    if (!ray && d.norm() <= 1e-12 * (1.0 + x.norm())) {
      // Subspace-stationary: test multipliers, drop the lowest-index
      // offender or declare optimality.
      const Vec y = linalg::lstsq(m.transpose(), -grad);
      const auto idx = ws.active_indices();
      int drop = -1;
      for (int k = 0; k < static_cast<int>(idx.size()); ++k) {
        if (y(ne + k) < -opt.tol * (1.0 + grad.norm())) {
          drop = idx[k];
          break;
        }
      }
      if (drop < 0) {
        res.status = Status::kOptimal;
        res.mult_ineq = Vec::Zero(ni);
        for (int k = 0; k < static_cast<int>(idx.size()); ++k)
          res.mult_ineq(idx[k]) = std::max(0.0, y(ne + k));
        res.mult_eq = y.head(ne);
        res.kkt_residual = (grad + m.transpose() * y).norm();
        return res;
      }
      ws.active[drop] = 0;
      continue;
    }

    const double cap = ray ? kInf : 1.0;
    auto [alpha, blocking] = max_step(p, ws.active, x, d, cap);
    if (ray && blocking < 0) {
      res.status = Status::kUnbounded;
      return res;
    }
    x += alpha * d;
    if (blocking >= 0) ws.active[blocking] = 1;
  }

  res.status = Status::kMaxIter;
  res.kkt_residual = (p.Q * x + p.c).norm();
  return res;
}

std::optional<Vec> find_feasible(const Mat& g, const Vec& h, const Vec& x0,
                                 double* max_violation) {
  const int n = static_cast<int>(x0.size());
  const int m = static_cast<int>(g.rows());
  if (m == 0) {
    if (max_violation) *max_violation = 0.0;
    return x0;
  }
  // min 1/2||s||^2  s.t.  Gx - s <= h,  -s <= 0, starting from the
  // clipped violations of x0.
  Problem p;
  const int nv = n + m;
  p.Q = Mat::Zero(nv, nv);
  p.Q.bottomRightCorner(m, m) = Mat::Identity(m, m);
  p.c = Vec::Zero(nv);
  p.G = Mat::Zero(2 * m, nv);
  p.h = Vec::Zero(2 * m);
  p.G.topLeftCorner(m, n) = g;
  p.G.topRightCorner(m, m) = -Mat::Identity(m, m);
  p.h.head(m) = h;
  p.G.bottomRightCorner(m, m) = -Mat::Identity(m, m);
  p.E = Mat(0, nv);
  p.e = Vec(0);

  Vec start(nv);
  start.head(n) = x0;
  for (int i = 0; i < m; ++i)
    start(n + i) = std::max(0.0, g.row(i).dot(x0) - h(i));

  const Result r = solve(p, start);
  if (r.status != Status::kOptimal) return std::nullopt;
  const Vec x = r.x.head(n);
  double viol = 0.0;
  for (int i = 0; i < m; ++i) viol = std::max(viol, g.row(i).dot(x) - h(i));
  if (max_violation) *max_violation = viol;
  if (viol > 1e-8) return std::nullopt;
  return x;
}

}  // namespace polyadmm::qp
