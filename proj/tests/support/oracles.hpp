// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0
//
// Test-only oracles, kept independent of the library solve paths they check.

#pragma once

#include <cmath>
#include <stdexcept>

#include "polyadmm/polyfunc.hpp"
#include "polyadmm/rng.hpp"

namespace testsupport {

using polyadmm::MaxAffineFunction;
using polyadmm::Mat;
using polyadmm::Rng;
using polyadmm::Vec;

struct GridProxResult {
  Vec point;
  double value;
};

// Multi-stage lattice minimization of g(z) + ||z - w||^2 / (2 mu) for
// dimension 1 or 2. Each stage re-centers on the incumbent; a window is
// re-expanded when the incumbent lands on its edge.
inline GridProxResult grid_prox(const MaxAffineFunction& g, double mu, const Vec& w,
                                int pts = 401, int stages = 3) {
  const int d = g.dim();
  if (d > 2) throw std::runtime_error("grid_prox: dimension must be 1 or 2");
  auto objective = [&](const Vec& z) {
    const double gv = g.eval(z);
    return std::isfinite(gv) ? gv + (z - w).squaredNorm() / (2.0 * mu) : gv;
  };

  Vec center = w;
  // make sure the first window sees the domain
  double width = 4.0 + (w - g.domain().project(w)).norm();
  Vec best = center;
  double best_val = std::numeric_limits<double>::infinity();

  for (int stage = 0; stage < stages; ++stage) {
    for (int expand = 0; expand < 4; ++expand) {
      best_val = std::numeric_limits<double>::infinity();
      bool on_edge = false;
      if (d == 1) {
        const double step = 2.0 * width / (pts - 1);
        for (int i = 0; i < pts; ++i) {
          Vec z = Vec::Constant(1, center(0) - width + i * step);
          const double v = objective(z);
          if (v < best_val) {
            best_val = v;
            best = z;
            on_edge = (i == 0 || i == pts - 1);
          }
        }
      } else {
        const double step = 2.0 * width / (pts - 1);
        Vec z(2);
        for (int i = 0; i < pts; ++i) {
          for (int j = 0; j < pts; ++j) {
            z << center(0) - width + i * step, center(1) - width + j * step;
            const double v = objective(z);
            if (v < best_val) {
              best_val = v;
              best = z;
              on_edge = (i == 0 || i == pts - 1 || j == 0 || j == pts - 1);
            }
          }
        }
      }
      if (std::isfinite(best_val) && !on_edge) break;
      width *= 2.0;
      if (!std::isfinite(best_val)) center = g.domain().project(center);
    }
    center = best;
    width = 8.0 * (2.0 * width / (pts - 1));  // generous cushion around the incumbent
  }
  return {best, best_val};
}

// Exact prox by candidate enumeration (dimension 1 or 2): the minimizer of
// g + quadratic either sits in the interior of one piece's region, on a
// piece-tie or domain-facet line, or at an intersection of two such lines.
// All candidates have closed forms; the best feasible one is the prox.
inline GridProxResult enumerated_prox(const MaxAffineFunction& g, double mu, const Vec& w) {
  const int d = g.dim();
  if (d > 2) throw std::runtime_error("enumerated_prox: dimension must be 1 or 2");
  const Mat& a = g.piece_gradients();
  const Vec& b = g.piece_offsets();
  const auto& dom = g.domain().hrep();

  auto objective = [&](const Vec& z) {
    const double gv = g.eval(z);
    return std::isfinite(gv) ? gv + (z - w).squaredNorm() / (2.0 * mu) : gv;
  };

  std::vector<Vec> candidates;
  // interior of each piece's region
  for (int i = 0; i < a.rows(); ++i) candidates.push_back(w - mu * a.row(i).transpose());

  // lines: piece ties (n'z = c) and domain facets
  struct Line {
    Vec n;
    double c;
  };
  std::vector<Line> lines;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.rows(); ++j) {
      Vec n = (a.row(i) - a.row(j)).transpose();
      if (n.norm() > 1e-12) lines.push_back({n, b(j) - b(i)});
    }
  for (int k = 0; k < dom.G.rows(); ++k)
    lines.push_back({dom.G.row(k).transpose(), dom.h(k)});

  if (d == 1) {
    for (const Line& l : lines) candidates.push_back(Vec::Constant(1, l.c / l.n(0)));
  } else {
    // minimum of each piece's quadratic restricted to each line
    for (const Line& l : lines) {
      const Vec n = l.n / l.n.norm();
      const double c = l.c / l.n.norm();
      const Vec p = c * n;  // a point on the line
      Vec u(2);
      u << -n(1), n(0);
      for (int i = 0; i < a.rows(); ++i) {
        // minimize a_i'z + (1/2mu)||z - w||^2 over z = p + t u
        const Vec ai = a.row(i).transpose();
        const double t = u.dot(w - p) - mu * u.dot(ai);
        candidates.push_back(p + t * u);
      }
    }
    // pairwise line intersections
    for (size_t i = 0; i < lines.size(); ++i) {
      for (size_t j = i + 1; j < lines.size(); ++j) {
        Mat m(2, 2);
        m.row(0) = lines[i].n.transpose();
        m.row(1) = lines[j].n.transpose();
        if (std::abs(m.determinant()) < 1e-12) continue;
        Vec rhs(2);
        rhs << lines[i].c, lines[j].c;
        candidates.push_back(m.inverse() * rhs);
      }
    }
  }

  GridProxResult out;
  out.value = std::numeric_limits<double>::infinity();
  for (const Vec& z : candidates) {
    const double v = objective(z);
    if (v < out.value) {
      out.value = v;
      out.point = z;
    }
  }
  return out;
}

// Central finite difference of the Moreau envelope value.
inline Vec moreau_grad_fd(const MaxAffineFunction& g, double mu, const Vec& w,
                          double h = 1e-6) {
  Vec out(g.dim());
  Vec wp = w, wm = w;
  for (int i = 0; i < g.dim(); ++i) {
    wp(i) += h;
    wm(i) -= h;
    out(i) = (g.moreau_value(polyadmm::MoreauParams(mu), wp) -
              g.moreau_value(polyadmm::MoreauParams(mu), wm)) /
             (2.0 * h);
    wp(i) = w(i);
    wm(i) = w(i);
  }
  return out;
}

// Random small instance: 2-4 affine pieces, optional box-ish domain with 0
// strictly inside.
inline MaxAffineFunction random_max_affine(Rng& rng, int dim, bool allow_domain = true) {
  const int np = rng.uniform_int(2, 4);
  Mat a(np, dim);
  Vec b(np);
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = rng.uniform(-1.5, 1.5);
    b(i) = rng.uniform(-1.0, 1.0);
  }
  std::optional<polyadmm::geom::Polyhedron> dom;
  if (allow_domain && rng.uniform01() < 0.5) {
    Mat g(2 * dim, dim);
    Vec h(2 * dim);
    g.topRows(dim) = Mat::Identity(dim, dim);
    g.bottomRows(dim) = -Mat::Identity(dim, dim);
    for (int i = 0; i < 2 * dim; ++i) h(i) = rng.uniform(0.5, 2.0);
    dom = polyadmm::geom::Polyhedron::from_inequalities(g, h);
  }
  return MaxAffineFunction::from_pieces(a, b, std::move(dom));
}

}  // namespace testsupport
