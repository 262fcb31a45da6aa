// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include "polyadmm/smoothfn.hpp"

#include <cmath>
#include <limits>

#include "polyadmm/errors.hpp"

namespace polyadmm {

SmoothFunction::SmoothFunction(int dim, std::string name, ValueFn v, GradFn g, HessFn h)
    : dim_(dim), name_(std::move(name)), value_(std::move(v)), grad_(std::move(g)),
      hess_(std::move(h)) {}

SmoothFunction SmoothFunction::builtin(const std::string& name) {
  if (name == "neg_half_square") {
    return SmoothFunction(
        1, name, [](const Vec& x) { return -0.5 * x(0) * x(0); },
        [](const Vec& x) { return Vec::Constant(1, -x(0)); },
        [](const Vec&) { return Mat::Constant(1, 1, -1.0); });
  }
  if (name == "x1_cos_x2") {
    return SmoothFunction(
        2, name, [](const Vec& x) { return x(0) * std::cos(x(1)); },
        [](const Vec& x) {
          Vec g(2);
          g << std::cos(x(1)), -x(0) * std::sin(x(1));
          return g;
        },
        [](const Vec& x) {
          Mat h(2, 2);
          h << 0.0, -std::sin(x(1)), -std::sin(x(1)), -x(0) * std::cos(x(1));
          return h;
        });
  }
  if (name == "neg_cube_abs") {
    return SmoothFunction(
        1, name, [](const Vec& x) { return -std::pow(std::abs(x(0)), 3) / 3.0; },
        [](const Vec& x) { return Vec::Constant(1, -x(0) * std::abs(x(0))); },
        [](const Vec& x) { return Mat::Constant(1, 1, -2.0 * std::abs(x(0))); });
  }
  throw UsageError("SmoothFunction::builtin: unknown name '" + name + "'");
}

SmoothFunction SmoothFunction::quadratic(Mat q, Vec c) {
  const int n = static_cast<int>(c.size());
  if (q.rows() != n || q.cols() != n)
    throw UsageError("SmoothFunction::quadratic: dimension mismatch");
  Mat qs = 0.5 * (q + q.transpose());
  return SmoothFunction(
      n, "quadratic",
      [qs, c](const Vec& x) { return 0.5 * x.dot(qs * x) + c.dot(x); },
      [qs, c](const Vec& x) { return Vec(qs * x + c); },
      [qs](const Vec&) { return qs; });
}

SmoothFunction SmoothFunction::custom(int dim, std::string name, ValueFn value, GradFn grad,
                                      HessFn hess) {
  if (dim < 1 || !value || !grad) throw UsageError("SmoothFunction::custom: bad arguments");
  return SmoothFunction(dim, std::move(name), std::move(value), std::move(grad),
                        std::move(hess));
}

double SmoothFunction::value(const Vec& x) const {
  if (x.size() != dim_) throw UsageError("SmoothFunction::value: dimension mismatch");
  return value_(x);
}

Vec SmoothFunction::gradient(const Vec& x) const {
  if (x.size() != dim_) throw UsageError("SmoothFunction::gradient: dimension mismatch");
  return grad_(x);
}

Mat SmoothFunction::hessian(const Vec& x) const {
  if (x.size() != dim_) throw UsageError("SmoothFunction::hessian: dimension mismatch");
  if (hess_) return hess_(x);
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + x.norm());
  Mat out(dim_, dim_);
  Vec xp = x, xm = x;
  for (int j = 0; j < dim_; ++j) {
    xp(j) += h;
    xm(j) -= h;
    out.col(j) = (grad_(xp) - grad_(xm)) / (2.0 * h);
    xp(j) = x(j);
    xm(j) = x(j);
  }
  return 0.5 * (out + out.transpose());
}

}  // namespace polyadmm
