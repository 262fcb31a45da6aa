// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include <functional>
#include <string>

#include "polyadmm/types.hpp"

namespace polyadmm {

// Smooth (possibly nonconvex) objective term with value/gradient/Hessian
// evaluation. When no Hessian is supplied, central finite differences of the
// gradient are used with step eps^(1/3) * (1 + ||x||).
class SmoothFunction {
 public:
  using ValueFn = std::function<double(const Vec&)>;
  using GradFn = std::function<Vec(const Vec&)>;
  using HessFn = std::function<Mat(const Vec&)>;

  // Built-in names: "neg_half_square" (-x^2/2 on R), "x1_cos_x2"
  // (x1 cos x2 on R^2), "neg_cube_abs" (-|x|^3/3 on R).
  static SmoothFunction builtin(const std::string& name);
  // 1/2 x'Qx + c'x.
  static SmoothFunction quadratic(Mat q, Vec c);
  static SmoothFunction custom(int dim, std::string name, ValueFn value, GradFn grad,
                               HessFn hess = nullptr);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  Mat hessian(const Vec& x) const;
  bool has_analytic_hessian() const { return static_cast<bool>(hess_); }

 private:
  SmoothFunction(int dim, std::string name, ValueFn v, GradFn g, HessFn h);

  int dim_;
  std::string name_;
  ValueFn value_;
  GradFn grad_;
  HessFn hess_;
};

}  // namespace polyadmm
