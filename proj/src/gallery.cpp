// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include "polyadmm/gallery.hpp"

#include "polyadmm/errors.hpp"

namespace polyadmm::gallery {

ProblemSpec example(int which) {
  switch (which) {
    case 1:
      return ProblemSpec::make(SmoothFunction::builtin("neg_half_square"),
                               MaxAffineFunction::abs1d(), Mat::Identity(1, 1),
                               ConvexSet::box(Vec::Constant(1, -0.25), Vec::Constant(1, 0.25)));
    case 2: {
      Mat a(1, 2);
      a << 1.0, 0.0;
      return ProblemSpec::make(SmoothFunction::builtin("x1_cos_x2"),
                               MaxAffineFunction::abs1d(), a, ConvexSet::whole_space(2));
    }
    case 3:
      return ProblemSpec::make(SmoothFunction::builtin("neg_cube_abs"),
                               MaxAffineFunction::abs1d(), Mat::Identity(1, 1),
                               ConvexSet::box(Vec::Constant(1, -1.0), Vec::Constant(1, 1.0)));
    default:
      throw UsageError("gallery::example: which must be 1, 2 or 3");
  }
}

Reference example_reference(int which) {
  switch (which) {
    case 1:
      return {Vec::Zero(1), Vec::Zero(1)};
    case 2:
      return {Vec::Zero(2), Vec::Constant(1, -1.0)};
    case 3:
      return {Vec::Zero(1), Vec::Zero(1)};
    default:
      throw UsageError("gallery::example_reference: which must be 1, 2 or 3");
  }
}

AdmmConfig example_config(int which, double beta) {
  AdmmConfig cfg;
  cfg.beta = beta;
  cfg.x_solver = ClosedFormX{"example" + std::to_string(which)};
  return cfg;
}

}  // namespace polyadmm::gallery
