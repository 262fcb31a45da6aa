// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include "polyadmm/admm.hpp"
#include "polyadmm/problem.hpp"

namespace polyadmm::gallery {

// Built-in desk-scale problems with known stationary pairs and registered
// closed-form x-minimizers.
//
//   1:  min_{x in [-1/4, 1/4]}  -x^2/2 + |x|          (locally linear ADMM)
//   2:  min_{x in R^2}          x1 cos(x2) + |x1|     (certificate fails)
//   3:  min_{x in [-1, 1]}      -|x|^3/3 + |x|        (diverges from bad inits)
ProblemSpec example(int which);
Reference example_reference(int which);
// Config wired to the registered closed-form x-solver of the example.
AdmmConfig example_config(int which, double beta);

}  // namespace polyadmm::gallery
