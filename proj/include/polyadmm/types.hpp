// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include <limits>

#include <Eigen/Dense>

namespace polyadmm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared tolerances. Problems handled by this library are small and dense,
// so the values are kept tight to make oracle comparisons meaningful.
inline constexpr double kActiveTol = 1e-9;  // piece/constraint activity (relative)
inline constexpr double kGeomTol = 1e-9;    // set membership
inline constexpr double kLinTol = 1e-10;    // rank decisions, projector identities
inline constexpr double kOptTol = 1e-8;     // optimality / KKT residuals
inline constexpr double kRiTol = 1e-9;      // relative-interior slack

}  // namespace polyadmm
