// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include "polyadmm/types.hpp"

namespace polyadmm::linalg {

// Orthonormal basis of the column span of M. Columns with singular value
// below tol * max(1, sigma_max) are treated as zero. Returns an n x r matrix
// (r may be 0).
Mat orthonormal_range(const Mat& m, double tol = kLinTol);

// Orthonormal basis of {x : Mx = 0}. For a 0-row matrix returns the identity.
Mat nullspace(const Mat& m, double tol = kLinTol);

// Orthonormal basis of span(q1) intersected with span(q2); q1, q2 must have
// orthonormal columns (possibly none).
Mat subspace_intersection(const Mat& q1, const Mat& q2, double tol = 1e-9);

// Smallest eigenvalue of a symmetric matrix (0x0 -> +inf, vacuous).
double min_eigenvalue(const Mat& sym);

// Minimum-norm least-squares solution of A x = b.
Vec lstsq(const Mat& a, const Vec& b);

}  // namespace polyadmm::linalg
