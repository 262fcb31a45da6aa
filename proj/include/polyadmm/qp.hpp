// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>

#include "polyadmm/types.hpp"

namespace polyadmm::qp {

// min 1/2 x'Qx + c'x   s.t.  G x <= h,  E x == e.
//
// Q must be symmetric positive semidefinite; Q = 0 turns the problem into an
// LP. Solved by a primal active-set method with a nullspace step and
// lowest-index pivoting, so repeated solves of the same data are bitwise
// deterministic. Unbounded subspace directions (singular reduced Hessian)
// are followed to their blocking constraint, which covers the LP case and
// epigraph-form problems with a linear variable.
struct Problem {
  Mat Q;
  Vec c;
  Mat G;
  Vec h;
  Mat E;
  Vec e;

  static Problem inequality_form(Mat q, Vec c, Mat g, Vec h);
};

enum class Status { kOptimal, kMaxIter, kUnbounded, kInfeasibleStart };

struct Result {
  Status status = Status::kMaxIter;
  Vec x;
  Vec mult_ineq;  // one per row of G; zero on inactive rows
  Vec mult_eq;
  int iterations = 0;
  double kkt_residual = 0.0;
};

struct Options {
  int max_iter = 0;          // 0 = derive from problem size
  double active_tol = 1e-9;  // slack below this counts as active
  double tol = 1e-11;        // stationarity and multiplier threshold
};

Result solve(const Problem& p, const Vec& x0, const Options& opt = {});

// Least-squares phase 1: returns a point of {x : Gx <= h} or nullopt when
// the set is empty (within tolerance). x0 is an arbitrary warm start.
// max_violation, when given, receives the final worst constraint violation.
std::optional<Vec> find_feasible(const Mat& g, const Vec& h, const Vec& x0,
                                 double* max_violation = nullptr);

}  // namespace polyadmm::qp
