// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include "polyadmm/convexset.hpp"
#include "polyadmm/polyfunc.hpp"
#include "polyadmm/smoothfn.hpp"
#include "polyadmm/types.hpp"

namespace polyadmm {

// min_{x in C} f(x) + g(Ax). Construction certifies the standing
// assumption that some x has Ax in dom g and x in ri C.
class ProblemSpec {
 public:
  static ProblemSpec make(SmoothFunction f, MaxAffineFunction g, Mat a, ConvexSet c);

  const SmoothFunction& f() const { return f_; }
  const MaxAffineFunction& g() const { return g_; }
  const Mat& A() const { return a_; }
  const ConvexSet& C() const { return c_; }
  int n() const { return static_cast<int>(a_.cols()); }
  int m() const { return static_cast<int>(a_.rows()); }
  const Vec& feasibility_witness() const { return witness_; }

 private:
  ProblemSpec(SmoothFunction f, MaxAffineFunction g, Mat a, ConvexSet c, Vec witness)
      : f_(std::move(f)), g_(std::move(g)), a_(std::move(a)), c_(std::move(c)),
        witness_(std::move(witness)) {}

  SmoothFunction f_;
  MaxAffineFunction g_;
  Mat a_;
  ConvexSet c_;
  Vec witness_;
};

}  // namespace polyadmm
