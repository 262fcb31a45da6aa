// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include <stdexcept>
#include <string>

namespace polyadmm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments, malformed configs, dimension mismatches.
struct UsageError : Error {
  using Error::Error;
};

// A documented precondition does not hold (e.g. point outside the set).
struct PreconditionError : Error {
  using Error::Error;
};

// The requested operation is not available for this problem class.
struct CapabilityError : Error {
  using Error::Error;
};

// An iterative subsolver failed to converge; message carries the residual.
struct SolverError : Error {
  using Error::Error;
};

// A construction-time invariant is violated (e.g. empty domain).
struct InvariantError : Error {
  using Error::Error;
};

}  // namespace polyadmm
