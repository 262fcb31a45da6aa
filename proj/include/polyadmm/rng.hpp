// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <random>

#include "polyadmm/types.hpp"

namespace polyadmm {

// Seeded mt19937_64 with uniforms derived from raw bits, so draws are
// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  Vec uniform_vec(int n, double a, double b) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(a, b);
    return v;
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Uniform draw from {(y, l) : beta^2||y - yc||^2 + ||l - lc||^2 <= r^2} by
  // rejection from the bounding box.
  std::pair<Vec, Vec> weighted_ball(const Vec& y_center, const Vec& lambda_center, double beta,
                                    double radius) {
    const int m = static_cast<int>(y_center.size());
    for (;;) {
      Vec y(m), l(m);
      for (int i = 0; i < m; ++i) y(i) = y_center(i) + uniform(-radius / beta, radius / beta);
      for (int i = 0; i < m; ++i) l(i) = lambda_center(i) + uniform(-radius, radius);
      const double w2 = beta * beta * (y - y_center).squaredNorm() +
                        (l - lambda_center).squaredNorm();
      if (w2 <= radius * radius) return {y, l};
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace polyadmm
