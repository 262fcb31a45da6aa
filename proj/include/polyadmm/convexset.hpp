// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>
#include <variant>

#include "polyadmm/geometry.hpp"
#include "polyadmm/types.hpp"

namespace polyadmm {

// Constraint set C. Nonempty by construction (box bounds ordered, polyhedron
// feasibility certified, ball radius >= 0).
class ConvexSet {
 public:
  enum class Kind { kWholeSpace, kBox, kHPolyhedron, kBall };

  static ConvexSet whole_space(int dim);
  static ConvexSet box(const Vec& lower, const Vec& upper);
  static ConvexSet polyhedron(Mat g, Vec h);
  static ConvexSet ball(const Vec& center, double radius);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool is_polyhedral() const { return kind_ != Kind::kBall; }
  const Vec& box_lower() const { return lower_; }
  const Vec& box_upper() const { return upper_; }
  const geom::Polyhedron& as_polyhedron() const;  // polyhedral kinds only
  const Vec& ball_center() const { return center_; }
  double ball_radius() const { return radius_; }

  bool contains(const Vec& x, double tol = kGeomTol) const;
  Vec project(const Vec& x) const;
  // dist(v, N_C(x)); zero certifies v is a normal vector at x.
  double normal_cone_dist(const Vec& x, const Vec& v) const;
  // Tangent cone at a member point. The ball yields a halfspace at boundary
  // points and the whole space in the interior, so the result is polyhedral
  // for every variant.
  geom::PolyhedralCone tangent_cone(const Vec& x) const;
  // Orthonormal basis of the affine-hull direction subspace.
  geom::Subspace affine_hull_subspace() const;
  // A point in the relative interior.
  Vec relative_interior_point() const;

 private:
  ConvexSet() = default;

  Kind kind_ = Kind::kWholeSpace;
  int dim_ = 0;
  Vec lower_, upper_;                       // kBox
  std::optional<geom::Polyhedron> poly_;    // kBox / kHPolyhedron
  Vec center_;                              // kBall
  double radius_ = 0.0;                     // kBall
};

}  // namespace polyadmm
