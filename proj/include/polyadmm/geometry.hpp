// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "polyadmm/types.hpp"

namespace polyadmm::geom {

// Orthonormal-basis representation of a linear subspace of R^n.
class Subspace {
 public:
  Subspace(Mat basis, int ambient_dim);
  static Subspace zero(int ambient_dim);
  static Subspace full(int ambient_dim);
  // Span of the given column vectors (rank decided at tol).
  static Subspace span_of(const Mat& vectors, int ambient_dim, double tol = kLinTol);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const { return basis_; }
  Mat projector() const { return basis_ * basis_.transpose(); }
  Vec project(const Vec& v) const { return basis_ * (basis_.transpose() * v); }
  bool contains(const Vec& v, double tol = 1e-9) const;
  bool contains(const Subspace& other, double tol = 1e-9) const;

  static Subspace intersect(const Subspace& a, const Subspace& b);

 private:
  Mat basis_;  // ambient_dim x dim, orthonormal columns
  int ambient_dim_;
};

// Generators of a cone: unit extreme rays plus an orthonormal lineality
// basis. cone = cone(rays) + span(lineality).
struct ConeGenerators {
  Mat rays;
  Mat lineality;
};

// Minimal generators of {v : rows * v <= 0} by the double description
// method (lineality split off first, then incremental ray insertion with an
// extremality prune). Intended for the small dimensions this library
// targets.
ConeGenerators cone_generators(const Mat& rows, int dim);

// Generator form of a polyhedron: conv(points) + cone(rays) + span(lineality).
struct VRep {
  Mat points;     // dim x np (np >= 1 iff nonempty)
  Mat rays;       // dim x nr, unit columns
  Mat lineality;  // dim x nl, orthonormal columns
};

struct HRep {
  Mat G;  // rows normalized to unit norm
  Vec h;
};

// H -> V by homogenization, V -> H through the polar cone. Both reduce to
// cone_generators.
std::optional<VRep> enumerate_generators(const Mat& g, const Vec& h);
HRep facets_from_generators(const VRep& vr);

// Polyhedral convex cone {v : G v <= 0}.
class PolyhedralCone {
 public:
  explicit PolyhedralCone(Mat rows, int dim);
  static PolyhedralCone whole_space(int dim);
  static PolyhedralCone from_generators(const Mat& rays, const Mat& lineality, int dim);

  int dim() const { return dim_; }
  const Mat& rows() const { return rows_; }
  bool contains(const Vec& v, double tol = kGeomTol) const;
  // Euclidean projection (exact active-set QP).
  Vec project(const Vec& w) const;
  const ConeGenerators& generators() const;
  // Smallest subspace containing the cone.
  Subspace span() const;
  PolyhedralCone polar() const;
  bool same_cone_as(const PolyhedralCone& other, double tol = 1e-8) const;

 private:
  Mat rows_;  // unit rows
  int dim_;
  std::shared_ptr<std::once_flag> gen_once_;
  std::shared_ptr<ConeGenerators> gen_cache_;
};

// Polyhedron that may be born from either representation; the other is
// derived lazily and cached (write-once).
class Polyhedron {
 public:
  static Polyhedron from_inequalities(Mat g, Vec h);
  static Polyhedron from_generators(VRep vr, int dim);
  static Polyhedron whole_space(int dim);

  int dim() const { return dim_; }
  bool trivial() const;  // no constraints (all of R^dim)
  const HRep& hrep() const;
  const VRep& vrep() const;  // throws InvariantError when empty
  bool hrep_known() const { return hrep_.has_value(); }
  bool vrep_known() const { return vrep_.has_value(); }

  bool empty() const;
  bool contains(const Vec& v, double tol = kGeomTol) const;
  double distance(const Vec& v) const;
  Vec project(const Vec& v) const;
  Vec any_point() const;

  // Tangent cone at a member point: active rows with zeroed right-hand side.
  PolyhedralCone tangent_cone_at(const Vec& v) const;
  // Direction subspace of the affine hull.
  Subspace affine_hull_directions() const;
  // Indices of H-rep rows that hold with equality on the whole set. Uses the
  // generator scan when a V-rep is available and per-row slack LPs otherwise.
  std::vector<int> implicit_equalities() const;
  bool in_relative_interior(const Vec& v, double ri_tol = kRiTol) const;

 private:
  Polyhedron() = default;
  void ensure_hrep() const;
  void ensure_vrep() const;

  int dim_ = 0;
  mutable std::optional<HRep> hrep_;
  mutable std::optional<VRep> vrep_;
  mutable bool known_empty_ = false;
  std::shared_ptr<std::mutex> cache_mutex_ = std::make_shared<std::mutex>();
};

}  // namespace polyadmm::geom
