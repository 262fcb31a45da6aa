// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyadmm/geometry.hpp"
#include "polyadmm/types.hpp"

namespace polyadmm {

// Envelope parameter mu > 0. In ADMM use mu = 1/beta.
struct MoreauParams {
  double mu;
  explicit MoreauParams(double mu_in);
};

struct ProxResult {
  Vec point;     // argmin_z g(z) + 1/(2 mu) ||z - w||^2
  Vec multiplier;  // (w - point)/mu, a subgradient of g at point
  double value;  // the envelope value at w
};

struct ProxOptions {
  bool force_qp = false;                // skip closed-form fast paths
  std::optional<Vec> start_hint;        // warm start for the QP path
};

// Closed-form extrapolation of the envelope gradient along a direction,
// valid while the prox active set is unchanged; t_valid is a bisection
// estimate of that range and within_validity flags t <= t_valid.
struct GradientStepResult {
  Vec gradient;
  double t_valid;
  bool within_validity;
};

// Polyhedral convex function g(y) = max_i <a_i, y> + b_i + indicator(domain),
// with domain {y : H y <= h} (possibly all of R^m). The domain is certified
// nonempty at construction. Immutable; all operations are pure.
class MaxAffineFunction {
 public:
  enum class FastPath { kNone, kAbs, kL1, kBoxIndicator, kSingleAffine };

  static MaxAffineFunction from_pieces(Mat piece_gradients, Vec piece_offsets,
                                       std::optional<geom::Polyhedron> domain = std::nullopt);
  static MaxAffineFunction abs1d();
  static MaxAffineFunction l1(int dim);
  static MaxAffineFunction box_indicator(const Vec& lower, const Vec& upper);

  int dim() const { return static_cast<int>(pieces_a_.cols()); }
  int num_pieces() const { return static_cast<int>(pieces_a_.rows()); }
  const Mat& piece_gradients() const { return pieces_a_; }
  const Vec& piece_offsets() const { return pieces_b_; }
  const geom::Polyhedron& domain() const { return domain_; }
  bool domain_trivial() const { return domain_.hrep().G.rows() == 0; }
  FastPath fast_path() const { return fast_path_; }

  // +inf iff y violates the domain by more than the geometric tolerance.
  double eval(const Vec& y) const;
  // Active pieces at y (relative tolerance kActiveTol). Requires eval finite.
  std::vector<int> active_pieces(const Vec& y) const;
  // One-sided directional derivative g'(y; w); +inf when y + t w leaves the
  // domain for every small t > 0.
  double directional_derivative(const Vec& y, const Vec& w) const;
  // conv{a_j : j active} + normal cone of the domain at y, in generator form
  // (H-form derived lazily).
  geom::Polyhedron subdifferential(const Vec& y) const;
  double dist_to_subdifferential(const Vec& y, const Vec& lambda) const;

  ProxResult prox(const MoreauParams& p, const Vec& w, const ProxOptions& opt = {}) const;
  double moreau_value(const MoreauParams& p, const Vec& w) const;
  Vec moreau_grad(const MoreauParams& p, const Vec& w) const;
  // Hessian of the envelope at w when it exists (multiplier in the relative
  // interior of the subdifferential); nullopt at kink points.
  std::optional<Mat> moreau_hessian_if_exists(const MoreauParams& p, const Vec& w) const;

  // Tangent cone of the subdifferential at a member multiplier.
  geom::PolyhedralCone tangent_cone_of_subdiff(const Vec& y, const Vec& lambda) const;
  // {w : g'(y; w) = <lambda, w>}, from piece-activity inequalities.
  geom::PolyhedralCone tangent_set(const Vec& y, const Vec& lambda) const;
  // Span of the tangent set, via generators of the cone.
  geom::Subspace critical_subspace(const Vec& y, const Vec& lambda) const;

  GradientStepResult moreau_grad_extrapolated(const MoreauParams& p, const Vec& y,
                                              const Vec& lambda, const Vec& w, double t) const;

 private:
  MaxAffineFunction(Mat a, Vec b, geom::Polyhedron domain, Vec witness, FastPath fp);
  ProxResult prox_qp(const MoreauParams& p, const Vec& w, const std::optional<Vec>& hint) const;
  std::vector<int> active_domain_rows(const Vec& y) const;
  // Sorted active-set signature of the prox at w (pieces then domain rows).
  std::vector<int> prox_signature(const MoreauParams& p, const Vec& w) const;
  void require_member(const Vec& y) const;
  void require_subgradient(const Vec& y, const Vec& lambda) const;

  Mat pieces_a_;  // num_pieces x dim
  Vec pieces_b_;
  geom::Polyhedron domain_;
  Vec domain_witness_;
  FastPath fast_path_ = FastPath::kNone;
  Vec box_lower_, box_upper_;  // kBoxIndicator only
};

}  // namespace polyadmm
