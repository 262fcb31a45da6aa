// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include <catch2/catch_amalgamated.hpp>

#include "polyadmm/errors.hpp"
#include "polyadmm/linalg.hpp"
#include "polyadmm/polyfunc.hpp"
#include "polyadmm/rng.hpp"
#include "support/oracles.hpp"

using namespace polyadmm;
using testsupport::grid_prox;
using testsupport::moreau_grad_fd;
using testsupport::random_max_affine;

namespace {
Vec scalar(double v) { return Vec::Constant(1, v); }
}  // namespace

TEST_CASE("eval of the built-in functions") {
  const auto g = MaxAffineFunction::abs1d();
  CHECK(g.eval(scalar(0.3)) == Catch::Approx(0.3));
  CHECK(g.eval(scalar(0.0)) == Catch::Approx(0.0).margin(0.0));
  const auto box = MaxAffineFunction::box_indicator(scalar(-1.0), scalar(1.0));
  CHECK(box.eval(scalar(2.0)) == kInf);
  CHECK(box.eval(scalar(0.5)) == Catch::Approx(0.0).margin(0.0));
  CHECK_THROWS_AS(g.eval(Vec::Zero(2)), UsageError);
}

TEST_CASE("directional derivatives") {
  const auto g = MaxAffineFunction::abs1d();
  CHECK(g.directional_derivative(scalar(0.0), scalar(1.0)) == Catch::Approx(1.0));
  CHECK(g.directional_derivative(scalar(0.0), scalar(-2.0)) == Catch::Approx(2.0));
  const auto box = MaxAffineFunction::box_indicator(scalar(-1.0), scalar(1.0));
  CHECK(box.directional_derivative(scalar(1.0), scalar(1.0)) == kInf);
  CHECK(box.directional_derivative(scalar(1.0), scalar(-1.0)) == Catch::Approx(0.0).margin(0.0));
  CHECK_THROWS_AS(box.directional_derivative(scalar(2.0), scalar(1.0)), PreconditionError);
}

TEST_CASE("subdifferentials of |.| and a box indicator") {
  const auto g = MaxAffineFunction::abs1d();
  const auto at0 = g.subdifferential(scalar(0.0));  // [-1, 1]
  CHECK(at0.distance(scalar(0.5)) < 1e-10);
  CHECK(at0.distance(scalar(1.0)) < 1e-10);
  CHECK(at0.distance(scalar(1.5)) == Catch::Approx(0.5).margin(1e-9));

  const auto at_half = g.subdifferential(scalar(0.5));  // {1}
  CHECK(at_half.distance(scalar(1.0)) < 1e-10);
  CHECK(at_half.distance(scalar(0.0)) == Catch::Approx(1.0).margin(1e-9));

  const auto box = MaxAffineFunction::box_indicator(scalar(-1.0), scalar(1.0));
  const auto at_edge = box.subdifferential(scalar(1.0));  // [0, inf)
  CHECK(at_edge.distance(scalar(5.0)) < 1e-9);
  CHECK(at_edge.distance(scalar(-1.0)) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("prox of |.| matches the closed-form envelope") {
  const auto g = MaxAffineFunction::abs1d();
  const MoreauParams mu(0.5);

  auto pr = g.prox(mu, scalar(0.2));
  CHECK(pr.point(0) == Catch::Approx(0.0).margin(1e-14));
  CHECK(pr.multiplier(0) == Catch::Approx(0.4).margin(1e-14));
  CHECK(pr.value == Catch::Approx(0.04).margin(1e-14));

  pr = g.prox(mu, scalar(1.0));
  CHECK(pr.point(0) == Catch::Approx(0.5).margin(1e-14));
  CHECK(pr.multiplier(0) == Catch::Approx(1.0).margin(1e-14));
  CHECK(pr.value == Catch::Approx(0.75).margin(1e-14));

  pr = g.prox(MoreauParams(1.7), scalar(0.0));
  CHECK(pr.point(0) == 0.0);
  CHECK(pr.multiplier(0) == 0.0);
  CHECK(pr.value == 0.0);

  // the exact QP path must agree with the soft-threshold fast path
  ProxOptions qp_only;
  qp_only.force_qp = true;
  for (double w : {-1.3, -0.6, -0.2, 0.0, 0.3, 0.49, 0.5, 0.51, 2.0}) {
    const auto fast = g.prox(mu, scalar(w));
    const auto exact = g.prox(mu, scalar(w), qp_only);
    CHECK((fast.point - exact.point).norm() < 1e-10);
    CHECK((fast.multiplier - exact.multiplier).norm() < 1e-10);
    CHECK(fast.value == Catch::Approx(exact.value).margin(1e-10));
  }
}

TEST_CASE("prox of a random 3-piece function matches the grid oracle") {
  Rng rng(101);
  Mat a(3, 2);
  Vec b(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) a(i, j) = rng.uniform(-1.5, 1.5);
    b(i) = rng.uniform(-1.0, 1.0);
  }
  const auto g = MaxAffineFunction::from_pieces(a, b);
  const MoreauParams mu(0.7);
  const Vec w = rng.uniform_vec(2, -2.0, 2.0);
  const auto pr = g.prox(mu, w);
  const auto oracle = grid_prox(g, mu.mu, w);
  CHECK((pr.point - oracle.point).lpNorm<Eigen::Infinity>() < 1e-4);
  CHECK(pr.value == Catch::Approx(oracle.value).margin(1e-4));
}

TEST_CASE("prox of a single affine piece is a shift") {
  Mat a(1, 2);
  a << 0.3, -0.8;
  const auto g = MaxAffineFunction::from_pieces(a, Vec::Constant(1, 0.25));
  const MoreauParams mu(0.9);
  Vec w(2);
  w << 1.0, -2.0;
  const auto pr = g.prox(mu, w);
  CHECK((pr.point - (w - mu.mu * a.row(0).transpose())).norm() < 1e-14);
  ProxOptions qp_only;
  qp_only.force_qp = true;
  const auto exact = g.prox(mu, w, qp_only);
  CHECK((pr.point - exact.point).norm() < 1e-9);
  CHECK(pr.value == Catch::Approx(exact.value).margin(1e-9));
}

TEST_CASE("Moreau decomposition holds with a unique pair") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = rng.uniform_int(1, 2);
    const auto g = random_max_affine(rng, d);
    const double mu = rng.uniform(0.2, 2.0);
    const Vec w = rng.uniform_vec(d, -2.0, 2.0);
    const auto pr = g.prox(MoreauParams(mu), w);
    CHECK((w - pr.point - mu * pr.multiplier).norm() < kOptTol);
    CHECK(g.dist_to_subdifferential(pr.point, pr.multiplier) < kOptTol);

    // re-solving from perturbed starts returns the same pair
    ProxOptions opt;
    opt.force_qp = true;
    opt.start_hint = pr.point + rng.uniform_vec(d, -1.0, 1.0);
    const auto pr2 = g.prox(MoreauParams(mu), w, opt);
    CHECK((pr.point - pr2.point).norm() < 10 * kOptTol);
    CHECK((pr.multiplier - pr2.multiplier).norm() < 10 * kOptTol);
  }
}

TEST_CASE("prox is nonexpansive") {
  Rng rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = rng.uniform_int(1, 2);
    const auto g = random_max_affine(rng, d);
    const double mu = rng.uniform(0.2, 2.0);
    const Vec w1 = rng.uniform_vec(d, -2.0, 2.0);
    const Vec w2 = rng.uniform_vec(d, -2.0, 2.0);
    const auto p1 = g.prox(MoreauParams(mu), w1);
    const auto p2 = g.prox(MoreauParams(mu), w2);
    CHECK((p1.point - p2.point).norm() <= (w1 - w2).norm() + kOptTol);
  }
}

TEST_CASE("envelope gradient: closed forms and finite differences") {
  const auto g = MaxAffineFunction::abs1d();
  const MoreauParams mu(0.5);
  CHECK(g.moreau_grad(mu, scalar(1.0))(0) == Catch::Approx(1.0).margin(1e-14));
  CHECK(g.moreau_grad(mu, scalar(0.0))(0) == Catch::Approx(0.0).margin(0.0));
  CHECK(g.moreau_grad(mu, scalar(0.2))(0) ==
        Catch::Approx(moreau_grad_fd(g, 0.5, scalar(0.2))(0)).margin(1e-6));

  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = rng.uniform_int(1, 2);
    const auto gr = random_max_affine(rng, d);
    const double m = rng.uniform(0.3, 1.5);
    const Vec w = rng.uniform_vec(d, -1.5, 1.5);
    const Vec grad = gr.moreau_grad(MoreauParams(m), w);
    const Vec fd = moreau_grad_fd(gr, m, w);
    CHECK((grad - fd).lpNorm<Eigen::Infinity>() < 1e-5);
  }
}

TEST_CASE("envelope Hessian exists exactly off the kinks") {
  const auto g = MaxAffineFunction::abs1d();
  const MoreauParams mu(0.5);

  auto h = g.moreau_hessian_if_exists(mu, scalar(0.1));
  REQUIRE(h.has_value());
  CHECK((*h)(0, 0) == Catch::Approx(2.0).margin(1e-10));

  h = g.moreau_hessian_if_exists(mu, scalar(1.0));
  REQUIRE(h.has_value());
  CHECK((*h)(0, 0) == Catch::Approx(0.0).margin(1e-10));

  CHECK_FALSE(g.moreau_hessian_if_exists(mu, scalar(0.5)).has_value());
}

TEST_CASE("envelope Hessian lower bound near a fixed base point") {
  Rng rng(37);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int d = rng.uniform_int(1, 2);
    const auto g = random_max_affine(rng, d);
    const double mu = rng.uniform(0.3, 1.5);
    const Vec w_bar = rng.uniform_vec(d, -1.5, 1.5);
    const auto pr = g.prox(MoreauParams(mu), w_bar);
    const geom::Subspace s = g.critical_subspace(pr.point, pr.multiplier);
    const Mat bound = (Mat::Identity(d, d) - s.projector()) / mu;
    for (int k = 0; k < 10; ++k) {
      const Vec w = w_bar + 1e-3 * (1.0 + w_bar.norm()) * rng.uniform_vec(d, -1.0, 1.0);
      const auto h = g.moreau_hessian_if_exists(MoreauParams(mu), w);
      if (!h) continue;
      ++checked;
      CHECK(linalg::min_eigenvalue(*h - bound) >= -kLinTol);
    }
  }
  CHECK(checked > 100);  // the sample must actually exercise the bound
}

TEST_CASE("tangent cone of the subdifferential") {
  const auto g = MaxAffineFunction::abs1d();
  // lambda interior: whole line
  CHECK(g.tangent_cone_of_subdiff(scalar(0.0), scalar(0.5)).same_cone_as(
      geom::PolyhedralCone::whole_space(1)));
  // upper endpoint: (-inf, 0]
  Mat neg_rows(1, 1);
  neg_rows << 1.0;
  CHECK(g.tangent_cone_of_subdiff(scalar(0.0), scalar(1.0)).same_cone_as(
      geom::PolyhedralCone(neg_rows, 1)));
  // singleton subdifferential: {0}; verify by membership enumeration
  const auto cone = g.tangent_cone_of_subdiff(scalar(0.5), scalar(1.0));
  CHECK(cone.contains(Vec::Zero(1)));
  for (double dir : {1e-3, -1e-3, 1.0, -1.0}) CHECK_FALSE(cone.contains(scalar(dir), 1e-12));
  CHECK_THROWS_AS(g.tangent_cone_of_subdiff(scalar(0.5), scalar(0.0)), PreconditionError);
}

TEST_CASE("tangent set of linear growth directions") {
  const auto g = MaxAffineFunction::abs1d();
  Mat both(2, 1);
  both << 1.0, -1.0;
  CHECK(g.tangent_set(scalar(0.0), scalar(0.0)).same_cone_as(geom::PolyhedralCone(both, 1)));
  Mat up(1, 1);
  up << -1.0;
  CHECK(g.tangent_set(scalar(0.0), scalar(1.0)).same_cone_as(geom::PolyhedralCone(up, 1)));
  Mat down(1, 1);
  down << 1.0;
  CHECK(g.tangent_set(scalar(0.0), scalar(-1.0)).same_cone_as(geom::PolyhedralCone(down, 1)));
}

TEST_CASE("tangent set agrees with the conjugate route (polarity)") {
  const auto g = MaxAffineFunction::abs1d();
  const auto gstar = MaxAffineFunction::box_indicator(scalar(-1.0), scalar(1.0));
  for (double lam : {-1.0, 0.0, 1.0}) {
    const auto direct = g.tangent_cone_of_subdiff(scalar(0.0), scalar(lam));
    const auto via_conjugate = gstar.tangent_cone_of_subdiff(scalar(lam), scalar(0.0));
    CHECK(direct.same_cone_as(via_conjugate.polar()));
    // and the tangent-set characterization matches the conjugate tangent cone
    CHECK(g.tangent_set(scalar(0.0), scalar(lam)).same_cone_as(via_conjugate));
  }
}

TEST_CASE("critical subspace of |.| and of the coordinatewise extension") {
  const auto g = MaxAffineFunction::abs1d();
  CHECK(g.critical_subspace(scalar(0.0), scalar(0.0)).dim() == 0);
  CHECK(g.critical_subspace(scalar(0.0), scalar(-1.0)).dim() == 1);

  const auto l1 = MaxAffineFunction::l1(2);
  Vec y(2), lam(2);
  y << 0.0, 1.0;
  lam << 0.0, 1.0;
  const geom::Subspace s = l1.critical_subspace(y, lam);
  REQUIRE(s.dim() == 1);
  Vec e2(2);
  e2 << 0.0, 1.0;
  CHECK(s.contains(e2));

  // brute force from the definition: directions where the one-sided
  // derivative (computed only through eval) equals <lambda, w>.
  Mat collected(2, 0);
  const double t = 1e-7;
  for (int a = 0; a < 64; ++a) {
    const double ang = 2.0 * M_PI * a / 64;
    Vec w(2);
    w << std::cos(ang), std::sin(ang);
    const double dd = (l1.eval(y + t * w) - l1.eval(y)) / t;
    if (std::abs(dd - lam.dot(w)) < 1e-7) {
      collected.conservativeResize(2, collected.cols() + 1);
      collected.col(collected.cols() - 1) = w;
    }
  }
  const geom::Subspace brute = geom::Subspace::span_of(collected, 2, 1e-8);
  CHECK(brute.dim() == s.dim());
  CHECK(s.contains(brute));
}

TEST_CASE("extrapolated envelope gradient matches the prox route") {
  const auto g = MaxAffineFunction::abs1d();
  const MoreauParams mu(0.5);

  auto r = g.moreau_grad_extrapolated(mu, scalar(0.0), scalar(0.0), scalar(1.0), 0.1);
  CHECK(r.gradient(0) == Catch::Approx(0.2).margin(1e-12));
  CHECK(r.within_validity);
  CHECK(r.gradient(0) ==
        Catch::Approx(g.moreau_grad(mu, scalar(0.1))(0)).margin(1e-10));

  r = g.moreau_grad_extrapolated(mu, scalar(0.0), scalar(1.0), scalar(-1.0), 0.1);
  CHECK(r.gradient(0) == Catch::Approx(0.8).margin(1e-12));
  CHECK(r.gradient(0) ==
        Catch::Approx(g.moreau_grad(mu, scalar(0.5 + 0.1 * -1.0))(0)).margin(1e-10));

  r = g.moreau_grad_extrapolated(mu, scalar(0.0), scalar(1.0), scalar(-1.0), 0.0);
  CHECK(r.gradient(0) == Catch::Approx(1.0).margin(0.0));

  Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = rng.uniform_int(1, 2);
    const auto gr = random_max_affine(rng, d);
    const double m = rng.uniform(0.3, 1.5);
    const Vec base = rng.uniform_vec(d, -1.5, 1.5);
    const auto pr = gr.prox(MoreauParams(m), base);  // (y, lambda) dual pair
    const Vec w = rng.uniform_vec(d, -1.0, 1.0);
    const auto probe =
        gr.moreau_grad_extrapolated(MoreauParams(m), pr.point, pr.multiplier, w, 0.0);
    const double t = std::min(0.5 * probe.t_valid, 1e-3);
    if (t <= 0.0) continue;
    const auto ex = gr.moreau_grad_extrapolated(MoreauParams(m), pr.point, pr.multiplier, w, t);
    const Vec direct = gr.moreau_grad(MoreauParams(m), pr.point + m * pr.multiplier + t * w);
    CHECK(ex.within_validity);
    CHECK((ex.gradient - direct).lpNorm<Eigen::Infinity>() < 1e-10);
  }
}

TEST_CASE("construction invariants") {
  CHECK_THROWS_AS(MaxAffineFunction::from_pieces(Mat(0, 1), Vec(0)), InvariantError);
  Mat g(2, 1);
  g << 1.0, -1.0;
  Vec h(2);
  h << -2.0, 1.0;  // empty: x <= -2 and x >= -1
  CHECK_THROWS_AS(
      MaxAffineFunction::from_pieces(Mat::Zero(1, 1), Vec::Zero(1),
                                     geom::Polyhedron::from_inequalities(g, h)),
      InvariantError);
  CHECK_THROWS_AS(MoreauParams(0.0), UsageError);
  CHECK_THROWS_AS(MoreauParams(-1.0), UsageError);
}
