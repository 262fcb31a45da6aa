// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "polyadmm/admm.hpp"
#include "polyadmm/errors.hpp"
#include "polyadmm/gallery.hpp"
#include "polyadmm/rng.hpp"

using namespace polyadmm;

namespace {
Vec scalar(double v) { return Vec::Constant(1, v); }
}  // namespace

TEST_CASE("x-update closed forms") {
  const auto spec1 = gallery::example(1);
  auto cfg1 = gallery::example_config(1, 4.0);
  const Vec x1 = x_update(spec1, cfg1, scalar(0.1), scalar(0.0)).x;
  CHECK(x1(0) == Catch::Approx(2.0 / 15.0).margin(1e-15));

  const auto spec2 = gallery::example(2);
  auto cfg2 = gallery::example_config(2, 2.0);
  const Vec x2 = x_update(spec2, cfg2, scalar(0.0), scalar(-1.0)).x;
  CHECK(x2(0) == Catch::Approx(1.0).margin(0.0));
  CHECK(std::cos(x2(1)) == Catch::Approx(-1.0).margin(1e-15));

  const auto spec3 = gallery::example(3);
  auto cfg3 = gallery::example_config(3, 2.0);
  const Vec x3 = x_update(spec3, cfg3, scalar(0.0), scalar(-1.0)).x;
  CHECK(x3(0) == Catch::Approx(1.0).margin(0.0));

  // a mismatched key is a capability error
  auto bad = cfg1;
  bad.x_solver = ClosedFormX{"example3"};
  CHECK_THROWS_AS(x_update(spec1, bad, scalar(0.0), scalar(0.0)), CapabilityError);
}

TEST_CASE("certified grid solver agrees with the registered forms") {
  const auto spec3 = gallery::example(3);
  AdmmConfig closed = gallery::example_config(3, 2.0);
  AdmmConfig grid = closed;
  grid.x_solver = Global1dX{100001, 8.0, 6};
  Rng rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec y = scalar(rng.uniform(-1.0, 1.0));
    const Vec lam = scalar(rng.uniform(-1.0, 1.0));
    const Vec a = x_update(spec3, closed, y, lam).x;
    const Vec b = x_update(spec3, grid, y, lam).x;
    CHECK(std::abs(a(0) - b(0)) < 1e-6);
  }
}

TEST_CASE("projected gradient returns an uncertified stationary point") {
  const auto spec1 = gallery::example(1);
  AdmmConfig cfg = gallery::example_config(1, 4.0);
  cfg.x_solver = ProjGradX{};
  const auto r = x_update(spec1, cfg, scalar(0.1), scalar(0.0));
  CHECK_FALSE(r.global_certified);
  // for this convex-in-x subproblem the stationary point is the minimizer
  CHECK(r.x(0) == Catch::Approx(2.0 / 15.0).margin(1e-8));
}

TEST_CASE("y-update is the scaled prox") {
  const auto spec = gallery::example(3);
  AdmmConfig cfg = gallery::example_config(3, 2.0);
  const auto r = y_update(spec, cfg, scalar(1.0), scalar(-1.0));
  CHECK(r.y(0) == Catch::Approx(0.0).margin(0.0));
  CHECK(r.lambda_hat(0) == Catch::Approx(1.0).margin(0.0));

  const auto r0 = y_update(spec, cfg, scalar(0.0), scalar(0.0));
  CHECK(r0.y(0) == 0.0);

  AdmmConfig cfg4 = gallery::example_config(3, 4.0);
  const auto r4 = y_update(spec, cfg4, scalar(1.0), scalar(0.0));
  CHECK(r4.y(0) == Catch::Approx(0.75).margin(1e-15));
}

TEST_CASE("multiplier update identity") {
  CHECK(lambda_update(2.0, scalar(-1.0), scalar(1.0), scalar(0.0))(0) == 1.0);
  CHECK(lambda_update(3.0, scalar(0.0), scalar(0.7), scalar(0.7))(0) == 0.0);
}

TEST_CASE("run converges on example 1 and flags an infeasible dual init") {
  const auto spec = gallery::example(1);
  AdmmConfig cfg = gallery::example_config(1, 4.0);
  cfg.eps_pri = cfg.eps_dua = 1e-10;
  cfg.max_iter = 300;
  cfg.check_dual_feasibility = true;
  const auto ref = gallery::example_reference(1);
  const IterateTrace tr = run(spec, cfg, scalar(0.1), scalar(0.2), ref);
  CHECK_FALSE(tr.init_dual_feasible);  // 0.2 is not a subgradient of |.| at 0.1
  REQUIRE(tr.termination == Termination::kConverged);
  const AdmmState& last = tr.last();
  CHECK(std::abs(last.x(0)) < 1e-9);
  CHECK(std::abs(last.y(0)) < 1e-9);
  CHECK(std::abs(last.lambda(0)) < 1e-9);
  REQUIRE(tr.init_ball_radius_sq.has_value());
  CHECK(*tr.init_ball_radius_sq == Catch::Approx(16.0 * 0.01 + 0.04).margin(1e-12));

  // per-iterate invariants: dual feasibility and the multiplier identity
  Vec lambda_prev = tr.lambda0;
  for (size_t i = 0; i < tr.states.size(); ++i) {
    CHECK(tr.diag[i].dual_feas_dist < kOptTol);
    const Vec expected =
        lambda_prev + cfg.beta * (spec.A() * tr.states[i].x - tr.states[i].y);
    CHECK((tr.states[i].lambda - expected).norm() == 0.0);  // same arithmetic
    lambda_prev = tr.states[i].lambda;
  }
  // iteration indices are contiguous from 1
  for (size_t i = 0; i < tr.states.size(); ++i)
    CHECK(tr.states[i].k == static_cast<int>(i) + 1);
}

TEST_CASE("run detects the period-2 cycles of examples 2 and 3") {
  for (double beta : {1.0, 2.0, 5.0}) {
    const auto spec = gallery::example(2);
    AdmmConfig cfg = gallery::example_config(2, beta);
    cfg.max_iter = 200;
    const IterateTrace tr = run(spec, cfg, scalar(0.0), scalar(-1.0));
    REQUIRE(tr.termination == Termination::kCycleDetected);
    REQUIRE(tr.cycle.has_value());
    CHECK(tr.cycle->period == 2);
    for (const auto& st : tr.cycle->states) {
      CHECK(std::abs(std::abs(st.x(0)) - 2.0 / beta) < 1e-12);
      CHECK(std::abs(st.y(0)) < 1e-12);
      CHECK(std::abs(std::abs(st.lambda(0)) - 1.0) < 1e-12);
    }
  }
  const auto spec3 = gallery::example(3);
  AdmmConfig cfg3 = gallery::example_config(3, 2.0);
  cfg3.max_iter = 200;
  const IterateTrace tr3 = run(spec3, cfg3, scalar(0.0), scalar(-1.0));
  REQUIRE(tr3.termination == Termination::kCycleDetected);
  CHECK(tr3.cycle->period == 2);
  for (const auto& st : tr3.cycle->states) {
    CHECK(std::abs(std::abs(st.x(0)) - 1.0) < 1e-12);
    CHECK(std::abs(st.y(0)) < 1e-12);
    CHECK(std::abs(std::abs(st.lambda(0)) - 1.0) < 1e-12);
  }
}

TEST_CASE("detect_cycle on synthetic traces") {
  auto mk = [](double x) {
    AdmmState st;
    st.x = scalar(x);
    st.y = scalar(x);
    st.lambda = scalar(x);
    return st;
  };
  std::vector<AdmmState> flip;
  for (int i = 0; i < 12; ++i) flip.push_back(mk(i % 2 == 0 ? 1.0 : -1.0));
  auto cyc = detect_cycle(flip, 4, 1e-10);
  REQUIRE(cyc.has_value());
  CHECK(cyc->period == 2);
  CHECK_FALSE(cyc->fixed_point);

  std::vector<AdmmState> constant(12, mk(0.3));
  auto fp = detect_cycle(constant, 4, 1e-10);
  REQUIRE(fp.has_value());
  CHECK(fp->period == 1);
  CHECK(fp->fixed_point);

  std::vector<AdmmState> wander;
  for (int i = 0; i < 12; ++i) wander.push_back(mk(std::sqrt(static_cast<double>(i) + 2.0)));
  CHECK_FALSE(detect_cycle(wander, 4, 1e-10).has_value());

  // too short: needs 2*window states
  CHECK_FALSE(detect_cycle(flip, 8, 1e-10).has_value());
}

TEST_CASE("generic pipeline reproduces the registered example-1 trajectory") {
  const auto spec = gallery::example(1);
  AdmmConfig closed = gallery::example_config(1, 4.0);
  closed.max_iter = 100;
  closed.eps_pri = closed.eps_dua = 1e-300;

  AdmmConfig generic = closed;
  generic.x_solver = Global1dX{20001, 8.0, 6};
  generic.prox_method = ProxMethod::kQp;

  const Vec y0 = scalar(0.1), l0 = scalar(1.0);  // dual-feasible start
  const IterateTrace a = run(spec, closed, y0, l0);
  const IterateTrace b = run(spec, generic, y0, l0);
  REQUIRE(a.states.size() == b.states.size());
  for (size_t i = 0; i < a.states.size(); ++i) {
    CHECK((a.states[i].x - b.states[i].x).lpNorm<Eigen::Infinity>() < 1e-8);
    CHECK((a.states[i].y - b.states[i].y).lpNorm<Eigen::Infinity>() < 1e-8);
    CHECK((a.states[i].lambda - b.states[i].lambda).lpNorm<Eigen::Infinity>() < 1e-8);
  }
}

TEST_CASE("Lyapunov value is nonincreasing under the locality conditions") {
  const auto spec = gallery::example(1);
  const auto ref = gallery::example_reference(1);
  for (double l0 : {0.3, -0.45, 0.5}) {
    AdmmConfig cfg = gallery::example_config(1, 4.0);
    cfg.eps_pri = cfg.eps_dua = 1e-13;
    const IterateTrace tr = run(spec, cfg, scalar(0.0), scalar(l0), ref);
    REQUIRE(tr.termination == Termination::kConverged);
    CHECK(tr.init_dual_feasible);
    double prev = 0.5 * cfg.beta * tr.y0.squaredNorm() +
                  tr.lambda0.squaredNorm() / (2.0 * cfg.beta);
    for (const auto& d : tr.diag) {
      CHECK(d.lyapunov <= prev + kOptTol);
      prev = d.lyapunov;
    }
  }
}

TEST_CASE("scheme 4 runs as plumbing") {
  const auto spec = gallery::example(1);
  AdmmConfig cfg;
  cfg.beta = 4.0;
  cfg.variant = AdmmVariant::kScheme4;
  cfg.x_solver = Global1dX{4001, 8.0, 4};
  cfg.max_iter = 200;
  cfg.eps_pri = cfg.eps_dua = 1e-10;
  const IterateTrace tr = run(spec, cfg, scalar(0.1), scalar(0.0));
  CHECK(tr.termination == Termination::kConverged);
  CHECK(std::abs(tr.last().x(0)) < 1e-8);
}

TEST_CASE("trace CSV export format") {
  const auto spec = gallery::example(1);
  AdmmConfig cfg = gallery::example_config(1, 4.0);
  cfg.max_iter = 5;
  cfg.eps_pri = cfg.eps_dua = 1e-300;
  const IterateTrace tr = run(spec, cfg, scalar(0.1), scalar(1.0), gallery::example_reference(1));
  std::ostringstream os;
  write_trace_csv(os, tr, {{"seed", "7"}});
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "k,x0,y0,lambda0,r_pri,r_dua,s_k,lyapunov,descent_slack");
  int rows = 0;
  std::string last_line;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] == '#') {
      last_line = line;
      break;
    }
    ++rows;
  }
  CHECK(rows == 5);
  CHECK(last_line.find("termination=max_iter") != std::string::npos);
  CHECK(last_line.find("seed=7") != std::string::npos);

  // 17 significant digits round-trip: parse back x0 of the first row
  std::istringstream is2(os.str());
  std::getline(is2, line);  // header
  std::getline(is2, line);
  const size_t c1 = line.find(',');
  const size_t c2 = line.find(',', c1 + 1);
  const double x0 = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
  CHECK(x0 == tr.states[0].x(0));
}

TEST_CASE("config validation") {
  AdmmConfig cfg;
  cfg.beta = -1.0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg.beta = 1.0;
  cfg.eps_pri = 0.0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg.eps_pri = 1e-8;
  cfg.max_iter = 0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
}

TEST_CASE("problem construction certifies the standing feasibility assumption") {
  // witness lands in C with its image inside dom g
  const auto spec = gallery::example(1);
  CHECK(spec.C().contains(spec.feasibility_witness()));
  CHECK(std::isfinite(spec.g().eval(spec.A() * spec.feasibility_witness())));

  const auto f = SmoothFunction::builtin("neg_half_square");

  // image of C misses dom g entirely
  CHECK_THROWS_AS(
      ProblemSpec::make(f, MaxAffineFunction::box_indicator(scalar(-1.0), scalar(1.0)),
                        Mat::Identity(1, 1), ConvexSet::box(scalar(2.0), scalar(3.0))),
      InvariantError);

  // dom g touches C only at a relative-boundary point of C
  CHECK_THROWS_AS(
      ProblemSpec::make(f, MaxAffineFunction::box_indicator(scalar(-1.0), scalar(0.0)),
                        Mat::Identity(1, 1), ConvexSet::box(scalar(0.0), scalar(1.0))),
      InvariantError);

  // ball variant: boundary touch fails, interior overlap passes
  Mat grow(1, 1);
  grow << -1.0;  // x >= 1
  const auto ge1 = MaxAffineFunction::box_indicator(scalar(1.0), scalar(5.0));
  CHECK_THROWS_AS(ProblemSpec::make(f, ge1, Mat::Identity(1, 1),
                                    ConvexSet::ball(Vec::Zero(1), 1.0)),
                  InvariantError);
  const auto ge_half = MaxAffineFunction::box_indicator(scalar(0.5), scalar(5.0));
  const auto ok = ProblemSpec::make(f, ge_half, Mat::Identity(1, 1),
                                    ConvexSet::ball(Vec::Zero(1), 1.0));
  CHECK((ok.feasibility_witness() - scalar(0.5)).norm() < 1e-6);

  // pinned box: ri of a point is the point, so an exact touch is fine
  const auto pinned = ProblemSpec::make(f, ge_half, Mat::Identity(1, 1),
                                        ConvexSet::box(scalar(0.7), scalar(0.7)));
  CHECK(pinned.feasibility_witness()(0) == Catch::Approx(0.7).margin(1e-9));
}
