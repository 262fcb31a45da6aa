// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include "polyadmm/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "polyadmm/errors.hpp"
#include "polyadmm/gallery.hpp"

namespace polyadmm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw UsageError("config: field '" + field + "': " + what);
}

const json& need(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) fail(ctx + "." + key, "missing");
  return j.at(key);
}

Vec parse_vec(const json& j, const std::string& ctx) {
  if (!j.is_array()) fail(ctx, "expected an array of numbers");
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail(ctx, "expected an array of numbers");
    v(static_cast<int>(i)) = j[i].get<double>();
  }
  return v;
}

Mat parse_mat(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) fail(ctx, "expected a nonempty array of rows");
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) fail(ctx, "rows must be nonempty arrays");
  Mat m(j.size(), cols);
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) fail(ctx, "ragged rows");
    for (size_t k = 0; k < cols; ++k) m(static_cast<int>(i), static_cast<int>(k)) =
        j[i][k].get<double>();
  }
  return m;
}

}  // namespace

SmoothFunction parse_smooth(const json& j) {
  const std::string type = need(j, "type", "f").get<std::string>();
  if (type == "builtin") return SmoothFunction::builtin(need(j, "name", "f").get<std::string>());
  if (type == "quadratic")
    return SmoothFunction::quadratic(parse_mat(need(j, "Q", "f"), "f.Q"),
                                     parse_vec(need(j, "c", "f"), "f.c"));
  fail("f.type", "unknown type '" + type + "'");
}

MaxAffineFunction parse_max_affine(const json& j) {
  const std::string type = need(j, "type", "g").get<std::string>();
  if (type == "builtin") {
    const std::string name = need(j, "name", "g").get<std::string>();
    if (name == "abs") return MaxAffineFunction::abs1d();
    if (name == "l1") return MaxAffineFunction::l1(need(j, "dim", "g").get<int>());
    if (name == "box_indicator")
      return MaxAffineFunction::box_indicator(parse_vec(need(j, "lower", "g"), "g.lower"),
                                              parse_vec(need(j, "upper", "g"), "g.upper"));
    fail("g.name", "unknown builtin '" + name + "'");
  }
  if (type == "max_affine") {
    const Mat rows = parse_mat(need(j, "pieces", "g"), "g.pieces");
    if (rows.cols() < 2) fail("g.pieces", "each piece is [a..., b]");
    const Mat a = rows.leftCols(rows.cols() - 1);
    const Vec b = rows.rightCols(1);
    std::optional<geom::Polyhedron> dom;
    if (j.contains("domain") && !j.at("domain").is_null()) {
      const json& d = j.at("domain");
      dom = geom::Polyhedron::from_inequalities(parse_mat(need(d, "G", "g.domain"), "g.domain.G"),
                                                parse_vec(need(d, "h", "g.domain"), "g.domain.h"));
    }
    return MaxAffineFunction::from_pieces(a, b, std::move(dom));
  }
  fail("g.type", "unknown type '" + type + "'");
}

ConvexSet parse_convex_set(const json& j) {
  const std::string type = need(j, "type", "C").get<std::string>();
  if (type == "whole_space") return ConvexSet::whole_space(need(j, "dim", "C").get<int>());
  if (type == "box")
    return ConvexSet::box(parse_vec(need(j, "lower", "C"), "C.lower"),
                          parse_vec(need(j, "upper", "C"), "C.upper"));
  if (type == "polyhedron")
    return ConvexSet::polyhedron(parse_mat(need(j, "G", "C"), "C.G"),
                                 parse_vec(need(j, "h", "C"), "C.h"));
  if (type == "ball")
    return ConvexSet::ball(parse_vec(need(j, "center", "C"), "C.center"),
                           need(j, "radius", "C").get<double>());
  fail("C.type", "unknown type '" + type + "'");
}

ProblemSpec parse_problem(const json& j) {
  if (j.contains("example")) return gallery::example(j.at("example").get<int>());
  if (j.contains("file")) {
    std::ifstream in(j.at("file").get<std::string>());
    if (!in) fail("problem.file", "cannot open '" + j.at("file").get<std::string>() + "'");
    json sub;
    try {
      in >> sub;
    } catch (const json::exception& e) {
      fail("problem.file", e.what());
    }
    return parse_problem(sub);
  }
  return ProblemSpec::make(parse_smooth(need(j, "f", "problem")),
                           parse_max_affine(need(j, "g", "problem")),
                           parse_mat(need(j, "A", "problem"), "problem.A"),
                           parse_convex_set(need(j, "C", "problem")));
}

AdmmConfig parse_admm(const json& j) {
  AdmmConfig cfg;
  cfg.beta = need(j, "beta", "admm").get<double>();
  if (j.contains("max_iter")) cfg.max_iter = j.at("max_iter").get<int>();
  if (j.contains("eps_pri")) cfg.eps_pri = j.at("eps_pri").get<double>();
  if (j.contains("eps_dua")) cfg.eps_dua = j.at("eps_dua").get<double>();
  if (j.contains("variant")) {
    const std::string v = j.at("variant").get<std::string>();
    if (v == "scheme3")
      cfg.variant = AdmmVariant::kScheme3;
    else if (v == "scheme4")
      cfg.variant = AdmmVariant::kScheme4;
    else
      fail("admm.variant", "expected 'scheme3' or 'scheme4'");
  }
  if (j.contains("prox")) {
    const std::string v = j.at("prox").get<std::string>();
    if (v == "fast")
      cfg.prox_method = ProxMethod::kFast;
    else if (v == "qp")
      cfg.prox_method = ProxMethod::kQp;
    else
      fail("admm.prox", "expected 'fast' or 'qp'");
  }
  if (j.contains("cycle_window")) cfg.cycle_window = j.at("cycle_window").get<int>();
  if (j.contains("cycle_tol")) cfg.cycle_tol = j.at("cycle_tol").get<double>();
  if (j.contains("check_dual_feasibility"))
    cfg.check_dual_feasibility = j.at("check_dual_feasibility").get<bool>();
  if (j.contains("x_solver")) {
    const json& xs = j.at("x_solver");
    const std::string type = need(xs, "type", "admm.x_solver").get<std::string>();
    if (type == "closed_form") {
      cfg.x_solver = ClosedFormX{need(xs, "key", "admm.x_solver").get<std::string>()};
    } else if (type == "global_1d") {
      Global1dX g;
      if (xs.contains("grid_points")) g.grid_points = xs.at("grid_points").get<int>();
      if (xs.contains("search_radius")) g.search_radius = xs.at("search_radius").get<double>();
      if (xs.contains("top_candidates")) g.top_candidates = xs.at("top_candidates").get<int>();
      cfg.x_solver = g;
    } else if (type == "projected_gradient") {
      ProjGradX pg;
      if (xs.contains("tol")) pg.tol = xs.at("tol").get<double>();
      if (xs.contains("max_iter")) pg.max_iter = xs.at("max_iter").get<int>();
      cfg.x_solver = pg;
    } else {
      fail("admm.x_solver.type", "unknown type '" + type + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_run_config(const json& j, const ConfigOverrides& ov) {
  try {
    RunConfig rc{parse_problem(need(j, "problem", "")),
                 parse_admm(need(j, "admm", "")),
                 InitExplicit{},
                 std::nullopt,
                 std::nullopt,
                 std::nullopt};
    if (ov.beta) {
      rc.admm.beta = *ov.beta;
      rc.admm.validate();
    }
    if (ov.max_iter) {
      rc.admm.max_iter = *ov.max_iter;
      rc.admm.validate();
    }

    const json& init = need(j, "init", "");
    if (init.contains("random_ball")) {
      const json& rb = init.at("random_ball");
      InitRandomBall b;
      b.radius_sq = need(rb, "radius_sq", "init.random_ball").get<double>();
      if (!(b.radius_sq > 0.0)) fail("init.random_ball.radius_sq", "must be positive");
      if (rb.contains("count")) b.count = rb.at("count").get<int>();
      if (b.count < 1) fail("init.random_ball.count", "must be >= 1");
      if (rb.contains("seed")) b.seed = rb.at("seed").get<std::uint64_t>();
      if (ov.seed) b.seed = *ov.seed;
      rc.init = b;
    } else {
      InitExplicit e;
      e.y0 = parse_vec(need(init, "y", "init"), "init.y");
      e.lambda0 = parse_vec(need(init, "lambda", "init"), "init.lambda");
      if (e.y0.size() != rc.problem.m() || e.lambda0.size() != rc.problem.m())
        fail("init", "y/lambda must have dimension rows(A)");
      rc.init = e;
    }

    if (j.contains("reference") && !j.at("reference").is_null()) {
      const json& r = j.at("reference");
      Reference ref{parse_vec(need(r, "x", "reference"), "reference.x"),
                    parse_vec(need(r, "lambda", "reference"), "reference.lambda")};
      if (ref.x_bar.size() != rc.problem.n() || ref.lambda_bar.size() != rc.problem.m())
        fail("reference", "dimension mismatch with the problem");
      rc.reference = ref;
    }

    std::optional<std::string> out_dir = ov.out_dir;
    if (!out_dir) {
      if (const char* env = std::getenv("POLYADMM_OUT_DIR"); env && *env) out_dir = env;
    }
    auto resolve = [&](const std::string& p) {
      if (!out_dir || std::filesystem::path(p).is_absolute()) return p;
      return (std::filesystem::path(*out_dir) / p).string();
    };
    if (j.contains("outputs") && !j.at("outputs").is_null()) {
      const json& o = j.at("outputs");
      if (o.contains("trace")) rc.trace_path = resolve(o.at("trace").get<std::string>());
      if (o.contains("report")) rc.report_path = resolve(o.at("report").get<std::string>());
    }
    return rc;
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

RunConfig load_run_config(const std::string& path, const ConfigOverrides& ov) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("config: parse error in '" + path + "': " + e.what());
  }
  return parse_run_config(j, ov);
}

}  // namespace polyadmm
