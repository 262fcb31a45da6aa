// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include "polyadmm/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "polyadmm/diagnostics.hpp"
#include "polyadmm/errors.hpp"
#include "polyadmm/gallery.hpp"
#include "polyadmm/rng.hpp"
#include "polyadmm/svs.hpp"

namespace polyadmm::cli {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Indexed fan-out over a batch of independent jobs; results merge in input
// order regardless of scheduling.
template <typename Job>
void parallel_for(int count, Job&& job) {
  const int workers =
      std::max(1, std::min<int>(count, static_cast<int>(std::thread::hardware_concurrency())));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) job(i);
    });
  }
  for (auto& t : pool) t.join();
}

void ensure_parent_dir(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

int exit_code_for(Termination t) {
  switch (t) {
    case Termination::kConverged:
      return kExitConverged;
    case Termination::kCycleDetected:
      return kExitCycle;
    case Termination::kMaxIter:
      return kExitMaxIter;
    case Termination::kSolverError:
      return kExitSolverError;
  }
  return kExitSolverError;
}

int first_k_below(const IterateTrace& trace, double threshold) {
  for (size_t i = 0; i < trace.diag.size(); ++i)
    if (trace.diag[i].s_k < threshold) return trace.states[i].k;
  return -1;
}

json run_report(const ProblemSpec& spec, const IterateTrace& trace,
                const std::optional<Reference>& reference) {
  json rep;
  rep["termination"] = to_string(trace.termination);
  rep["iterations"] = trace.states.size();
  rep["beta"] = trace.beta;
  if (!trace.states.empty()) {
    rep["r_pri"] = trace.diag.back().r_pri;
    rep["r_dua"] = trace.diag.back().r_dua;
    if (reference) rep["s_final"] = trace.diag.back().s_k;
  }
  rep["init_dual_feasible"] = trace.init_dual_feasible;
  if (trace.init_ball_radius_sq) rep["init_ball_radius_sq"] = *trace.init_ball_radius_sq;
  if (trace.cycle) {
    rep["cycle_period"] = trace.cycle->period;
    json states = json::array();
    for (const auto& st : trace.cycle->states) {
      json s;
      s["x"] = std::vector<double>(st.x.data(), st.x.data() + st.x.size());
      s["y"] = std::vector<double>(st.y.data(), st.y.data() + st.y.size());
      s["lambda"] = std::vector<double>(st.lambda.data(), st.lambda.data() + st.lambda.size());
      states.push_back(s);
    }
    rep["cycle_states"] = states;
  }
  if (!trace.error_message.empty()) rep["error"] = trace.error_message;
  if (reference && trace.termination == Termination::kConverged && trace.states.size() >= 4) {
    try {
      const RateReport rr = rate_estimate(spec, trace, *reference, 0.5);
      if (!rr.below_floor) {
        rep["fitted_rho"] = rr.fitted_rho;
        rep["kappa_estimate"] = rr.kappa_estimate;
      } else {
        rep["rate"] = "below floor";
      }
    } catch (const Error&) {
      // rate fit is best-effort in the report
    }
  }
  return rep;
}

json svs_report_json(const SvsReport& rep) {
  json j;
  j["first_order"] = {{"ok", rep.first_order.ok},
                      {"residual_x", rep.first_order.residual_x},
                      {"residual_lambda", rep.first_order.residual_lambda}};
  j["subspaces"] = {{"dim_S", rep.S.dim()},
                    {"dim_S_A", rep.S_A.dim()},
                    {"dim_V_C", rep.V_C.dim()},
                    {"dim_intersection", rep.intersection.dim()}};
  j["assumption"] = {{"pass", rep.assumption_holds}, {"vacuous", rep.vacuous}};
  if (rep.sigma) j["assumption"]["sigma"] = *rep.sigma;
  if (rep.beta0) {
    j["beta0"] = {{"vacuous", rep.beta0->vacuous},
                  {"zero_sentinel", rep.beta0->zero_sentinel},
                  {"raw", rep.beta0->raw},
                  {"value", rep.beta0->value},
                  {"recommended_beta_above", rep.beta0->recommended_beta_above}};
  }
  std::vector<std::vector<double>> p(rep.projector_P.rows());
  for (int i = 0; i < rep.projector_P.rows(); ++i)
    for (int k = 0; k < rep.projector_P.cols(); ++k) p[i].push_back(rep.projector_P(i, k));
  j["projector_P"] = p;
  return j;
}

struct SingleRun {
  IterateTrace trace;
  std::uint64_t seed = 0;
  bool seeded = false;
};

SingleRun run_once(const RunConfig& rc, const std::optional<std::pair<Vec, Vec>>& init_override,
                   std::uint64_t seed, bool seeded) {
  SingleRun out;
  out.seed = seed;
  out.seeded = seeded;
  Vec y0, l0;
  if (init_override) {
    y0 = init_override->first;
    l0 = init_override->second;
  } else {
    const auto& e = std::get<InitExplicit>(rc.init);
    y0 = e.y0;
    l0 = e.lambda0;
  }
  out.trace = run(rc.problem, rc.admm, y0, l0, rc.reference);
  return out;
}

}  // namespace

int cmd_solve(const std::string& config_path, const ConfigOverrides& ov) {
  RunConfig rc = load_run_config(config_path, ov);

  if (const auto* ball = std::get_if<InitRandomBall>(&rc.init)) {
    // Seeded batch: one row per run, exit with the worst outcome.
    const Vec y_center = rc.reference ? Vec(rc.problem.A() * rc.reference->x_bar)
                                      : Vec::Zero(rc.problem.m());
    const Vec l_center = rc.reference ? rc.reference->lambda_bar : Vec::Zero(rc.problem.m());
    const double radius = std::sqrt(ball->radius_sq);

    std::vector<SingleRun> runs(ball->count);
    std::vector<std::pair<Vec, Vec>> inits(ball->count);
    for (int i = 0; i < ball->count; ++i) {
      Rng rng(ball->seed + static_cast<std::uint64_t>(i));
      inits[i] = rng.weighted_ball(y_center, l_center, rc.admm.beta, radius);
    }
    parallel_for(ball->count, [&](int i) {
      runs[i] = run_once(rc, inits[i], ball->seed + static_cast<std::uint64_t>(i), true);
    });

    if (rc.trace_path) {
      ensure_parent_dir(*rc.trace_path);
      std::ofstream os(*rc.trace_path);
      os << "seed,termination,iterations,final_s_k,final_r_pri\n";
      for (const auto& r : runs) {
        os << r.seed << ',' << to_string(r.trace.termination) << ',' << r.trace.states.size()
           << ',' << fmt17(r.trace.diag.empty() ? kInf : r.trace.diag.back().s_k) << ','
           << fmt17(r.trace.diag.empty() ? kInf : r.trace.diag.back().r_pri) << '\n';
      }
      os << "# runs=" << runs.size() << " base_seed=" << ball->seed
         << " generator=mt19937_64\n";
    }
    int worst = kExitConverged;
    json per_run = json::array();
    for (const auto& r : runs) {
      per_run.push_back(run_report(rc.problem, r.trace, rc.reference));
      const int code = exit_code_for(r.trace.termination);
      // severity: solver error > max_iter > cycle > converged
      auto rank = [](int c) { return c == 5 ? 3 : c == 3 ? 2 : c == 2 ? 1 : 0; };
      if (rank(code) > rank(worst)) worst = code;
    }
    if (rc.report_path) {
      ensure_parent_dir(*rc.report_path);
      json rep;
      rep["runs"] = per_run;
      rep["base_seed"] = ball->seed;
      rep["generator"] = "mt19937_64";
      std::ofstream os(*rc.report_path);
      os << rep.dump(2) << '\n';
    }
    std::cout << "batch of " << runs.size() << " runs: worst outcome exit " << worst << "\n";
    return worst;
  }

  SingleRun r = run_once(rc, std::nullopt, 0, false);
  if (rc.reference) {
    try {
      DiagnosticsConfig dcfg = DiagnosticsConfig::from_reference(rc.problem, *rc.reference);
      annotate_trace(r.trace, rc.problem, dcfg);
    } catch (const Error&) {
      // reference is not a certified stationary pair; raw diagnostics stand
    }
  }
  if (rc.trace_path) {
    ensure_parent_dir(*rc.trace_path);
    std::ofstream os(*rc.trace_path);
    write_trace_csv(os, r.trace);
  }
  if (rc.report_path) {
    ensure_parent_dir(*rc.report_path);
    std::ofstream os(*rc.report_path);
    os << run_report(rc.problem, r.trace, rc.reference).dump(2) << '\n';
  }
  std::cout << "termination: " << to_string(r.trace.termination) << " after "
            << r.trace.states.size() << " iterations";
  if (!r.trace.diag.empty()) std::cout << " (r_pri " << r.trace.diag.back().r_pri << ")";
  std::cout << "\n";
  if (!r.trace.init_dual_feasible)
    std::cout << "note: lambda0 is not a subgradient of g at y0; local theory preconditions "
                 "were not met at the start\n";
  return exit_code_for(r.trace.termination);
}

int cmd_check_svs(const std::string& config_path, const ConfigOverrides& ov) {
  const RunConfig rc = load_run_config(config_path, ov);
  if (!rc.reference)
    throw UsageError("check-svs: config must provide a reference pair (x, lambda)");
  const SvsReport rep =
      check_assumption(rc.problem, rc.reference->x_bar, rc.reference->lambda_bar);
  std::cout << rep.to_text();
  if (rc.report_path) {
    ensure_parent_dir(*rc.report_path);
    std::ofstream os(*rc.report_path);
    os << svs_report_json(rep).dump(2) << '\n';
  }
  return rep.assumption_holds ? kExitConverged : kExitFail;
}

int cmd_examples(const std::string& which, const std::string& out_dir) {
  if (which != "1" && which != "2" && which != "3" && which != "all")
    throw UsageError("examples: which must be 1, 2, 3 or all");
  std::filesystem::create_directories(out_dir);
  const auto path = [&](const std::string& name) {
    return (std::filesystem::path(out_dir) / name).string();
  };

  if (which == "1" || which == "all") {
    // 50 seeded runs per beta from the weighted ball of squared radius 1/2,
    // averaged distance-to-solution series.
    const std::vector<double> betas = {2.5, 4.0, 8.0};
    const std::vector<std::string> labels = {"2.5", "4", "8"};
    const int runs = 50;
    const int iters = 150;
    const std::uint64_t base_seed = 20260810;
    const ProblemSpec spec = gallery::example(1);
    const Reference ref = gallery::example_reference(1);

    std::vector<std::vector<double>> mean_sk(betas.size(), std::vector<double>(iters, 0.0));
    for (size_t bi = 0; bi < betas.size(); ++bi) {
      AdmmConfig cfg = gallery::example_config(1, betas[bi]);
      cfg.max_iter = iters;
      cfg.eps_pri = cfg.eps_dua = 1e-16;  // run the full horizon for aligned series
      std::vector<std::vector<double>> series(runs);
      parallel_for(runs, [&](int r) {
        Rng rng(base_seed + 1000 * bi + static_cast<std::uint64_t>(r));
        const auto [y0, l0] = rng.weighted_ball(Vec::Zero(1), Vec::Zero(1), betas[bi],
                                                std::sqrt(0.5));
        const IterateTrace tr = run(spec, cfg, y0, l0, ref);
        series[r].resize(iters, 0.0);
        for (int k = 0; k < iters; ++k) {
          const double s =
              k < static_cast<int>(tr.diag.size()) ? tr.diag[k].s_k : tr.diag.back().s_k;
          series[r][k] = s;
        }
      });
      for (int r = 0; r < runs; ++r)
        for (int k = 0; k < iters; ++k) mean_sk[bi][k] += series[r][k] / runs;

      std::ofstream os(path("example1_beta" + labels[bi] + "_mean_sk.csv"));
      os << "k,mean_s_k\n";
      for (int k = 0; k < iters; ++k) os << (k + 1) << ',' << fmt17(mean_sk[bi][k]) << '\n';
      os << "# beta=" << labels[bi] << " runs=" << runs << " radius_sq=0.5 base_seed="
         << base_seed + 1000 * bi << " generator=mt19937_64\n";
    }
    std::ofstream os(path("example1_mean_sk.csv"));
    os << "k";
    for (const auto& l : labels) os << ",beta_" << l;
    os << '\n';
    for (int k = 0; k < iters; ++k) {
      os << (k + 1);
      for (size_t bi = 0; bi < betas.size(); ++bi) os << ',' << fmt17(mean_sk[bi][k]);
      os << '\n';
    }
    os << "# runs=50 radius_sq=0.5 base_seed=" << base_seed << " generator=mt19937_64\n";
  }

  const auto emit_cycle = [&](int which_ex, double beta, const std::string& fname,
                              bool x1_only) {
    const ProblemSpec spec = gallery::example(which_ex);
    AdmmConfig cfg = gallery::example_config(which_ex, beta);
    cfg.max_iter = 200;
    cfg.cycle_tol = 1e-12;
    const IterateTrace tr = run(spec, cfg, Vec::Zero(1), Vec::Constant(1, -1.0),
                                gallery::example_reference(which_ex));
    std::ofstream os(path(fname));
    if (tr.termination != Termination::kCycleDetected || !tr.cycle) {
      os << "# no cycle detected (termination=" << to_string(tr.termination) << ")\n";
      return;
    }
    // Canonical rotation: start the period at the lexicographically smallest
    // state so the table does not depend on the detection iteration.
    const auto& st = tr.cycle->states;
    int start = 0;
    auto lex_less = [](const AdmmState& a, const AdmmState& b) {
      for (int i = 0; i < a.x.size(); ++i)
        if (a.x(i) != b.x(i)) return a.x(i) < b.x(i);
      for (int i = 0; i < a.y.size(); ++i)
        if (a.y(i) != b.y(i)) return a.y(i) < b.y(i);
      for (int i = 0; i < a.lambda.size(); ++i)
        if (a.lambda(i) != b.lambda(i)) return a.lambda(i) < b.lambda(i);
      return false;
    };
    for (int i = 1; i < static_cast<int>(st.size()); ++i)
      if (lex_less(st[i], st[start])) start = i;
    os << (x1_only ? "slot,x1,y,lambda\n" : "slot,x,y,lambda\n");
    for (int i = 0; i < static_cast<int>(st.size()); ++i) {
      const AdmmState& s = st[(start + i) % st.size()];
      os << i << ',' << fmt17(s.x(0)) << ',' << fmt17(s.y(0)) << ',' << fmt17(s.lambda(0))
         << '\n';
    }
    os << "# period=" << tr.cycle->period << " beta=" << fmt17(beta) << " init_y0=0 "
       << "init_lambda0=-1\n";
  };

  if (which == "2" || which == "all") emit_cycle(2, 2.0, "example2_cycle.csv", true);
  if (which == "3" || which == "all") emit_cycle(3, 2.0, "example3_cycle.csv", false);

  std::cout << "example artifacts written to " << out_dir << "\n";
  return kExitConverged;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& betas,
              const ConfigOverrides& ov) {
  if (betas.empty()) throw UsageError("sweep: beta list must not be empty");
  const RunConfig rc = load_run_config(config_path, ov);
  if (!rc.reference) throw UsageError("sweep: config must provide a reference pair");

  struct Row {
    double beta;
    Termination term;
    int iters_to_target;
    double fitted_rho;
  };
  std::vector<Row> rows(betas.size());
  parallel_for(static_cast<int>(betas.size()), [&](int i) {
    RunConfig local = rc;
    local.admm.beta = betas[i];
    local.admm.validate();
    const SingleRun r = run_once(local, std::nullopt, 0, false);
    Row row{betas[i], r.trace.termination, first_k_below(r.trace, 1e-8),
            std::numeric_limits<double>::quiet_NaN()};
    if (r.trace.termination == Termination::kConverged && r.trace.states.size() >= 4) {
      try {
        const RateReport rr = rate_estimate(local.problem, r.trace, *local.reference, 0.5);
        if (!rr.below_floor) row.fitted_rho = rr.fitted_rho;
      } catch (const Error&) {
      }
    }
    rows[i] = row;
  });

  std::ostringstream os;
  os << "beta,termination,iters_to_sk_1e-8,fitted_rho\n";
  for (const auto& r : rows)
    os << fmt17(r.beta) << ',' << to_string(r.term) << ',' << r.iters_to_target << ','
       << fmt17(r.fitted_rho) << '\n';
  if (rc.trace_path) {
    ensure_parent_dir(*rc.trace_path);
    std::ofstream f(*rc.trace_path);
    f << os.str();
  }
  std::cout << os.str();
  return kExitConverged;
}

}  // namespace polyadmm::cli
