#include "pmlp/solve_driver.hpp"

#include <chrono>
#include <cmath>

#include <nlohmann/json.hpp>

#include "pmlp/oracle.hpp"

namespace pmlp {

namespace {

using nlohmann::json;

const char* preset_name(Preset p) {
  return p == Preset::kPaper ? "paper" : "relaxed";
}

const char* strategy_name(ResetStrategy s) {
  return s == ResetStrategy::kGrowLoop ? "grow" : "pow2";
}

json counters_to_json(const MaintainerCounters& c) {
  json j;
  j["updates"] = c.updates;
  j["rebuilds"] = c.rebuilds;
  j["v_resets"] = c.v_resets;
  j["sparse_updates"] = c.sparse_updates;
  j["fallbacks"] = c.fallbacks;
  json hist = json::array();
  for (const auto& [k, count] : c.rank_histogram) {
    hist.push_back(json::array({k, count}));
  }
  j["rank_histogram"] = std::move(hist);
  return j;
}

MaintainerCounters counters_from_json(const json& j) {
  MaintainerCounters c;
  c.updates = j.at("updates").get<std::uint64_t>();
  c.rebuilds = j.at("rebuilds").get<std::uint64_t>();
  c.v_resets = j.at("v_resets").get<std::uint64_t>();
  c.sparse_updates = j.at("sparse_updates").get<std::uint64_t>();
  c.fallbacks = j.at("fallbacks").get<std::uint64_t>();
  for (const auto& pair : j.at("rank_histogram")) {
    c.rank_histogram[pair.at(0).get<std::size_t>()] =
        pair.at(1).get<std::uint64_t>();
  }
  return c;
}

json bounds_to_json(const BoundViolationCounts& l) {
  json j;
  j["delta_length"] = l.delta_length;
  j["step_ratio"] = l.step_ratio;
  j["drift"] = l.drift;
  j["quadratic_error"] = l.quadratic_error;
  j["gradient_direction"] = l.gradient_direction;
  j["potential_decrease"] = l.potential_decrease;
  j["approximation_band"] = l.approximation_band;
  j["linear_system"] = l.linear_system;
  return j;
}

BoundViolationCounts bounds_from_json(const json& j) {
  BoundViolationCounts l;
  l.delta_length = j.at("delta_length").get<std::uint64_t>();
  l.step_ratio = j.at("step_ratio").get<std::uint64_t>();
  l.drift = j.at("drift").get<std::uint64_t>();
  l.quadratic_error = j.at("quadratic_error").get<std::uint64_t>();
  l.gradient_direction = j.at("gradient_direction").get<std::uint64_t>();
  l.potential_decrease = j.at("potential_decrease").get<std::uint64_t>();
  l.approximation_band = j.at("approximation_band").get<std::uint64_t>();
  l.linear_system = j.at("linear_system").get<std::uint64_t>();
  return l;
}

}  // namespace

SolveReport run_solve(const LpInstance& inst, const SolveFlags& flags) {
  const auto start = std::chrono::steady_clock::now();
  inst.validate();

  const std::size_t n_bar = inst.n() + 2;
  PathParams params = flags.preset == Preset::kPaper
                          ? PathParams::paper(n_bar, flags.delta)
                          : PathParams::relaxed(n_bar, flags.delta);
  params.a = flags.a;
  params.strategy = flags.strategy;
  params.max_iterations = flags.max_iters;
  params.validate();

  const double gamma = params.gamma();
  const ModifiedLp modified = homogenize(inst, gamma);

  SolveOptions opt;
  opt.verify = flags.verify;
  opt.record_trace = flags.trace;
  SolveOutcome outcome = solve(modified, params, opt);

  const Recovered rec = recover(outcome.x_bar, inst, gamma);

  SolveReport report;
  report.x_hat = rec.x_hat;
  report.objective = dot(inst.c, rec.x_hat);
  report.feasibility_l1 = norm1(sub(mat_vec(inst.a, rec.x_hat), inst.b));
  report.iterations = outcome.metrics.iterations;
  report.gamma = gamma;
  report.eps = params.eps;
  report.eps_mp = params.eps_mp;
  report.lambda = params.lambda;
  report.a = params.a;
  report.delta = params.delta;
  report.preset = preset_name(flags.preset);
  report.strategy = strategy_name(flags.strategy);
  report.predicted_iterations = CentralPathSolver::predicted_iterations(
      params.t_init, params.stop_threshold(n_bar), params.eps, n_bar);
  report.objective_gap_bound = rec.objective_gap_bound;
  report.feasibility_bound = rec.feasibility_bound;
  report.metrics = std::move(outcome.metrics);

  if (flags.verify) {
    if (report.metrics.verified && report.metrics.bounds.total() > 0) {
      throw VerificationError("run_solve: " +
                              std::to_string(report.metrics.bounds.total()) +
                              " per-iteration bound violations");
    }
    if (report.metrics.phi_violations > 0 ||
        report.metrics.inf_violations > 0) {
      throw VerificationError("run_solve: potential/centrality invariant "
                              "violated during the run");
    }
    if (inst.n() <= 24) {
      const BruteForceResult ground = brute_force_lp(inst);
      if (ground.status == LpStatus::kOptimal) {
        if (report.objective >
            ground.value + report.objective_gap_bound + 1e-6) {
          throw VerificationError(
              "run_solve: objective " + std::to_string(report.objective) +
              " exceeds brute-force optimum " + std::to_string(ground.value) +
              " + gap bound " + std::to_string(report.objective_gap_bound));
        }
      }
      if (report.feasibility_l1 > report.feasibility_bound + 1e-6) {
        throw VerificationError("run_solve: feasibility residual " +
                                std::to_string(report.feasibility_l1) +
                                " exceeds the recovery bound " +
                                std::to_string(report.feasibility_bound));
      }
    }
  }

  const auto end = std::chrono::steady_clock::now();
  report.wall_time_ms =
      flags.suppress_timing
          ? 0.0
          : std::chrono::duration<double, std::milli>(end - start).count();
  return report;
}

json report_to_json(const SolveReport& r) {
  json doc;
  doc["x_hat"] = r.x_hat.raw();
  doc["objective"] = r.objective;
  doc["feasibility_l1"] = r.feasibility_l1;
  doc["iterations"] = r.iterations;
  doc["wall_time_ms"] = r.wall_time_ms;

  json stats;
  stats["gamma"] = r.gamma;
  stats["eps"] = r.eps;
  stats["eps_mp"] = r.eps_mp;
  stats["lambda"] = r.lambda;
  stats["a"] = r.a;
  stats["delta"] = r.delta;
  stats["preset"] = r.preset;
  stats["strategy"] = r.strategy;
  stats["predicted_iterations"] = r.predicted_iterations;
  stats["objective_gap_bound"] = r.objective_gap_bound;
  stats["feasibility_bound"] = r.feasibility_bound;
  stats["final_t"] = r.metrics.final_t;
  stats["max_phi"] = r.metrics.max_phi;
  stats["max_inf_norm"] = r.metrics.max_inf_norm;
  stats["phi_violations"] = r.metrics.phi_violations;
  stats["inf_violations"] = r.metrics.inf_violations;
  stats["max_drift_u"] = r.metrics.max_drift_u;
  stats["max_drift_mu"] = r.metrics.max_drift_mu;
  stats["max_drift_mu_over_t"] = r.metrics.max_drift_mu_over_t;
  stats["verified"] = r.metrics.verified;
  stats["bound_violations"] = bounds_to_json(r.metrics.bounds);
  stats["mp_sqrt"] = counters_to_json(r.metrics.mp_sqrt);
  stats["mp_grad"] = counters_to_json(r.metrics.mp_grad);
  doc["stats"] = std::move(stats);

  if (!r.metrics.trace.empty()) {
    json trace = json::array();
    for (const IterationRecord& rec : r.metrics.trace) {
      trace.push_back(json::array({rec.phi, rec.inf_norm, rec.t}));
    }
    doc["trace"] = std::move(trace);
  }
  return doc;
}

SolveReport report_from_json(const json& doc) {
  SolveReport r;
  r.x_hat = Vector(doc.at("x_hat").get<std::vector<double>>());
  r.objective = doc.at("objective").get<double>();
  r.feasibility_l1 = doc.at("feasibility_l1").get<double>();
  r.iterations = doc.at("iterations").get<std::uint64_t>();
  r.wall_time_ms = doc.at("wall_time_ms").get<double>();

  const json& stats = doc.at("stats");
  r.gamma = stats.at("gamma").get<double>();
  r.eps = stats.at("eps").get<double>();
  r.eps_mp = stats.at("eps_mp").get<double>();
  r.lambda = stats.at("lambda").get<double>();
  r.a = stats.at("a").get<double>();
  r.delta = stats.at("delta").get<double>();
  r.preset = stats.at("preset").get<std::string>();
  r.strategy = stats.at("strategy").get<std::string>();
  r.predicted_iterations =
      stats.at("predicted_iterations").get<std::uint64_t>();
  r.objective_gap_bound = stats.at("objective_gap_bound").get<double>();
  r.feasibility_bound = stats.at("feasibility_bound").get<double>();
  r.metrics.final_t = stats.at("final_t").get<double>();
  r.metrics.max_phi = stats.at("max_phi").get<double>();
  r.metrics.max_inf_norm = stats.at("max_inf_norm").get<double>();
  r.metrics.phi_violations = stats.at("phi_violations").get<std::uint64_t>();
  r.metrics.inf_violations = stats.at("inf_violations").get<std::uint64_t>();
  r.metrics.max_drift_u = stats.at("max_drift_u").get<double>();
  r.metrics.max_drift_mu = stats.at("max_drift_mu").get<double>();
  r.metrics.max_drift_mu_over_t =
      stats.at("max_drift_mu_over_t").get<double>();
  r.metrics.verified = stats.at("verified").get<bool>();
  r.metrics.bounds = bounds_from_json(stats.at("bound_violations"));
  r.metrics.mp_sqrt = counters_from_json(stats.at("mp_sqrt"));
  r.metrics.mp_grad = counters_from_json(stats.at("mp_grad"));
  r.metrics.iterations = r.iterations;

  if (doc.contains("trace")) {
    for (const auto& rec : doc.at("trace")) {
      r.metrics.trace.push_back({rec.at(0).get<double>(),
                                 rec.at(1).get<double>(),
                                 rec.at(2).get<double>()});
    }
  }
  return r;
}

std::string report_to_text(const SolveReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

}  // namespace pmlp
