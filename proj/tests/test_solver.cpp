#include <doctest.h>

#include <nlohmann/json.hpp>

#include "pmlp/instance_io.hpp"
#include "pmlp/oracle.hpp"
#include "pmlp/solve_driver.hpp"

using namespace pmlp;

TEST_CASE("run_solve: guarantees hold against the brute-force optimum") {
  const LpInstance inst = generate_instance(4, 2, 1);
  SolveFlags flags;
  flags.delta = 0.5;
  flags.suppress_timing = true;
  const SolveReport report = run_solve(inst, flags);

  const BruteForceResult ground = brute_force_lp(inst);
  REQUIRE(ground.status == LpStatus::kOptimal);
  CHECK(report.objective <= ground.value + report.objective_gap_bound + 1e-6);
  CHECK(report.feasibility_l1 <= report.feasibility_bound + 1e-6);
  for (std::size_t i = 0; i < report.x_hat.size(); ++i) {
    CHECK(report.x_hat[i] >= 0.0);
  }
  CHECK(report.iterations == report.predicted_iterations);
  CHECK(report.gamma == doctest::Approx(std::min(0.5, 1.0 / report.lambda)));
}

TEST_CASE("run_solve: zero objective accepts any feasible point") {
  LpInstance inst = generate_instance(4, 2, 7);
  inst.c = Vector(4, 0.0);
  inst.lipschitz = 1.0;
  SolveFlags flags;
  flags.suppress_timing = true;
  const SolveReport report = run_solve(inst, flags);
  CHECK(report.objective == 0.0);
  CHECK(report.feasibility_l1 <= report.feasibility_bound + 1e-6);
}

TEST_CASE("run_solve: trace length equals the iteration count") {
  const LpInstance inst = generate_instance(4, 2, 3);
  SolveFlags flags;
  flags.trace = true;
  flags.suppress_timing = true;
  const SolveReport report = run_solve(inst, flags);
  CHECK(report.metrics.trace.size() == report.iterations);
}

TEST_CASE("run_solve: repeated runs serialize byte-identically") {
  const LpInstance inst = generate_instance(4, 2, 11);
  SolveFlags flags;
  flags.suppress_timing = true;
  const SolveReport one = run_solve(inst, flags);
  const SolveReport two = run_solve(inst, flags);
  CHECK(report_to_text(one) == report_to_text(two));
  CHECK(one == two);
}

TEST_CASE("report round-trips through its schema losslessly") {
  const LpInstance inst = generate_instance(4, 2, 13);
  SolveFlags flags;
  flags.trace = true;
  flags.suppress_timing = true;
  const SolveReport report = run_solve(inst, flags);
  const SolveReport back =
      report_from_json(nlohmann::json::parse(report_to_text(report)));
  CHECK(back == report);
  CHECK(report_to_text(back) == report_to_text(report));
}

TEST_CASE("run_solve: verify mode passes on a healthy instance") {
  const LpInstance inst = generate_instance(4, 2, 17);
  SolveFlags flags;
  flags.verify = true;
  flags.suppress_timing = true;
  const SolveReport report = run_solve(inst, flags);  // throws on violation
  CHECK(report.metrics.verified);
  CHECK(report.metrics.bounds.total() == 0);
}

TEST_CASE("run_solve: power-of-two reset strategy end to end") {
  const LpInstance inst = generate_instance(4, 2, 19);
  SolveFlags flags;
  flags.strategy = ResetStrategy::kPowerOfTwo;
  flags.suppress_timing = true;
  const SolveReport report = run_solve(inst, flags);
  const BruteForceResult ground = brute_force_lp(inst);
  REQUIRE(ground.status == LpStatus::kOptimal);
  CHECK(report.objective <= ground.value + report.objective_gap_bound + 1e-6);
  CHECK(report.feasibility_l1 <= report.feasibility_bound + 1e-6);
  CHECK(report.metrics.phi_violations == 0);
  // every rebuild batch size is a power of two (or all of n)
  for (const auto& [k, count] : report.metrics.mp_sqrt.rank_histogram) {
    CHECK(((k & (k - 1)) == 0 || k == inst.n() + 2));
  }
}

TEST_CASE("run_solve: relaxed preset stays centered at demo accuracy") {
  const LpInstance inst = generate_instance(4, 2, 23);
  SolveFlags flags;
  flags.preset = Preset::kRelaxed;
  flags.suppress_timing = true;
  const SolveReport report = run_solve(inst, flags);
  CHECK(report.metrics.inf_violations == 0);
  CHECK(report.feasibility_l1 <= report.feasibility_bound + 1e-6);
  CHECK(report.iterations == report.predicted_iterations);
  CHECK_FALSE(report.metrics.verified);  // bound asserts are paper-only
}

TEST_CASE("run_solve: square instance with n = d") {
  const LpInstance inst = generate_instance(3, 3, 29);
  SolveFlags flags;
  flags.suppress_timing = true;
  const SolveReport report = run_solve(inst, flags);
  const BruteForceResult ground = brute_force_lp(inst);
  REQUIRE(ground.status == LpStatus::kOptimal);
  CHECK(report.objective <= ground.value + report.objective_gap_bound + 1e-6);
  CHECK(report.feasibility_l1 <= report.feasibility_bound + 1e-6);
}
