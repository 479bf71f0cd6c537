#include <doctest.h>

#include <cmath>

#include "pmlp/central_path.hpp"
#include "pmlp/instance_io.hpp"

using namespace pmlp;

namespace {

struct StepRig {
  ModifiedLp lp;
  PathParams params;
  CentralPathState state;
  ProjectionMaintainer mp_sqrt;
  ProjectionMaintainer mp_grad;

  static StepRig make(const LpInstance& inst, double delta = 0.5) {
    const std::size_t n_bar = inst.n() + 2;
    PathParams params = PathParams::paper(n_bar, delta);
    ModifiedLp lp = homogenize(inst, params.gamma());
    CentralPathState state{lp.x0, lp.s0, params.t_init};
    ProjectionMaintainer::Options opt;
    opt.eps_mp = params.eps_mp;
    opt.a = params.a;
    opt.strategy = params.strategy;
    const Vector u0 = div(state.x, state.s);
    const Vector mu0 = state.mu();
    ProjectionMaintainer mp_sqrt(lp.a, u0, sqrt_map(), mu0, opt);
    ProjectionMaintainer mp_grad(lp.a, u0, sinh_gradient_map(params.lambda),
                                 scale(1.0 / state.t, mu0), opt);
    return StepRig{std::move(lp), params, std::move(state),
                   std::move(mp_sqrt), std::move(mp_grad)};
  }
};

}  // namespace

TEST_CASE("paper preset constants") {
  const PathParams p = PathParams::paper(16);
  CHECK(p.eps == doctest::Approx(1.0 / (1500.0 * std::log(16.0))));
  CHECK(p.eps_mp == p.eps);
  CHECK(p.lambda == doctest::Approx(40.0 * std::log(16.0)));
  CHECK(p.gamma() == doctest::Approx(1.0 / p.lambda));  // 1/lambda < 0.5
  p.validate();
  CHECK_THROWS_AS(
      [] {
        PathParams bad = PathParams::paper(16);
        bad.eps_mp = 2.0 * bad.eps;  // violates eps_mp <= eps
        bad.validate();
      }(),
      DomainError);
}

TEST_CASE("approximate_step: zero objective keeps the gradient floored") {
  LpInstance inst = generate_instance(4, 2, 3);
  inst.c = Vector(4, 0.0);
  inst.lipschitz = 1.0;
  StepRig rig = StepRig::make(inst);

  StepTrace trace;
  const CentralPathState next = approximate_step(
      rig.state, rig.mp_sqrt, rig.mp_grad, rig.params, trace);
  CHECK(trace.grad_floored);
  CHECK(norm_inf(trace.delta_phi) == 0.0);
  // with delta_phi = 0 the move is the pure t-decrement
  CHECK(norm_inf(sub(trace.delta_mu, trace.delta_t)) == 0.0);
  CHECK(next.t == doctest::Approx(trace.t_new));
  // mu tracks t: mu/t stays at 1 up to the second-order step error
  const Vector ratio = scale(1.0 / next.t, next.mu());
  CHECK(norm_inf(shift(ratio, -1.0)) <= 1e-8);
}

TEST_CASE("approximate_step: square invertible A forces delta_x = 0") {
  // n = d: the projection is the identity, so the whole move lands on s
  const Matrix a = Matrix::identity(3);
  const Vector x{1.05, 0.97, 1.02};
  const Vector s = Vector::ones(3);
  PathParams params = PathParams::paper(3);
  CentralPathState state{x, s, 1.0};
  ProjectionMaintainer::Options opt;
  opt.eps_mp = params.eps_mp;
  opt.a = params.a;
  const Vector u0 = div(x, s);
  const Vector mu0 = mul(x, s);
  ProjectionMaintainer mp_sqrt(a, u0, sqrt_map(), mu0, opt);
  ProjectionMaintainer mp_grad(a, u0, sinh_gradient_map(params.lambda), mu0,
                               opt);
  StepTrace trace;
  approximate_step(state, mp_sqrt, mp_grad, params, trace);
  CHECK(norm_inf(trace.delta_x) <= 1e-12);
  const Vector expected_ds = div(trace.delta_mu, trace.x_tilde);
  CHECK(norm_inf(sub(trace.delta_s, expected_ds)) <= 1e-12);
}

TEST_CASE("approximate_step: linear-system residuals at n=8, d=4") {
  const LpInstance inst = generate_instance(6, 3, 11);  // homogenizes to 8x4
  StepRig rig = StepRig::make(inst);
  REQUIRE(rig.lp.n() == 8);
  REQUIRE(rig.lp.d() == 4);

  StepTrace trace;
  CentralPathState state = rig.state;
  for (int step = 0; step < 50; ++step) {
    const CentralPathState next =
        approximate_step(state, rig.mp_sqrt, rig.mp_grad, rig.params, trace);
    // X~ ds + S~ dx = d_mu
    double res = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
      res = std::max(res, std::fabs(trace.x_tilde[i] * trace.delta_s[i] +
                                    trace.s_tilde[i] * trace.delta_x[i] -
                                    trace.delta_mu[i]));
    }
    CHECK(res <= 1e-7);
    // A dx = 0
    CHECK(norm_inf(mat_vec(rig.lp.a, trace.delta_x)) <=
          1e-7 * max_abs(rig.lp.a) * std::max(1.0, norm_inf(state.x)));
    // band relations of the tilde pair
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(std::fabs(trace.x_tilde[i] * trace.s_tilde[i] -
                      trace.mu_tilde[i]) <= 1e-10 * trace.mu_tilde[i]);
    }
    state = next;
  }
}

TEST_CASE("solver: already-terminal input performs zero iterations") {
  const LpInstance inst = generate_instance(4, 2, 5);
  PathParams params = PathParams::paper(6);
  params.t_init = 1e-9;  // below gamma^2/(2n)
  const ModifiedLp lp = homogenize(inst, params.gamma());
  CHECK(params.t_init <= params.stop_threshold(lp.n()));
  SolveOutcome out = solve(lp, params);
  CHECK(out.metrics.iterations == 0);
  CHECK(out.x_bar == lp.x0);
}

TEST_CASE("solver: iteration cap raises a truncation error with state") {
  const LpInstance inst = generate_instance(4, 2, 5);
  PathParams params = PathParams::paper(6);
  params.max_iterations = 7;
  const ModifiedLp lp = homogenize(inst, params.gamma());
  try {
    solve(lp, params);
    FAIL("expected IterationLimitError");
  } catch (const IterationLimitError& e) {
    CHECK(e.partial().metrics.iterations == 7);
    CHECK(e.partial().t_final < 1.0);
    CHECK(e.partial().x_bar.size() == 6);
  }
}

TEST_CASE("solver: full run keeps the potential and centrality invariants") {
  const LpInstance inst = generate_instance(4, 2, 1);
  const std::size_t n_bar = 6;
  PathParams params = PathParams::paper(n_bar, 0.5);
  const ModifiedLp lp = homogenize(inst, params.gamma());
  SolveOutcome out = solve(lp, params);
  CHECK(out.metrics.phi_violations == 0);
  CHECK(out.metrics.inf_violations == 0);
  CHECK(out.metrics.max_phi <= 2.0 * double(n_bar));
  CHECK(out.metrics.max_inf_norm <= 0.1);
  CHECK(out.t_final <= params.stop_threshold(n_bar));
  // iteration count matches the closed-form shrink count
  CHECK(out.metrics.iterations ==
        CentralPathSolver::predicted_iterations(
            params.t_init, params.stop_threshold(n_bar), params.eps, n_bar));
  // measured drift stays within the analyzed budgets
  CHECK(out.metrics.max_drift_u <= 3.0 * params.eps + 1e-6);
  CHECK(out.metrics.max_drift_mu <= 2.5 * params.eps + 1e-6);
  CHECK(out.metrics.max_drift_mu_over_t <= 3.0 * params.eps + 1e-6);
}

TEST_CASE("solver: verified prefix has zero bound violations") {
  const LpInstance inst = generate_instance(6, 3, 9);
  PathParams params = PathParams::paper(8, 0.5);
  params.max_iterations = 1500;
  const ModifiedLp lp = homogenize(inst, params.gamma());
  SolveOptions opt;
  opt.verify = true;
  try {
    solve(lp, params, opt);
    FAIL("expected IterationLimitError");
  } catch (const IterationLimitError& e) {
    CHECK(e.partial().metrics.verified);
    CHECK(e.partial().metrics.bounds.total() == 0);
  }
}

TEST_CASE("solver: trace bookkeeping matches the iteration count") {
  const LpInstance inst = generate_instance(4, 2, 2);
  PathParams params = PathParams::paper(6);
  params.max_iterations = 400;
  const ModifiedLp lp = homogenize(inst, params.gamma());
  SolveOptions opt;
  opt.record_trace = true;
  try {
    solve(lp, params, opt);
    FAIL("expected IterationLimitError");
  } catch (const IterationLimitError& e) {
    CHECK(e.partial().metrics.trace.size() == 400);
  }
}
