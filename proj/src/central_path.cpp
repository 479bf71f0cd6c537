#include "pmlp/central_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace pmlp {

namespace {
double ln_floor1(std::size_t n) {
  return std::max(std::log(static_cast<double>(n)), 1.0);
}
}  // namespace

PathParams PathParams::paper(std::size_t n, double delta) {
  PathParams p;
  const double ln = ln_floor1(n);
  p.eps = 1.0 / (1500.0 * ln);
  p.eps_mp = p.eps;
  p.lambda = 40.0 * ln;
  p.delta = delta;
  p.paper_constants = true;
  return p;
}

PathParams PathParams::relaxed(std::size_t n, double delta) {
  PathParams p;
  p.eps = 0.01;
  p.eps_mp = 0.01;
  p.lambda = 10.0 * ln_floor1(n);
  p.delta = delta;
  p.paper_constants = false;
  return p;
}

double PathParams::gamma() const { return std::min(delta, 1.0 / lambda); }

double PathParams::stop_threshold(std::size_t n) const {
  const double g = gamma();
  return g * g / (2.0 * static_cast<double>(n));
}

void PathParams::validate() const {
  if (!(eps_mp > 0.0 && eps_mp <= eps)) {
    throw DomainError("PathParams: need 0 < eps_mp <= eps");
  }
  if (!(eps_mp < 0.25)) {
    throw DomainError("PathParams: eps_mp must stay below 1/4");
  }
  if (!(lambda > 0.0)) throw DomainError("PathParams: lambda must be positive");
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw DomainError("PathParams: delta must lie in (0, 1]");
  }
  if (!(t_init > 0.0)) throw DomainError("PathParams: t_init must be positive");
  if (!(a > 0.0 && a <= 1.0)) {
    throw DomainError("PathParams: batch exponent a must lie in (0, 1]");
  }
  if (!(grad_floor >= 0.0)) {
    throw DomainError("PathParams: grad_floor must be nonnegative");
  }
}

CentralPathState approximate_step(const CentralPathState& state,
                                  ProjectionMaintainer& mp_sqrt,
                                  ProjectionMaintainer& mp_grad,
                                  const PathParams& params, StepTrace& trace) {
  const std::size_t n = state.x.size();
  const double t = state.t;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double t_new = (1.0 - params.eps / (3.0 * sqrt_n)) * t;

  trace.t = t;
  trace.t_new = t_new;
  trace.mu = state.mu();
  trace.u = div(state.x, state.s);

  UpdateResult res_v = mp_sqrt.update(trace.u, trace.mu);
  UpdateResult res_w = mp_grad.update(trace.u, scale(1.0 / t, trace.mu));
  if (!(res_v.u_tilde == res_w.u_tilde)) {
    throw Error("approximate_step: the two maintainers disagree on u~");
  }

  trace.u_tilde = std::move(res_w.u_tilde);
  trace.m = std::move(res_w.v_tilde);
  trace.v = std::move(res_v.f_v_tilde);
  trace.w = std::move(res_w.f_v_tilde);
  trace.p_v = std::move(res_v.r);
  trace.p_w = std::move(res_w.r);

  trace.mu_tilde = scale(t, trace.m);
  const Vector ratio = div(trace.mu_tilde, trace.mu);
  const Vector ratio_u = div(trace.u_tilde, trace.u);
  trace.x_tilde = mul(state.x, sqrt(mul(ratio, ratio_u)));
  trace.s_tilde = mul(state.s, sqrt(div(ratio, ratio_u)));

  const Vector mu_over_t = scale(1.0 / t, trace.mu_tilde);
  trace.gradient = potential_gradient(shift(mu_over_t, -1.0), params.lambda);
  trace.grad_norm = norm2(trace.gradient);
  trace.grad_floored = trace.grad_norm < params.grad_floor;

  const Vector sqrt_mu_tilde = sqrt(trace.mu_tilde);
  const double coef_t = t_new / t - 1.0;
  trace.delta_t = scale(coef_t, mul(trace.v, sqrt_mu_tilde));
  if (trace.grad_floored) {
    trace.delta_phi = Vector(n, 0.0);
    trace.p = scale(coef_t, trace.p_v);
  } else {
    const double coef_phi = -0.5 * params.eps * t_new / trace.grad_norm;
    trace.delta_phi = scale(coef_phi, mul(sqrt(mu_over_t), trace.w));
    trace.p = add(scale(coef_t, trace.p_v),
                  scale(coef_phi / std::sqrt(t), trace.p_w));
  }
  trace.delta_mu = add(trace.delta_t, trace.delta_phi);
  trace.delta_s = mul(div(trace.s_tilde, sqrt_mu_tilde), trace.p);
  trace.delta_x = sub(div(trace.delta_mu, trace.s_tilde),
                      mul(div(trace.x_tilde, sqrt_mu_tilde), trace.p));

  CentralPathState next;
  next.x = add(state.x, trace.delta_x);
  next.s = add(state.s, trace.delta_s);
  next.t = t_new;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(next.x[i] > 0.0) || !(next.s[i] > 0.0)) {
      throw StepFailureError(
          "approximate_step: entry " + std::to_string(i) +
          " of x or s became nonpositive; check the parameter preset");
    }
  }
  return next;
}

CentralPathSolver::CentralPathSolver(Matrix a, Vector x0, Vector s0,
                                     PathParams params)
    : a_(std::move(a)), params_(params) {
  params_.validate();
  if (x0.size() != a_.cols() || s0.size() != a_.cols()) {
    throw ShapeError("CentralPathSolver: x0 and s0 must have length n");
  }
  state_.x = std::move(x0);
  state_.s = std::move(s0);
  state_.t = params_.t_init;
  threshold_ = params_.stop_threshold(a_.cols());
}

std::uint64_t CentralPathSolver::predicted_iterations(double t_init,
                                                      double threshold,
                                                      double eps,
                                                      std::size_t n) {
  if (t_init <= threshold) return 0;
  const double shrink = -std::log1p(-eps / (3.0 * std::sqrt(double(n))));
  return static_cast<std::uint64_t>(
      std::ceil(std::log(t_init / threshold) / shrink));
}

IterationRecord CentralPathSolver::record(RunMetrics& metrics,
                                          const CentralPathState& state,
                                          bool to_trace) const {
  const std::size_t n = state.x.size();
  const Vector dev = shift(scale(1.0 / state.t, state.mu()), -1.0);
  const double inf = norm_inf(dev);
  double phi = std::numeric_limits<double>::infinity();
  if (params_.lambda * inf <= 700.0) phi = potential(dev, params_.lambda);
  metrics.max_phi = std::max(metrics.max_phi, phi);
  metrics.max_inf_norm = std::max(metrics.max_inf_norm, inf);
  if (!(phi <= 2.0 * static_cast<double>(n))) ++metrics.phi_violations;
  if (!(inf <= 0.1)) ++metrics.inf_violations;
  IterationRecord rec{phi, inf, state.t};
  if (to_trace) metrics.trace.push_back(rec);
  return rec;
}

void CentralPathSolver::verify_step(const CentralPathState& before,
                                    const CentralPathState& after,
                                    const StepTrace& trace, double phi_before,
                                    double phi_after,
                                    BoundViolationCounts& out) const {
  const std::size_t n = before.x.size();
  const double eps = params_.eps;
  const double t = trace.t;
  const double band = params_.eps_mp + 1e-12;

  // approximation sandwiches between exact and tilde quantities
  bool band_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    band_ok &= (1.0 - band) * trace.x_tilde[i] <= before.x[i] &&
               before.x[i] <= (1.0 + band) * trace.x_tilde[i];
    band_ok &= (1.0 - 2.0 * band) * trace.s_tilde[i] <= before.s[i] &&
               before.s[i] <= (1.0 + 2.0 * band) * trace.s_tilde[i];
    band_ok &= (1.0 - band) * trace.mu_tilde[i] <= trace.mu[i] &&
               trace.mu[i] <= (1.0 + band) * trace.mu_tilde[i];
    // exact identities of the tilde pair, up to rounding
    const double prod = trace.x_tilde[i] * trace.s_tilde[i];
    band_ok &= std::fabs(prod - trace.mu_tilde[i]) <=
               1e-10 * std::fabs(trace.mu_tilde[i]);
    const double ratio = trace.x_tilde[i] / trace.s_tilde[i];
    band_ok &=
        std::fabs(ratio - trace.u_tilde[i]) <= 1e-10 * trace.u_tilde[i];
  }
  if (!band_ok) ++out.approximation_band;

  // linear system of the step
  double system_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    system_res = std::max(
        system_res,
        std::fabs(trace.x_tilde[i] * trace.delta_s[i] +
                  trace.s_tilde[i] * trace.delta_x[i] - trace.delta_mu[i]));
  }
  const Vector a_dx = mat_vec(a_, trace.delta_x);
  const double a_res_cap =
      kInvariantTol * max_abs(a_) * std::max(norm_inf(before.x), 1.0);
  if (system_res > kInvariantTol * (1.0 + norm_inf(trace.delta_mu)) ||
      norm_inf(a_dx) > a_res_cap) {
    ++out.linear_system;
  }

  // direction lengths
  if (norm2(trace.delta_t) > 1.2 * (eps / 3.0) * t + kBoundTol ||
      norm2(trace.delta_phi) > 0.5 * eps * t + kBoundTol ||
      norm2(trace.delta_mu) > eps * t + kBoundTol) {
    ++out.delta_length;
  }

  // relative step sizes
  if (norm2(div(trace.delta_s, before.s)) > 1.2 * eps + kBoundTol ||
      norm2(div(trace.delta_x, before.x)) > 1.2 * eps + kBoundTol ||
      norm2(div(trace.delta_s, trace.s_tilde)) > 1.2 * eps + kBoundTol ||
      norm2(div(trace.delta_x, trace.x_tilde)) > 1.2 * eps + kBoundTol) {
    ++out.step_ratio;
  }

  // drift of the maintainer inputs
  const Vector mu_new = after.mu();
  const Vector mu = trace.mu;
  const double drift_mu = norm2(div(sub(mu_new, mu), mu));
  const Vector ratio_new = scale(1.0 / trace.t_new, mu_new);
  const Vector ratio_old = scale(1.0 / t, mu);
  const double drift_ratio =
      norm2(div(sub(ratio_new, ratio_old), ratio_old));
  const Vector u_new = div(after.x, after.s);
  const double drift_u = norm2(div(sub(u_new, trace.u), trace.u));
  if (drift_mu > 2.5 * eps + kBoundTol || drift_ratio > 3.0 * eps + kBoundTol ||
      drift_u > 3.0 * eps + kBoundTol) {
    ++out.drift;
  }

  // quadratic error of the mu move
  if (norm2(sub(sub(mu_new, mu), trace.delta_mu)) >
      6.0 * t * eps * eps + kBoundTol) {
    ++out.quadratic_error;
  }

  // approximate gradient points the right way once the potential is large
  if (!trace.grad_floored) {
    const Vector exact_grad =
        potential_gradient(shift(scale(1.0 / t, mu), -1.0), params_.lambda);
    const double inner =
        -dot(exact_grad, trace.gradient) / trace.grad_norm;
    const double cap = -0.9 * norm2(exact_grad) +
                       2.5 * params_.lambda * params_.lambda * params_.eps_mp *
                           std::sqrt(static_cast<double>(n)) +
                       kBoundTol;
    if (inner > cap) ++out.gradient_direction;
  }

  // monotone region of the potential: the floor of sum cosh is n, and the
  // approximation noise keeps Phi hovering within O(eps^2 lambda^2 n) of it,
  // so strict decrease is only guaranteed above ~n(1 + 10 eps lambda)
  if (phi_before > 1.5 * static_cast<double>(n) &&
      !(phi_after < phi_before * (1.0 + 1e-9))) {
    ++out.potential_decrease;
  }
}

SolveOutcome CentralPathSolver::run(const SolveOptions& opt) {
  SolveOutcome outcome;
  RunMetrics& metrics = outcome.metrics;
  metrics.verified = opt.verify && params_.paper_constants;

  if (state_.t <= threshold_) {
    // already past the stop threshold; nothing to initialize
    metrics.final_t = state_.t;
    outcome.x_bar = state_.x;
    outcome.s_bar = state_.s;
    outcome.t_final = state_.t;
    return outcome;
  }

  ProjectionMaintainer::Options mp_opt;
  mp_opt.eps_mp = params_.eps_mp;
  mp_opt.a = params_.a;
  mp_opt.strategy = params_.strategy;
  mp_opt.audit_interval = opt.audit_interval;

  const Vector u0 = div(state_.x, state_.s);
  const Vector mu0 = state_.mu();
  ProjectionMaintainer mp_sqrt(a_, u0, sqrt_map(), mu0, mp_opt);
  ProjectionMaintainer mp_grad(a_, u0, sinh_gradient_map(params_.lambda),
                               scale(1.0 / state_.t, mu0), mp_opt);

  StepTrace trace;
  while (state_.t > threshold_) {
    if (metrics.iterations >= params_.max_iterations) {
      metrics.final_t = state_.t;
      metrics.mp_sqrt = mp_sqrt.counters();
      metrics.mp_grad = mp_grad.counters();
      outcome.x_bar = state_.x;
      outcome.s_bar = state_.s;
      outcome.t_final = state_.t;
      throw IterationLimitError(
          "solve: iteration cap " + std::to_string(params_.max_iterations) +
              " reached at t = " + std::to_string(state_.t),
          std::move(outcome));
    }
    const IterationRecord rec = record(metrics, state_, opt.record_trace);

    CentralPathState next = approximate_step(state_, mp_sqrt, mp_grad,
                                             params_, trace);

    // drift statistics feed the maintainer complexity story
    {
      const Vector mu_new = next.mu();
      metrics.max_drift_mu = std::max(
          metrics.max_drift_mu, norm2(div(sub(mu_new, trace.mu), trace.mu)));
      const Vector r_new = scale(1.0 / next.t, mu_new);
      const Vector r_old = scale(1.0 / trace.t, trace.mu);
      metrics.max_drift_mu_over_t =
          std::max(metrics.max_drift_mu_over_t,
                   norm2(div(sub(r_new, r_old), r_old)));
      const Vector u_new = div(next.x, next.s);
      metrics.max_drift_u = std::max(
          metrics.max_drift_u, norm2(div(sub(u_new, trace.u), trace.u)));
    }

    if (metrics.verified) {
      const Vector dev_after = shift(scale(1.0 / next.t, next.mu()), -1.0);
      const double phi_after = potential(dev_after, params_.lambda);
      verify_step(state_, next, trace, rec.phi, phi_after, metrics.bounds);
    }

    state_ = std::move(next);
    ++metrics.iterations;
  }
  // fold the terminal state into the invariant accounting (not the trace)
  {
    RunMetrics final_only;
    record(final_only, state_, false);
    metrics.max_phi = std::max(metrics.max_phi, final_only.max_phi);
    metrics.max_inf_norm = std::max(metrics.max_inf_norm, final_only.max_inf_norm);
    metrics.phi_violations += final_only.phi_violations;
    metrics.inf_violations += final_only.inf_violations;
  }

  metrics.final_t = state_.t;
  metrics.mp_sqrt = mp_sqrt.counters();
  metrics.mp_grad = mp_grad.counters();
  outcome.x_bar = state_.x;
  outcome.s_bar = state_.s;
  outcome.t_final = state_.t;
  return outcome;
}

SolveOutcome solve(const ModifiedLp& lp, const PathParams& params,
                   const SolveOptions& opt) {
  CentralPathSolver solver(lp.a, lp.x0, lp.s0, params);
  return solver.run(opt);
}

}  // namespace pmlp
