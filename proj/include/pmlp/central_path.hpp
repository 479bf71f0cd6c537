#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pmlp/homogenize.hpp"
#include "pmlp/linalg.hpp"
#include "pmlp/potential.hpp"
#include "pmlp/projection.hpp"

namespace pmlp {

// Absolute tolerance for float-level identities on unit-scale quantities.
inline constexpr double kInvariantTol = 1e-7;
// Additive slack for the per-iteration step bounds.
inline constexpr double kBoundTol = 1e-6;

struct PathParams {
  double eps = 0.0;     // step size
  double eps_mp = 0.0;  // maintainer accuracy
  double lambda = 0.0;  // potential parameter
  double a = 2.0 / 3.0;
  double delta = 0.5;  // target accuracy
  double t_init = 1.0;
  std::uint64_t max_iterations = 100000000;
  double grad_floor = 1e-12;
  ResetStrategy strategy = ResetStrategy::kGrowLoop;
  // True when (eps, eps_mp, lambda) satisfy the constants the per-iteration
  // bounds were derived for; the relaxed demo preset does not.
  bool paper_constants = true;

  // eps = eps_mp = 1/(1500 ln n), lambda = 40 ln n.
  static PathParams paper(std::size_t n, double delta = 0.5);
  // Faster demo preset: eps = eps_mp = 0.01, lambda = 10 ln n.
  static PathParams relaxed(std::size_t n, double delta = 0.5);

  double gamma() const;                            // min(delta, 1/lambda)
  double stop_threshold(std::size_t n) const;      // gamma^2 / (2n)
  void validate() const;
};

struct CentralPathState {
  Vector x;
  Vector s;
  double t = 1.0;

  Vector mu() const { return mul(x, s); }
};

// Every intermediate of one step, kept for invariant checks.
struct StepTrace {
  double t = 0.0, t_new = 0.0;
  double grad_norm = 0.0;
  bool grad_floored = false;
  Vector u, u_tilde, m, v, w, p_v, p_w;
  Vector mu, mu_tilde, x_tilde, s_tilde;
  Vector gradient;  // of the potential at mu_tilde/t - 1
  Vector delta_t, delta_phi, delta_mu, p, delta_s, delta_x;
};

// One short step of the central path. Both maintainers must have been
// initialized with u = x/s and arguments mu (square-root channel) and mu/t
// (gradient channel). Writes all intermediates into `trace`.
CentralPathState approximate_step(const CentralPathState& state,
                                  ProjectionMaintainer& mp_sqrt,
                                  ProjectionMaintainer& mp_grad,
                                  const PathParams& params, StepTrace& trace);

struct IterationRecord {
  double phi = 0.0;
  double inf_norm = 0.0;
  double t = 0.0;

  bool operator==(const IterationRecord&) const = default;
};

struct BoundViolationCounts {
  std::uint64_t delta_length = 0;
  std::uint64_t step_ratio = 0;          // relative delta_x, delta_s bounds
  std::uint64_t drift = 0;               // mu, mu/t, u per-step drift bounds
  std::uint64_t quadratic_error = 0;     // |mu_new - mu - delta_mu|
  std::uint64_t gradient_direction = 0;
  std::uint64_t potential_decrease = 0;
  std::uint64_t approximation_band = 0;  // x~, s~, mu~ sandwiches
  std::uint64_t linear_system = 0;       // step system residuals

  std::uint64_t total() const {
    return delta_length + step_ratio + drift + quadratic_error +
           gradient_direction + potential_decrease + approximation_band +
           linear_system;
  }

  bool operator==(const BoundViolationCounts&) const = default;
};

struct RunMetrics {
  std::uint64_t iterations = 0;
  double final_t = 0.0;
  double max_phi = 0.0;
  double max_inf_norm = 0.0;
  std::uint64_t phi_violations = 0;  // recorded phi > 2n
  std::uint64_t inf_violations = 0;  // recorded |mu/t - 1|_inf > 0.1
  // Largest per-step relative l2 drift seen by the maintainers.
  double max_drift_u = 0.0;
  double max_drift_mu = 0.0;
  double max_drift_mu_over_t = 0.0;
  bool verified = false;
  BoundViolationCounts bounds;
  MaintainerCounters mp_sqrt;
  MaintainerCounters mp_grad;
  std::vector<IterationRecord> trace;  // one record per iteration input

  bool operator==(const RunMetrics&) const = default;
};

struct SolveOutcome {
  Vector x_bar;
  Vector s_bar;
  double t_final = 0.0;
  RunMetrics metrics;
};

// Thrown when max_iterations is hit before t reaches the stop threshold.
class IterationLimitError : public Error {
 public:
  IterationLimitError(const std::string& what, SolveOutcome partial)
      : Error(what),
        partial_(std::make_shared<SolveOutcome>(std::move(partial))) {}
  const SolveOutcome& partial() const { return *partial_; }

 private:
  std::shared_ptr<SolveOutcome> partial_;
};

struct SolveOptions {
  bool verify = false;        // per-iteration bound assertions (paper preset)
  bool record_trace = false;  // keep the per-iteration (phi, inf, t) trace
  std::size_t audit_interval = 512;  // forwarded to the maintainers
};

// Runs the central path on a feasible starting triple until
// t <= gamma^2 / (2n).
class CentralPathSolver {
 public:
  CentralPathSolver(Matrix a, Vector x0, Vector s0, PathParams params);

  SolveOutcome run(const SolveOptions& opt = {});

  double stop_threshold() const { return threshold_; }
  const PathParams& params() const { return params_; }

  static std::uint64_t predicted_iterations(double t_init, double threshold,
                                            double eps, std::size_t n);

 private:
  IterationRecord record(RunMetrics& metrics, const CentralPathState& state,
                         bool to_trace) const;
  void verify_step(const CentralPathState& before,
                   const CentralPathState& after, const StepTrace& trace,
                   double phi_before, double phi_after,
                   BoundViolationCounts& out) const;

  Matrix a_;
  CentralPathState state_;
  PathParams params_;
  double threshold_ = 0.0;
};

// Algorithm entry point on a homogenized instance.
SolveOutcome solve(const ModifiedLp& lp, const PathParams& params,
                   const SolveOptions& opt = {});

}  // namespace pmlp
