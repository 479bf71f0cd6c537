#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "pmlp/central_path.hpp"
#include "pmlp/homogenize.hpp"

namespace pmlp {

enum class Preset { kPaper, kRelaxed };

struct SolveFlags {
  double delta = 0.5;
  Preset preset = Preset::kPaper;
  double a = 2.0 / 3.0;
  ResetStrategy strategy = ResetStrategy::kGrowLoop;
  bool verify = false;
  bool trace = false;
  std::uint64_t max_iters = 100000000;
  // Zeroes wall_time_ms so repeated runs serialize byte-identically.
  bool suppress_timing = false;
};

struct SolveReport {
  Vector x_hat;
  double objective = 0.0;
  double feasibility_l1 = 0.0;
  std::uint64_t iterations = 0;
  double wall_time_ms = 0.0;
  // parameters the run was pinned to
  double gamma = 0.0;
  double eps = 0.0, eps_mp = 0.0, lambda = 0.0, a = 0.0, delta = 0.0;
  std::string preset;
  std::string strategy;
  std::uint64_t predicted_iterations = 0;
  double objective_gap_bound = 0.0;
  double feasibility_bound = 0.0;
  RunMetrics metrics;

  bool operator==(const SolveReport&) const = default;
};

// Homogenize -> central path -> recover. Throws IterationLimitError past the
// cap, StepFailureError on a broken step, VerificationError when --verify
// finds a violated assertion or a failed oracle cross-check.
SolveReport run_solve(const LpInstance& inst, const SolveFlags& flags);

nlohmann::json report_to_json(const SolveReport& report);
SolveReport report_from_json(const nlohmann::json& doc);
std::string report_to_text(const SolveReport& report);

}  // namespace pmlp
