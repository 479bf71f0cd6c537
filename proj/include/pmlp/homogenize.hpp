#pragma once

#include <cstddef>

#include "pmlp/linalg.hpp"

namespace pmlp {

// Standard-form LP  min c^T x  s.t.  Ax = b, x >= 0, together with a diameter
// bound (|x|_1 <= diameter for every feasible x) and a Lipschitz bound
// (|c|_inf <= lipschitz).
struct LpInstance {
  Matrix a;
  Vector b;
  Vector c;
  double diameter = 0.0;   // R
  double lipschitz = 1.0;  // L

  std::size_t n() const { return a.cols(); }
  std::size_t d() const { return a.rows(); }
  void validate() const;
};

// The embedded LP with d+1 constraints and n+2 variables plus its centered
// feasible starting triple.
struct ModifiedLp {
  Matrix a;  // (d+1) x (n+2), full row rank
  Vector b;
  Vector c;
  double gamma = 0.0;
  Vector x0, y0, s0;

  std::size_t n() const { return a.cols(); }
  std::size_t d() const { return a.rows(); }
};

// Embeds `inst` so that (x0, y0, s0) is feasible with x0 s0 close to 1.
ModifiedLp homogenize(const LpInstance& inst, double gamma);

struct Recovered {
  Vector x_hat;
  double objective_gap_bound = 0.0;  // L * R * gamma
  double feasibility_bound = 0.0;    // 2 gamma (R sum|A_ij| + |b|_1)
};

// Maps a near-optimal solution of the modified LP back to the original one.
// The caller certifies sum_i x_bar_i s_bar_i <= gamma^2 via its stop rule.
Recovered recover(const Vector& x_bar, const LpInstance& inst, double gamma);

}  // namespace pmlp
