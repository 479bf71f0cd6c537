#pragma once

#include <vector>

#include "pmlp/homogenize.hpp"
#include "pmlp/linalg.hpp"

namespace pmlp {

// Reference implementations used only for verification. They share no state
// with the solver: every call factors from scratch.

// sqrt(U) A^T (A U A^T)^-1 A sqrt(U) z by direct factorization.
Vector exact_projection(const Matrix& a, const Vector& u, const Vector& z);

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct BruteForceResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  Vector x;
  std::vector<std::size_t> basis;  // columns of the optimal basic solution
};

// Enumerates basic solutions (and extreme rays for unboundedness) of
// min c^T x s.t. Ax = b, x >= 0. Guarded to n <= 24.
BruteForceResult brute_force_lp(const LpInstance& inst);

// Solves the (3n+d)-dimensional block system whose solution embeds the
// projection, and returns the max deviation of the embedded projection from
// exact_projection(a, u, z).
double block_reduction_check(const Matrix& a, const Vector& u, const Vector& z);

}  // namespace pmlp
