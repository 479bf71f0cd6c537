#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pmlp/homogenize.hpp"

namespace pmlp {

// Instance document: {"n": int, "d": int, "A": [[..] x d], "b": [..],
// "c": [..], "R": real?, "L": real?}. Missing R or L are derived with a
// warning (L = max(|c|_inf, 1); R from a crude heuristic — supply a real
// diameter bound whenever one is known).
LpInstance parse_instance(const std::string& text,
                          std::vector<std::string>* warnings = nullptr);
LpInstance instance_from_json(const nlohmann::json& doc,
                              std::vector<std::string>* warnings = nullptr);
nlohmann::json instance_to_json(const LpInstance& inst);
std::string instance_to_text(const LpInstance& inst);

// Strictly feasible pair the generator built the instance around.
struct GeneratorWitness {
  Vector x_star;  // primal point with A x* = b, x* in [0.5, 1.5]
  Vector y;       // dual point with c - A^T y = s in [0.1, 2]
  Vector s;
};

// Deterministic generator of strictly feasible primal-dual instances:
//   A ~ U[-1,1]^(d x n), resampled until rank d (at most 100 attempts);
//   x* ~ U[0.5,1.5]^n, b = A x*;
//   y ~ U[-1,1]^d, c' ~ U[-1,1]^n, s = affine map of (c' - A^T y) onto
//   [0.1, 2], c = A^T y + s;  R = 2|x*|_1, L = max(|c|_inf, 1).
LpInstance generate_instance(std::size_t n, std::size_t d, std::uint64_t seed,
                             GeneratorWitness* witness = nullptr);

}  // namespace pmlp
