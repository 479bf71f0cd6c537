#pragma once

#include <functional>

#include "pmlp/linalg.hpp"

namespace pmlp {

// Pointwise real function applied entrywise to vectors. The two maps used by
// the central path (square root and the scaled-sinh gradient map) are defined
// on strictly positive arguments.
using ScalarMap = std::function<double(double)>;

ScalarMap sqrt_map();
// f(x) = lambda * sinh(lambda * (x - 1)) / sqrt(x)
ScalarMap sinh_gradient_map(double lambda);

Vector apply_map(const ScalarMap& f, const Vector& v);

}  // namespace pmlp
