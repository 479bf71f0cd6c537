#pragma once

#include "pmlp/linalg.hpp"

namespace pmlp {

// Entrywise cosh potential sum_i cosh(lambda x_i). Guards against overflow:
// lambda * |x|_inf must stay below 700.
double potential(const Vector& x, double lambda);

// Gradient of the potential: entrywise lambda * sinh(lambda x_i).
Vector potential_gradient(const Vector& x, double lambda);

// Upper bound on |x|_inf implied by Phi_lambda(x) = phi: ln(2 phi) / lambda.
double infinity_bound_from_potential(double phi, double lambda);

}  // namespace pmlp
