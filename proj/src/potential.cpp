#include "pmlp/potential.hpp"

#include <cmath>
#include <string>

namespace pmlp {

namespace {
constexpr double kOverflowGuard = 700.0;

void check_guard(const Vector& x, double lambda) {
  const double m = lambda * norm_inf(x);
  if (!(m <= kOverflowGuard)) {
    throw RangeError("potential: lambda * |x|_inf = " + std::to_string(m) +
                     " exceeds the overflow guard " +
                     std::to_string(kOverflowGuard));
  }
}
}  // namespace

double potential(const Vector& x, double lambda) {
  check_guard(x, lambda);
  double acc = 0.0;
  for (double xi : x) acc += std::cosh(lambda * xi);
  return acc;
}

Vector potential_gradient(const Vector& x, double lambda) {
  check_guard(x, lambda);
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    g[i] = lambda * std::sinh(lambda * x[i]);
  }
  return Vector(std::move(g));
}

double infinity_bound_from_potential(double phi, double lambda) {
  if (!(phi >= 1.0)) {
    throw DomainError("infinity_bound_from_potential: phi must be >= 1");
  }
  return std::log(2.0 * phi) / lambda;
}

}  // namespace pmlp
