#include <doctest.h>

#include <cmath>

#include "pmlp/potential.hpp"
#include "pmlp/rng.hpp"

using namespace pmlp;

namespace {

Vector random_bounded(std::size_t n, double bound, SplitMix64& rng) {
  Vector v(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i] = rng.next_in(-bound, bound);
  return v;
}

}  // namespace

TEST_CASE("potential: fixed values and symmetry") {
  CHECK(potential(Vector(7, 0.0), 5.0) == doctest::Approx(7.0));
  // cosh(ln 2) = 1.25
  CHECK(potential(Vector{std::log(2.0) / 2.0}, 2.0) ==
        doctest::Approx(1.25).epsilon(1e-14));

  SplitMix64 rng(12);
  const Vector x = random_bounded(9, 1.5, rng);
  CHECK(potential(x, 3.0) == doctest::Approx(potential(scale(-1.0, x), 3.0))
                                 .epsilon(1e-14));
}

TEST_CASE("potential: overflow guard") {
  CHECK_THROWS_AS(potential(Vector{800.0}, 1.0), RangeError);
  CHECK_THROWS_AS(potential_gradient(Vector{1.0}, 701.0), RangeError);
}

TEST_CASE("potential_gradient: fixed values and finite differences") {
  CHECK(norm_inf(potential_gradient(Vector(5, 0.0), 4.0)) == 0.0);
  // sinh(ln 2) = 0.75
  CHECK(potential_gradient(Vector{std::log(2.0)}, 1.0)[0] ==
        doctest::Approx(0.75).epsilon(1e-14));

  SplitMix64 rng(42);
  const double lambda = 7.0;
  const Vector x = random_bounded(6, 1.0, rng);
  const Vector g = potential_gradient(x, lambda);
  const double h = 1e-6;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Vector hi = x, lo = x;
    hi[i] += h;
    lo[i] -= h;
    const double fd =
        (potential(hi, lambda) - potential(lo, lambda)) / (2.0 * h);
    CHECK(g[i] == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("infinity bound from the potential") {
  const double lambda = 11.0;
  CHECK(infinity_bound_from_potential(0.5 * std::exp(lambda), lambda) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(infinity_bound_from_potential(16.0, 40.0 * std::log(16.0)) ==
        doctest::Approx(std::log(32.0) / (40.0 * std::log(16.0)))
            .epsilon(1e-12));
  CHECK_THROWS_AS(infinity_bound_from_potential(0.5, 3.0), DomainError);

  SplitMix64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector x = random_bounded(12, 2.0, rng);
    const double phi = potential(x, 9.0);
    CHECK(norm_inf(x) <= infinity_bound_from_potential(phi, 9.0) + 1e-12);
  }
}

TEST_CASE("taylor-style properties of the cosh potential") {
  SplitMix64 rng(314);
  const double lambda = 12.0;
  const std::size_t n = 10;
  for (int trial = 0; trial < 100; ++trial) {
    const Vector r = random_bounded(n, 0.8, rng);
    Vector v = random_bounded(n, 1.0 / lambda, rng);

    const double phi_r = potential(r, lambda);
    const Vector grad = potential_gradient(r, lambda);

    // second-order upper bound for |v|_inf <= 1/lambda
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      quad += lambda * lambda * std::cosh(lambda * r[i]) * v[i] * v[i];
    }
    CHECK(potential(add(r, v), lambda) <=
          phi_r + dot(grad, v) + 2.0 * quad + 1e-9);

    // gradient norm dominates the excess potential
    CHECK(norm2(grad) >=
          lambda / std::sqrt(double(n)) * (phi_r - double(n)) - 1e-9);

    // entrywise second-derivative norm bound
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double entry = lambda * std::cosh(lambda * r[i]);
      sq += entry * entry;
    }
    CHECK(std::sqrt(sq) <=
          lambda * std::sqrt(double(n)) + norm2(grad) + 1e-9);
  }
}
