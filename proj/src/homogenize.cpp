#include "pmlp/homogenize.hpp"

#include <cmath>
#include <string>

namespace pmlp {

void LpInstance::validate() const {
  const std::size_t dd = d(), nn = n();
  if (nn == 0 || dd == 0 || nn < dd) {
    throw ShapeError("LpInstance: need n >= d >= 1, got d=" +
                     std::to_string(dd) + " n=" + std::to_string(nn));
  }
  if (b.size() != dd) throw ShapeError("LpInstance: b must have length d");
  if (c.size() != nn) throw ShapeError("LpInstance: c must have length n");
  if (!(diameter > 0.0)) {
    throw DomainError("LpInstance: diameter bound R must be positive");
  }
  if (norm_inf(c) > lipschitz) {
    throw DomainError("LpInstance: |c|_inf exceeds the Lipschitz bound L");
  }
  if (rank(a) != dd) {
    throw RankError("LpInstance: A must have full row rank " +
                    std::to_string(dd));
  }
}

ModifiedLp homogenize(const LpInstance& inst, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw DomainError("homogenize: gamma must lie in (0, 1]");
  }
  inst.validate();
  const std::size_t n = inst.n(), d = inst.d();
  // s0 = 1 + (gamma/L) c must stay strictly positive.
  if (gamma / inst.lipschitz * norm_inf(inst.c) > 1.0 - 1e-9) {
    throw DomainError(
        "homogenize: gamma/L * |c|_inf too close to 1; s0 would touch zero");
  }

  ModifiedLp out;
  out.gamma = gamma;

  // Writing the embedding with both the row [1,...,1,1,0] and its negation
  // (as sometimes displayed) leaves the constraint matrix rank-deficient, so
  // only the positive copy is kept; the starting triple is unaffected.
  Matrix abar(d + 1, n + 2, 0.0);
  // row sums of A, for the (b/R - A 1_n) column
  for (std::size_t i = 0; i < d; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      abar(i, j) = inst.a(i, j);
      row_sum += inst.a(i, j);
    }
    abar(i, n + 1) = inst.b[i] / inst.diameter - row_sum;
  }
  for (std::size_t j = 0; j <= n; ++j) abar(d, j) = 1.0;
  out.a = std::move(abar);

  Vector bbar(d + 1, 0.0);
  for (std::size_t i = 0; i < d; ++i) bbar[i] = inst.b[i] / inst.diameter;
  bbar[d] = static_cast<double>(n) + 1.0;
  out.b = std::move(bbar);

  Vector cbar(n + 2, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    cbar[j] = gamma / inst.lipschitz * inst.c[j];
  }
  cbar[n + 1] = 1.0;
  out.c = std::move(cbar);

  out.x0 = Vector(n + 2, 1.0);
  Vector y0(d + 1, 0.0);
  y0[d] = -1.0;
  out.y0 = std::move(y0);
  Vector s0(n + 2, 1.0);
  for (std::size_t j = 0; j < n; ++j) s0[j] = 1.0 + out.c[j];
  out.s0 = std::move(s0);
  return out;
}

Recovered recover(const Vector& x_bar, const LpInstance& inst, double gamma) {
  if (x_bar.size() != inst.n() + 2) {
    throw ShapeError("recover: expected a vector of length n+2 = " +
                     std::to_string(inst.n() + 2) + ", got " +
                     std::to_string(x_bar.size()));
  }
  Recovered out;
  std::vector<double> xh(inst.n());
  for (std::size_t j = 0; j < inst.n(); ++j) {
    xh[j] = inst.diameter * x_bar[j];
  }
  out.x_hat = Vector(std::move(xh));
  out.objective_gap_bound = inst.lipschitz * inst.diameter * gamma;
  double abs_sum = 0.0;
  for (double v : inst.a.raw()) abs_sum += std::fabs(v);
  out.feasibility_bound =
      2.0 * gamma * (inst.diameter * abs_sum + norm1(inst.b));
  return out;
}

}  // namespace pmlp
