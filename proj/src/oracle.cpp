#include "pmlp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pmlp {

namespace {
constexpr std::size_t kBruteForceCap = 24;
constexpr double kFeasTol = 1e-10;

void check_projection_inputs(const Matrix& a, const Vector& u,
                             const Vector& z) {
  if (u.size() != a.cols() || z.size() != a.cols()) {
    throw ShapeError("exact_projection: u and z must have length n");
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0)) {
      throw DomainError("exact_projection: u must be strictly positive");
    }
  }
}

// Visits all size-k index subsets of [n] in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  if (k == 0) {
    std::vector<std::size_t> empty;
    fn(empty);
    return;
  }
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    // advance
    std::size_t i = k;
    while (i-- > 0) {
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

Matrix gather_columns(const Matrix& a, const std::vector<std::size_t>& cols) {
  Matrix out(a.rows(), cols.size(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(i, cols[j]);
  }
  return out;
}

}  // namespace

Vector exact_projection(const Matrix& a, const Vector& u, const Vector& z) {
  check_projection_inputs(a, u, z);
  const std::size_t d = a.rows(), n = a.cols();
  const Vector su = sqrt(u);
  const Vector y = mul(su, z);
  Matrix au = a;
  for (std::size_t i = 0; i < d; ++i) {
    double* r = au.row(i);
    for (std::size_t j = 0; j < n; ++j) r[j] *= u[j];
  }
  const Matrix gram = mat_mul(au, transpose(a));
  const Vector t = solve_linear(gram, mat_vec(a, y));
  return mul(su, mat_transpose_vec(a, t));
}

BruteForceResult brute_force_lp(const LpInstance& inst) {
  const std::size_t n = inst.n(), d = inst.d();
  if (n > kBruteForceCap) {
    throw SizeError("brute_force_lp: n = " + std::to_string(n) +
                    " exceeds the enumeration cap " +
                    std::to_string(kBruteForceCap));
  }
  inst.validate();

  BruteForceResult best;
  bool found = false;

  for_each_subset(n, d, [&](const std::vector<std::size_t>& basis) {
    const Matrix ab = gather_columns(inst.a, basis);
    Vector xb;
    try {
      xb = solve_linear(ab, inst.b);
    } catch (const SingularityError&) {
      return;
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (xb[i] < -kFeasTol) return;
    }
    double value = 0.0;
    for (std::size_t i = 0; i < d; ++i) value += inst.c[basis[i]] * xb[i];
    if (!found || value < best.value) {
      found = true;
      best.value = value;
      best.basis = basis;
      Vector x(n, 0.0);
      for (std::size_t i = 0; i < d; ++i) x[basis[i]] = xb[i];
      best.x = std::move(x);
    }
  });

  if (!found) {
    best.status = LpStatus::kInfeasible;
    return best;
  }

  // Feasible: unbounded iff some extreme ray r >= 0 of Ar = 0 has c^T r < 0.
  // Extreme rays live on supports of size <= d+1 with a 1-dim kernel; probe
  // them by solving A_C r_C = 0 with one coordinate pinned to 1.
  bool unbounded = false;
  const std::size_t support = std::min(n, d + 1);
  for_each_subset(n, support, [&](const std::vector<std::size_t>& cols) {
    if (unbounded) return;
    const Matrix ac = gather_columns(inst.a, cols);
    // pin each coordinate in turn; kernel vectors show up as solutions of
    // the remaining square system
    for (std::size_t pin = 0; pin < cols.size() && !unbounded; ++pin) {
      if (cols.size() - 1 != d) break;  // square subsystem required
      std::vector<std::size_t> rest;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (j != pin) rest.push_back(j);
      }
      Matrix sub(d, d, 0.0);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) sub(i, j) = ac(i, rest[j]);
      }
      Vector rhs(d, 0.0);
      for (std::size_t i = 0; i < d; ++i) rhs[i] = -ac(i, pin);
      Vector sol;
      try {
        sol = solve_linear(sub, rhs);
      } catch (const SingularityError&) {
        continue;
      }
      Vector ray(n, 0.0);
      ray[cols[pin]] = 1.0;
      bool nonneg = true;
      for (std::size_t j = 0; j < d; ++j) {
        ray[cols[rest[j]]] = sol[j];
        nonneg &= sol[j] >= -kFeasTol;
      }
      if (!nonneg) continue;
      double dir_cost = 0.0;
      for (std::size_t j = 0; j < n; ++j) dir_cost += inst.c[j] * ray[j];
      double scale_ref = norm2(ray);
      if (dir_cost < -1e-9 * std::max(1.0, scale_ref)) unbounded = true;
    }
  });

  best.status = unbounded ? LpStatus::kUnbounded : LpStatus::kOptimal;
  return best;
}

double block_reduction_check(const Matrix& a, const Vector& u,
                             const Vector& z) {
  check_projection_inputs(a, u, z);
  const std::size_t d = a.rows(), n = a.cols();
  const std::size_t dim = 3 * n + d;

  // Block layout (rows = cols): [ U^-1  A^T  sqrtU^-1  0 ]
  //                             [ A     0    0         0 ]
  //                             [ 0     0    -I        0 ]
  //                             [ sqrtU^-1 0 0         -I ]
  Matrix block(dim, dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    block(i, i) = 1.0 / u[i];
    block(i, n + d + i) = 1.0 / std::sqrt(u[i]);
    block(2 * n + d + i, i) = 1.0 / std::sqrt(u[i]);
    block(n + d + i, n + d + i) = -1.0;
    block(2 * n + d + i, 2 * n + d + i) = -1.0;
  }
  // A and A^T blocks
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      block(n + i, j) = a(i, j);
      block(j, n + i) = a(i, j);
    }
  }

  Vector rhs(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[n + d + i] = z[i];
    rhs[2 * n + d + i] = 1.0;
  }

  const Vector sol = solve_linear(block, rhs);

  // The bottom block solves to (I - P) z - 1, so the embedded projection is
  // P z = z - 1 - bottom.
  const Vector exact = exact_projection(a, u, z);
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double embedded = z[i] - 1.0 - sol[2 * n + d + i];
    dev = std::max(dev, std::fabs(embedded - exact[i]));
  }
  return dev;
}

}  // namespace pmlp
