#include "pmlp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace pmlp {
namespace {

void check_finite(const std::vector<double>& xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) {
      throw DomainError(std::string(what) + ": nonfinite entry at index " +
                        std::to_string(i));
    }
  }
}

}  // namespace

Vector::Vector(std::size_t n, double value) : v_(n, value) {
  check_finite(v_, "Vector");
}

Vector::Vector(std::initializer_list<double> xs) : v_(xs) {
  check_finite(v_, "Vector");
}

Vector::Vector(std::vector<double> xs) : v_(std::move(xs)) {
  check_finite(v_, "Vector");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double value)
    : rows_(rows), cols_(cols), a_(rows * cols, value) {
  check_finite(a_, "Matrix");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), a_(std::move(row_major)) {
  if (a_.size() != rows_ * cols_) {
    throw ShapeError("Matrix: entry count " + std::to_string(a_.size()) +
                     " does not match " + std::to_string(rows_) + "x" +
                     std::to_string(cols_));
  }
  check_finite(a_, "Matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw ShapeError("Matrix: ragged initializer rows");
    }
    a_.insert(a_.end(), r.begin(), r.end());
  }
  check_finite(a_, "Matrix");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("mat_mul: " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " times " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Matrix c(a.rows(), b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = ai[k];
      const double* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Vector mat_vec(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) throw ShapeError("mat_vec: dimension mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    double acc = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) acc += ai[k] * x[k];
    y[i] = acc;
  }
  return Vector(std::move(y));
}

Vector mat_transpose_vec(const Matrix& a, const Vector& x) {
  if (a.rows() != x.size()) {
    throw ShapeError("mat_transpose_vec: dimension mismatch");
  }
  std::vector<double> y(a.cols(), 0.0);
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const double* ak = a.row(k);
    const double xk = x[k];
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += xk * ak[j];
  }
  return Vector(std::move(y));
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

namespace {

// In-place LU with partial pivoting. Returns the row permutation.
// Ties in pivot magnitude resolve to the smallest row index.
std::vector<std::size_t> lu_factor(Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  double max_pivot = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t piv = j;
    double best = std::fabs(m(j, j));
    for (std::size_t i = j + 1; i < n; ++i) {
      const double v = std::fabs(m(i, j));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    max_pivot = std::max(max_pivot, best);
    if (best <= kSingularTolRel * max_pivot) {
      throw SingularityError(
          "solve_linear: pivot " + std::to_string(best) + " in column " +
              std::to_string(j) + " below relative threshold",
          j);
    }
    if (piv != j) {
      std::swap(perm[j], perm[piv]);
      double* rj = m.row(j);
      double* rp = m.row(piv);
      for (std::size_t c = 0; c < n; ++c) std::swap(rj[c], rp[c]);
    }
    const double d = m(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      const double l = m(i, j) / d;
      m(i, j) = l;
      if (l != 0.0) {
        double* ri = m.row(i);
        const double* rj = m.row(j);
        for (std::size_t c = j + 1; c < n; ++c) ri[c] -= l * rj[c];
      }
    }
  }
  return perm;
}

}  // namespace

Matrix solve_linear(const Matrix& m, const Matrix& b) {
  if (m.rows() != m.cols()) throw ShapeError("solve_linear: matrix not square");
  if (b.rows() != m.rows()) {
    throw ShapeError("solve_linear: right-hand side has " +
                     std::to_string(b.rows()) + " rows, expected " +
                     std::to_string(m.rows()));
  }
  const std::size_t n = m.rows();
  Matrix lu = m;
  const std::vector<std::size_t> perm = lu_factor(lu);

  Matrix x(n, b.cols(), 0.0);
  std::vector<double> col(n);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(perm[i], c);
    // forward substitution (unit lower part)
    for (std::size_t i = 1; i < n; ++i) {
      double acc = col[i];
      const double* ri = lu.row(i);
      for (std::size_t j = 0; j < i; ++j) acc -= ri[j] * col[j];
      col[i] = acc;
    }
    // back substitution
    for (std::size_t ii = n; ii-- > 0;) {
      double acc = col[ii];
      const double* ri = lu.row(ii);
      for (std::size_t j = ii + 1; j < n; ++j) acc -= ri[j] * col[j];
      col[ii] = acc / ri[ii];
    }
    for (std::size_t i = 0; i < n; ++i) x(i, c) = col[i];
  }
  return x;
}

Vector solve_linear(const Matrix& m, const Vector& b) {
  Matrix rhs(b.size(), 1, 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  Matrix x = solve_linear(m, rhs);
  std::vector<double> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = x(i, 0);
  return Vector(std::move(out));
}

Matrix invert(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("invert: matrix not square");
  return solve_linear(m, Matrix::identity(m.rows()));
}

std::size_t rank(const Matrix& a) {
  Matrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  double max_pivot = 0.0;
  for (std::size_t j = 0; j < cols && r < rows; ++j) {
    std::size_t piv = r;
    double best = std::fabs(m(r, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      const double v = std::fabs(m(i, j));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0 || best <= kSingularTolRel * max_pivot) continue;
    max_pivot = std::max(max_pivot, best);
    if (piv != r) {
      double* ra = m.row(r);
      double* rb = m.row(piv);
      for (std::size_t c = 0; c < cols; ++c) std::swap(ra[c], rb[c]);
    }
    const double d = m(r, j);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const double l = m(i, j) / d;
      if (l != 0.0) {
        double* ri = m.row(i);
        const double* rr = m.row(r);
        for (std::size_t c = j; c < cols; ++c) ri[c] -= l * rr[c];
      }
    }
    ++r;
  }
  return r;
}

void check_same_size(const Vector& a, const Vector& b, const char* where) {
  if (a.size() != b.size()) {
    throw ShapeError(std::string(where) + ": size " + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()));
  }
}

Vector add(const Vector& a, const Vector& b) {
  check_same_size(a, b, "add");
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return Vector(std::move(r));
}

Vector sub(const Vector& a, const Vector& b) {
  check_same_size(a, b, "sub");
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return Vector(std::move(r));
}

Vector mul(const Vector& a, const Vector& b) {
  check_same_size(a, b, "mul");
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return Vector(std::move(r));
}

Vector div(const Vector& a, const Vector& b) {
  check_same_size(a, b, "div");
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] / b[i];
  return Vector(std::move(r));
}

Vector scale(double c, const Vector& a) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return Vector(std::move(r));
}

Vector shift(const Vector& a, double c) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + c;
  return Vector(std::move(r));
}

Vector sqrt(const Vector& a) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::sqrt(a[i]);
  return Vector(std::move(r));
}

double dot(const Vector& a, const Vector& b) {
  check_same_size(a, b, "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm1(const Vector& a) {
  double acc = 0.0;
  for (double x : a) acc += std::fabs(x);
  return acc;
}

double norm2(const Vector& a) {
  double acc = 0.0;
  for (double x : a) acc += x * x;
  return std::sqrt(acc);
}

double norm_inf(const Vector& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::fabs(x));
  return m;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double x : a.raw()) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace pmlp
