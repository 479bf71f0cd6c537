#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "pmlp/errors.hpp"

namespace pmlp {

// Relative pivot threshold: a pivot counts as zero when it falls below
// this fraction of the largest pivot seen in the factorization.
inline constexpr double kSingularTolRel = 1e-12;

// Dense real vector. Entries are checked finite on construction; later
// in-place writes are the caller's responsibility.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, double value = 0.0);
  Vector(std::initializer_list<double> xs);
  explicit Vector(std::vector<double> xs);

  static Vector ones(std::size_t n) { return Vector(n, 1.0); }

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  double operator[](std::size_t i) const { return v_[i]; }
  double& operator[](std::size_t i) { return v_[i]; }
  const double* data() const { return v_.data(); }
  double* data() { return v_.data(); }
  const std::vector<double>& raw() const { return v_; }

  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  bool operator==(const Vector& o) const { return v_ == o.v_; }

 private:
  std::vector<double> v_;
};

// Dense row-major matrix, entries checked finite on construction.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return a_[i * cols_ + j];
  }
  const double* row(std::size_t i) const { return a_.data() + i * cols_; }
  double* row(std::size_t i) { return a_.data() + i * cols_; }
  const std::vector<double>& raw() const { return a_; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

// --- products (deterministic: every element sums in ascending k order) ---

Matrix mat_mul(const Matrix& a, const Matrix& b);
Vector mat_vec(const Matrix& a, const Vector& x);
Vector mat_transpose_vec(const Matrix& a, const Vector& x);  // A^T x
Matrix transpose(const Matrix& a);

// --- LU solves -----------------------------------------------------------

// Solves M X = B by LU with partial pivoting. Ties between equal pivot
// magnitudes go to the smallest row index. Throws SingularityError with the
// failing column when a pivot falls under the relative threshold.
Matrix solve_linear(const Matrix& m, const Matrix& b);
Vector solve_linear(const Matrix& m, const Vector& b);
Matrix invert(const Matrix& m);

// Numerical rank via row elimination with the same relative pivot threshold.
std::size_t rank(const Matrix& a);

// --- entrywise vector helpers --------------------------------------------

Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector mul(const Vector& a, const Vector& b);
Vector div(const Vector& a, const Vector& b);
Vector scale(double c, const Vector& a);
Vector shift(const Vector& a, double c);  // a_i + c
Vector sqrt(const Vector& a);
double dot(const Vector& a, const Vector& b);
double norm1(const Vector& a);
double norm2(const Vector& a);
double norm_inf(const Vector& a);
double max_abs(const Matrix& a);

void check_same_size(const Vector& a, const Vector& b, const char* where);

}  // namespace pmlp
