#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmlp {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Incompatible matrix/vector dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Input outside the operation's domain (nonpositive, nonfinite, out of range).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Pivot collapse while factoring; `column` is the pivot column that failed.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, std::size_t column)
      : Error(what), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// Constraint matrix does not have full row rank.
class RankError : public Error {
 public:
  using Error::Error;
};

// Argument exceeds a guard (overflow guard, combinatorial size cap).
class RangeError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

// A central-path step produced a nonpositive x or s entry.
class StepFailureError : public Error {
 public:
  using Error::Error;
};

// Instance document failed validation; `path` locates the offending field.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A --verify run recorded at least one assertion violation.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace pmlp
