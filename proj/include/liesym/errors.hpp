#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liesym {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class UndeclaredIdentifier : public ParseError {
 public:
  UndeclaredIdentifier(const std::string& name, int line, int column)
      : ParseError("undeclared identifier '" + name + "'", line, column), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define LIESYM_DEFINE_ERROR(Name) \
  class Name : public Error {     \
   public:                        \
    using Error::Error;           \
  };

LIESYM_DEFINE_ERROR(DivisionByZero)
LIESYM_DEFINE_ERROR(NotPolynomial)
LIESYM_DEFINE_ERROR(NotLinear)
LIESYM_DEFINE_ERROR(SingularMetric)
LIESYM_DEFINE_ERROR(ChartMismatch)
LIESYM_DEFINE_ERROR(NotClosed)
LIESYM_DEFINE_ERROR(NotIntegrable)
LIESYM_DEFINE_ERROR(MalformedSystem)
LIESYM_DEFINE_ERROR(CouplingViolation)
LIESYM_DEFINE_ERROR(JetInGenerator)
LIESYM_DEFINE_ERROR(FNotZero)
LIESYM_DEFINE_ERROR(MissingProvenance)
LIESYM_DEFINE_ERROR(ValidationError)

#undef LIESYM_DEFINE_ERROR

/// Raised when a collected system grows past the configured monomial cap.
class ResourceLimit : public Error {
 public:
  ResourceLimit(std::size_t count, std::size_t cap)
      : Error("collected monomial count " + std::to_string(count) + " exceeds limit " +
              std::to_string(cap)) {}
};

/// A Lie bracket of two basis elements left the span of the basis.
class AlgebraNotClosed : public NotClosed {
 public:
  AlgebraNotClosed(std::size_t i, std::size_t j)
      : NotClosed("bracket [X" + std::to_string(i + 1) + ", X" + std::to_string(j + 1) +
                  "] leaves the span of the basis"),
        first_(i),
        second_(j) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

}  // namespace liesym
