#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace roughforms {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegreeError : Error { using Error::Error; };
struct DimensionError : Error { using Error::Error; };
struct PermutationError : Error { using Error::Error; };
struct ParameterError : Error { using Error::Error; };
struct BudgetError : Error { using Error::Error; };
struct DivergentGaugeError : Error { using Error::Error; };
struct InsufficientDataError : Error { using Error::Error; };
struct OracleError : Error { using Error::Error; };
struct NonConvergentError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };

struct SyntaxError : Error {
  SyntaxError(std::size_t pos, const std::string& expected_what,
              const std::string& msg)
      : Error(msg), position(pos), expected(expected_what) {}
  std::size_t position;
  std::string expected;
};

struct UnknownIdentifierError : Error {
  UnknownIdentifierError(std::size_t pos, const std::string& ident,
                         const std::string& msg)
      : Error(msg), position(pos), name(ident) {}
  std::size_t position;
  std::string name;
};

struct ArityError : Error {
  ArityError(const std::string& ident, int got_n, int want_n,
             const std::string& msg)
      : Error(msg), name(ident), got(got_n), want(want_n) {}
  std::string name;
  int got;
  int want;
};

}  // namespace roughforms
