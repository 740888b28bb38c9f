#ifndef RENDEZKIT_ERROR_HPP
#define RENDEZKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rendezkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad call: wrong sizes, empty subsets, negative weights, unknown names.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Kernel evaluated outside the region where it is nonnegative.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Ingested data violates an invariant (asymmetric kernel, malformed file).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Exact enumeration would exceed its work budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Recorded data contradicts a property that must hold (e.g. quasi-monotonicity).
class DataError : public Error {
 public:
  using Error::Error;
};

// Two computations that must agree by a theorem disagree.
class PropertyViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace rendezkit

#endif  // RENDEZKIT_ERROR_HPP
