#pragma once

#include <stdexcept>
#include <string>

namespace overfit {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction or operation received a parameter outside its valid range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Shapes do not chain (layer widths, input dimension).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A value left the domain of a function (cross-entropy outside (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Bad data values, e.g. a non-finite function sample.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Refusal: the request exceeds an explicit enumeration or evaluation budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace overfit
