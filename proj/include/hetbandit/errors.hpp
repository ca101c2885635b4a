#pragma once

#include <stdexcept>
#include <string>

namespace hetbandit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed problem instance (bad means, sensitivities or sizes).
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

/// Assignment that is not injective or points outside the arm range.
class InvalidAssignment : public Error {
 public:
  using Error::Error;
};

/// Argument outside a function's mathematical domain (e.g. k > n).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured size cap.
class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

/// An estimator was asked for with no observations behind it.
class NoDataError : public Error {
 public:
  using Error::Error;
};

/// Scenario name not in the built-in catalog.
class CatalogMiss : public Error {
 public:
  using Error::Error;
};

/// Bad configuration file or option value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hetbandit
