#pragma once

#include <stdexcept>
#include <string>

namespace oetp {

// Base of every error raised by the toolkit. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed document text, or a required section is missing.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that breaks a data-model rule (out-of-range id,
// duplicate entry, count mismatch, unknown schema version).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A precondition of an operation was not met by its caller, e.g. passing an
// infeasible solution where a feasible one is required.
class ContractError : public Error {
 public:
  using Error::Error;
};

// The brute-force oracle refused an instance above its enumeration cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Generator configuration that cannot be realised.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace oetp
