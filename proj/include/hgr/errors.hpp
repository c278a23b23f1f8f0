#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hgr {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or inconsistent input data (files, records, references into a graph).
/// The CLI maps this family to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

class UnknownEdgeError : public DataError {
 public:
  using DataError::DataError;
};

class UnknownEntityError : public DataError {
 public:
  using DataError::DataError;
};

class MalformedRecordError : public DataError {
 public:
  MalformedRecordError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class ZeroVectorError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A dependency relation that is not acyclic. `cycle()` lists the node ids of
/// one offending cycle in traversal order.
class CycleError : public Error {
 public:
  explicit CycleError(std::vector<int> cycle);
  const std::vector<int>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<int> cycle_;
};

class InvalidPlanError : public Error {
 public:
  using Error::Error;
};

class NoFeasiblePlanError : public Error {
 public:
  using Error::Error;
};

/// Oracle failures. The CLI maps this family to exit code 3.
class OracleError : public Error {
 public:
  using Error::Error;
};

class SchemaViolationError : public OracleError {
 public:
  using OracleError::OracleError;
};

/// Raised by backends for failures worth retrying (timeouts, 5xx).
class TransientOracleError : public OracleError {
 public:
  using OracleError::OracleError;
};

class BackendUnreachableError : public TransientOracleError {
 public:
  using TransientOracleError::TransientOracleError;
};

}  // namespace hgr
