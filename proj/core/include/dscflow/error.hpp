#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dscflow {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coincident vertices, zero-area faces, or an ill-conditioned node basis.
class DegenerateCellError : public Error {
 public:
  using Error::Error;
};

class InvertedCellError : public Error {
 public:
  using Error::Error;
};

/// Unmatched faces, faces claimed twice, inconsistent orientation.
class MeshTopologyError : public Error {
 public:
  using Error::Error;
};

class SingularInterfaceError : public Error {
 public:
  using Error::Error;
};

class SingularCellError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, int iterations, double residual)
      : Error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class NonfiniteStateError : public Error {
 public:
  using Error::Error;
};

class CflExceededError : public Error {
 public:
  CflExceededError(const std::string& what, double cfl) : Error(what), cfl_(cfl) {}
  double cfl() const noexcept { return cfl_; }

 private:
  double cfl_;
};

class HistoryError : public Error {
 public:
  using Error::Error;
};

class BoundaryError : public Error {
 public:
  using Error::Error;
};

/// Schema or value error in a configuration file; carries the 1-based line
/// number (0 when the problem is not tied to a line).
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dscflow
