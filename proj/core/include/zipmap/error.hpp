#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zipmap {

enum class ErrorKind {
  InvalidTransform,
  DegenerateInput,
  Domain,
  Precondition,
  OutOfOrder,
  NonConvergence,
  TangentArc,
  AmbiguousBranch,
  Infeasible,
  Parse,
};

const char* to_string(ErrorKind kind);

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A data point fell on an already welded seam (its image is not in the open
/// upper half-plane when its turn comes).
class OutOfOrderError : public Error {
 public:
  OutOfOrderError(std::size_t index, double imag_part);
  std::size_t index() const noexcept { return index_; }
  double imag_part() const noexcept { return imag_; }

 private:
  std::size_t index_;
  double imag_;
};

/// Newton iteration did not reach its residual target. Carries the region
/// the point was dispatched to, the last relative residual, and (when raised
/// while building a pipeline) the step index.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(std::string region, double residual, int iterations,
                      long step_index = -1);
  const std::string& region() const noexcept { return region_; }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }
  long step_index() const noexcept { return step_index_; }
  NonConvergenceError with_step(long step) const;

 private:
  std::string region_;
  double residual_;
  int iterations_;
  long step_index_;
};

}  // namespace zipmap
